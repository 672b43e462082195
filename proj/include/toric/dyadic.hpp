#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

// A multiplier k / 2^shift, k > 0. Normalization factors of the form k/16
// (and every other binary fraction) are represented exactly.
struct DyadicScale {
    std::int64_t numerator = 1;
    int shift = 0;

    // Throws RoundingError unless `x` equals k / 2^shift with shift <= 30.
    static DyadicScale from_double(double x);
    double to_double() const;
};

// Exact binary fixed-point number: value = raw / 2^kFracBits.
//
// Sums, differences, negation, comparison and scaling by a DyadicScale never
// round; scaling throws RoundingError if the result would need more than
// kFracBits fractional bits (about 110 successive multiplications by k/16).
class Dyadic {
public:
    using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
        512, 512, boost::multiprecision::signed_magnitude, boost::multiprecision::unchecked, void>>;
    static constexpr int kFracBits = 440;

    Dyadic() = default;
    static Dyadic from_int(std::int64_t v);
    // Exact conversion; throws RoundingError if `x` has more fractional bits
    // than kFracBits or is not finite.
    static Dyadic from_double(double x);
    static Dyadic from_raw(Int raw) {
        Dyadic d;
        d.raw_ = std::move(raw);
        return d;
    }

    const Int& raw() const { return raw_; }
    double to_double() const;
    std::string to_string() const;

    bool negative() const { return raw_.sign() < 0; }
    bool is_zero() const { return raw_.is_zero(); }

    Dyadic scaled(const DyadicScale& s) const;

    Dyadic& operator+=(const Dyadic& o) {
        raw_ += o.raw_;
        return *this;
    }
    Dyadic& operator-=(const Dyadic& o) {
        raw_ -= o.raw_;
        return *this;
    }
    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
    friend Dyadic operator-(const Dyadic& a) { return from_raw(-a.raw_); }
    friend Dyadic abs(const Dyadic& a) { return from_raw(boost::multiprecision::abs(a.raw_)); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.raw_ == b.raw_; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.raw_ < b.raw_; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

private:
    Int raw_{0};
};

}  // namespace toric
