#include "toric/dyadic.hpp"

#include <cmath>

#include "toric/errors.hpp"

namespace toric {

DyadicScale DyadicScale::from_double(double x) {
    if (!std::isfinite(x) || x <= 0) throw RoundingError("DyadicScale: factor must be positive");
    for (int shift = 0; shift <= 30; ++shift) {
        const double scaled = std::ldexp(x, shift);
        if (scaled == std::floor(scaled) && scaled < 9.0e15)
            return {static_cast<std::int64_t>(scaled), shift};
    }
    throw RoundingError("DyadicScale: " + std::to_string(x) + " is not k/2^m with m <= 30");
}

double DyadicScale::to_double() const { return std::ldexp(static_cast<double>(numerator), -shift); }

Dyadic Dyadic::from_int(std::int64_t v) {
    Int raw = v;
    raw <<= kFracBits;
    return from_raw(std::move(raw));
}

Dyadic Dyadic::from_double(double x) {
    if (!std::isfinite(x)) throw RoundingError("Dyadic: non-finite value");
    if (x == 0) return {};
    int exp = 0;
    const double m = std::frexp(std::fabs(x), &exp);
    auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
    int shift = exp - 53 + kFracBits;
    while (shift < 0) {
        if (mantissa & 1) throw RoundingError("Dyadic: value needs more than kFracBits fraction bits");
        mantissa >>= 1;
        ++shift;
    }
    Int raw = mantissa;
    raw <<= shift;
    if (x < 0) raw = -raw;
    return from_raw(std::move(raw));
}

double Dyadic::to_double() const {
    return std::ldexp(raw_.convert_to<double>(), -kFracBits);
}

std::string Dyadic::to_string() const {
    Int mag = boost::multiprecision::abs(raw_);
    Int whole = mag >> kFracBits;
    Int mask = (Int(1) << kFracBits) - 1;
    Int frac = mag & mask;
    std::string out = (negative() ? "-" : "") + whole.str();
    if (!frac.is_zero()) {
        out += '.';
        while (!frac.is_zero()) {
            frac *= 10;
            out += static_cast<char>('0' + (frac >> kFracBits).convert_to<int>());
            frac &= mask;
        }
    }
    return out;
}

Dyadic Dyadic::scaled(const DyadicScale& s) const {
    Int mag = boost::multiprecision::abs(raw_);
    mag *= s.numerator;
    if (s.shift > 0) {
        const Int low = mag & ((Int(1) << s.shift) - 1);
        if (!low.is_zero()) throw RoundingError("Dyadic::scaled: fraction bits exhausted");
        mag >>= s.shift;
    }
    return from_raw(negative() ? Int(-mag) : mag);
}

}  // namespace toric
