#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace toric {

// Dense bit vector, one byte per bit. Sizes here are a few hundred bits at
// most, so byte access beats packing.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : bits_(n, 0) {}

    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    bool test(std::size_t i) const { return bits_.at(i) != 0; }
    void set(std::size_t i, bool v = true) { bits_[i] = v ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }
    void clear() { std::fill(bits_.begin(), bits_.end(), std::uint8_t{0}); }

    int weight() const;
    bool none() const { return weight() == 0; }
    std::vector<int> support() const;

    BitVector& operator^=(const BitVector& other);
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const std::uint8_t> raw() const { return bits_; }
    std::span<std::uint8_t> raw() { return bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

// One bit per qubit.
class ErrorVector : public BitVector {
public:
    using BitVector::BitVector;
    ErrorVector() = default;
    explicit ErrorVector(BitVector bits) : BitVector(std::move(bits)) {}

    friend ErrorVector operator^(ErrorVector a, const ErrorVector& b) {
        a ^= b;
        return a;
    }
    friend bool operator==(const ErrorVector&, const ErrorVector&) = default;
};

// One bit per check. `fake` marks vectors that are not He for any e
// (odd weight on the torus); they are still legal decoder inputs.
class SyndromeVector : public BitVector {
public:
    using BitVector::BitVector;
    SyndromeVector() = default;
    SyndromeVector(std::size_t n, bool fake) : BitVector(n), fake_(fake) {}

    bool fake() const { return fake_; }
    void set_fake(bool f) { fake_ = f; }

    friend SyndromeVector operator^(SyndromeVector a, const SyndromeVector& b) {
        a ^= b;
        a.fake_ = (a.weight() % 2) != 0;
        return a;
    }
    friend bool operator==(const SyndromeVector& a, const SyndromeVector& b) {
        return static_cast<const BitVector&>(a) == static_cast<const BitVector&>(b);
    }

private:
    bool fake_ = false;
};

}  // namespace toric
