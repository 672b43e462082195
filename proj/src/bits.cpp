#include "toric/bits.hpp"

#include <stdexcept>

namespace toric {

int BitVector::weight() const {
    int w = 0;
    for (auto b : bits_) w += b;
    return w;
}

std::vector<int> BitVector::support() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(static_cast<int>(i));
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size() != size()) throw std::invalid_argument("BitVector: size mismatch in xor");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
    return *this;
}

}  // namespace toric
