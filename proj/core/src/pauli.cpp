#include "clusterft/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace clusterft {

PauliString PauliString::from_str(const std::string& text) {
    PauliString s(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
            case 'I':
            case '_': break;
            case 'X': s.set(i, Pauli::X); break;
            case 'Y': s.set(i, Pauli::Y); break;
            case 'Z': s.set(i, Pauli::Z); break;
            default: throw std::invalid_argument("bad Pauli character in " + text);
        }
    }
    return s;
}

bool PauliString::identity() const {
    for (auto w : x_)
        if (w) return false;
    for (auto w : z_)
        if (w) return false;
    return true;
}

size_t PauliString::weight() const {
    size_t count = 0;
    for (size_t i = 0; i < x_.size(); ++i) count += std::popcount(x_[i] | z_[i]);
    return count;
}

PauliString PauliString::composed(const PauliString& other) const {
    PauliString out = *this;
    out.compose_inplace(other);
    return out;
}

void PauliString::compose_inplace(const PauliString& other) {
    if (n_ != other.n_) throw std::invalid_argument("PauliString length mismatch in compose");
    for (size_t i = 0; i < x_.size(); ++i) {
        x_[i] ^= other.x_[i];
        z_[i] ^= other.z_[i];
    }
}

bool PauliString::commutes(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("PauliString length mismatch in commutes");
    uint64_t acc = 0;
    for (size_t i = 0; i < x_.size(); ++i) acc ^= (x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i]);
    return (std::popcount(acc) & 1) == 0;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(n_);
    for (size_t q = 0; q < n_; ++q) out.push_back(pauli_char(get(q)));
    return out;
}

}  // namespace clusterft
