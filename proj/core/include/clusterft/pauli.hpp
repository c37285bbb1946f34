#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace clusterft {

// Single-qubit Pauli label. Encoded as (x,z) bit pair: I=00, X=10, Y=11, Z=01.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline bool pauli_has_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
inline bool pauli_has_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }
inline Pauli pauli_from_xz(bool x, bool z) {
    if (x && z) return Pauli::Y;
    if (x) return Pauli::X;
    if (z) return Pauli::Z;
    return Pauli::I;
}
inline char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

// Phaseless n-qubit Pauli operator as a pair of binary vectors. Composition
// is bitwise XOR of the parts; global phases are deliberately untracked
// (every observable in the architecture is a syndrome bit or logical
// parity, which are phase-insensitive).
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(size_t n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

    static PauliString single(size_t n, size_t qubit, Pauli p) {
        PauliString s(n);
        s.set(qubit, p);
        return s;
    }

    // Parse e.g. "XIZZY". Length gives the qubit count.
    static PauliString from_str(const std::string& text);

    size_t n() const { return n_; }

    bool x_bit(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
    Pauli get(size_t q) const { return pauli_from_xz(x_bit(q), z_bit(q)); }

    void set_x(size_t q, bool v) { assign_bit(x_, q, v); }
    void set_z(size_t q, bool v) { assign_bit(z_, q, v); }
    void set(size_t q, Pauli p) {
        set_x(q, pauli_has_x(p));
        set_z(q, pauli_has_z(p));
    }
    void toggle_x(size_t q) { x_[q >> 6] ^= 1ULL << (q & 63); }
    void toggle_z(size_t q) { z_[q >> 6] ^= 1ULL << (q & 63); }

    bool identity() const;
    size_t weight() const;

    // XOR of parts; requires equal lengths.
    PauliString composed(const PauliString& other) const;
    void compose_inplace(const PauliString& other);

    // True iff the symplectic inner product x_a.z_b + z_a.x_b vanishes mod 2.
    bool commutes(const PauliString& other) const;

    bool operator==(const PauliString& other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }

    std::string str() const;

    const std::vector<uint64_t>& x_words() const { return x_; }
    const std::vector<uint64_t>& z_words() const { return z_; }

  private:
    static void assign_bit(std::vector<uint64_t>& w, size_t q, bool v) {
        if (v)
            w[q >> 6] |= 1ULL << (q & 63);
        else
            w[q >> 6] &= ~(1ULL << (q & 63));
    }

    size_t n_ = 0;
    std::vector<uint64_t> x_, z_;
};

}  // namespace clusterft
