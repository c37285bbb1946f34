#include "clusterft/code.hpp"

#include <bit>
#include <stdexcept>

namespace clusterft {

namespace {
uint8_t parity8(uint8_t v) { return static_cast<uint8_t>(std::popcount(static_cast<unsigned>(v)) & 1); }
}  // namespace

BlockCode::BlockCode(size_t n, std::vector<uint8_t> checks, uint8_t logical_mask,
                     std::vector<uint8_t> plus_sources)
    : n_(n),
      checks_(std::move(checks)),
      logical_mask_(logical_mask),
      plus_sources_(std::move(plus_sources)),
      logical_x_(n),
      logical_z_(n) {
    for (uint8_t mask : checks_) {
        PauliString sx(n_), sz(n_);
        for (size_t q = 0; q < n_; ++q) {
            if ((mask >> q) & 1) {
                sx.set(q, Pauli::X);
                sz.set(q, Pauli::Z);
            }
        }
        x_stabs_.push_back(sx);
        z_stabs_.push_back(sz);
    }
    for (size_t q = 0; q < n_; ++q) {
        if ((logical_mask_ >> q) & 1) {
            logical_x_.set(q, Pauli::X);
            logical_z_.set(q, Pauli::Z);
        }
    }
    // Map each nonzero syndrome to the single bit flip producing it. The
    // syndrome of a flip at qubit q is q+1 in binary by construction of the
    // check rows.
    syndrome_to_flip_[0] = 0;
    for (size_t q = 0; q < n_; ++q) {
        uint8_t s = 0;
        for (size_t r = 0; r < checks_.size(); ++r)
            if (parity8(checks_[r] & (1u << q))) s |= 1u << r;
        if (s) syndrome_to_flip_[s] = static_cast<uint8_t>(1u << q);
    }
    verify_invariants();
}

void BlockCode::verify_invariants() const {
    for (const auto& a : x_stabs_)
        for (const auto& b : z_stabs_)
            if (!a.commutes(b)) throw std::logic_error("stabilizers do not commute");
    for (const auto& s : x_stabs_)
        if (!s.commutes(logical_z_)) throw std::logic_error("logical_z violates X stabilizer");
    for (const auto& s : z_stabs_)
        if (!s.commutes(logical_x_)) throw std::logic_error("logical_x violates Z stabilizer");
    if (!checks_.empty() && logical_x_.commutes(logical_z_))
        throw std::logic_error("logical operators must anticommute");
    // Distance 3: every weight-1 and weight-2 Pauli either violates a
    // stabilizer or acts trivially mod the group.
    if (!checks_.empty()) {
        auto nontrivial_undetected = [&](const PauliString& e) {
            return residual_logical_class(e) != LogicalClass::Detectable &&
                   residual_logical_class(e) != LogicalClass::I;
        };
        const Pauli paulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};
        for (size_t q = 0; q < n_; ++q)
            for (Pauli p : paulis)
                if (nontrivial_undetected(PauliString::single(n_, q, p)))
                    throw std::logic_error("weight-1 logical escapes detection");
        for (size_t q = 0; q < n_; ++q)
            for (size_t r = q + 1; r < n_; ++r)
                for (Pauli pq : paulis)
                    for (Pauli pr : paulis) {
                        auto e = PauliString::single(n_, q, pq);
                        e.compose_inplace(PauliString::single(n_, r, pr));
                        if (nontrivial_undetected(e))
                            throw std::logic_error("weight-2 logical escapes detection");
                    }
        // Hamming correction recovers every single flip.
        for (size_t q = 0; q < n_; ++q) {
            auto d = decode(static_cast<uint8_t>(1u << q));
            if (d.corrected_bits != 0 || d.logical_bit != 0)
                throw std::logic_error("single flip not corrected");
        }
    }
}

DecodeResult BlockCode::decode(uint8_t raw_bits) const {
    DecodeResult out;
    uint8_t s = 0;
    for (size_t r = 0; r < checks_.size(); ++r)
        if (parity8(raw_bits & checks_[r])) s |= 1u << r;
    out.syndrome = s;
    out.corrected_bits = raw_bits ^ syndrome_to_flip_[s];
    out.logical_bit = parity8(out.corrected_bits & logical_mask_);
    return out;
}

uint8_t BlockCode::logical_parity(uint8_t bits) const { return parity8(bits & logical_mask_); }

LogicalClass BlockCode::residual_logical_class(const PauliString& e) const {
    if (e.n() != n_) throw std::invalid_argument("residual_logical_class: wrong block size");
    uint8_t x = 0, z = 0;
    for (size_t q = 0; q < n_; ++q) {
        if (e.x_bit(q)) x |= 1u << q;
        if (e.z_bit(q)) z |= 1u << q;
    }
    return residual_logical_class_bits(x, z);
}

LogicalClass BlockCode::residual_logical_class_bits(uint8_t x_bits, uint8_t z_bits) const {
    for (uint8_t mask : checks_) {
        if (parity8(z_bits & mask)) return LogicalClass::Detectable;  // violates X stabilizer
        if (parity8(x_bits & mask)) return LogicalClass::Detectable;  // violates Z stabilizer
    }
    const bool logical_x_part = parity8(x_bits & logical_mask_);  // anticommutes with logical Z
    const bool logical_z_part = parity8(z_bits & logical_mask_);  // anticommutes with logical X
    if (logical_x_part && logical_z_part) return LogicalClass::Y;
    if (logical_x_part) return LogicalClass::X;
    if (logical_z_part) return LogicalClass::Z;
    return LogicalClass::I;
}

PauliString BlockCode::min_weight_rep(const PauliString& e) const {
    if (e.n() != n_) throw std::invalid_argument("min_weight_rep: wrong block size");
    PauliString best = e;
    size_t best_w = e.weight();
    const size_t combos = size_t{1} << (2 * checks_.size());
    for (size_t c = 1; c < combos; ++c) {
        PauliString cand = e;
        for (size_t r = 0; r < checks_.size(); ++r) {
            if ((c >> r) & 1) cand.compose_inplace(x_stabs_[r]);
            if ((c >> (checks_.size() + r)) & 1) cand.compose_inplace(z_stabs_[r]);
        }
        const size_t w = cand.weight();
        if (w < best_w) {
            best_w = w;
            best = cand;
        }
    }
    return best;
}

const BlockCode& BlockCode::steane() {
    // Classical [7,4,3] Hamming checks shared by the X and Z stabilizer
    // sets; qubit q sits in check r iff bit r of q+1 is set. The logical
    // representative X/Z on {0,1,2} is the all-ones vector times check 2.
    static const BlockCode code(7, {0x55, 0x66, 0x78}, 0x07, {0, 1, 3});
    return code;
}

const BlockCode& BlockCode::unit() {
    static const BlockCode code(1, {}, 0x01, {});
    return code;
}

}  // namespace clusterft
