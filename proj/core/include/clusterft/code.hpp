#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "clusterft/pauli.hpp"

namespace clusterft {

// Outcome of classically decoding a transversal measurement: Hamming
// correction of the 7 raw bits, then the logical parity of the corrected
// word.
struct DecodeResult {
    uint8_t corrected_bits = 0;  // bit q = corrected outcome of qubit q
    uint8_t syndrome = 0;        // 3-bit syndrome, 0 = clean
    uint8_t logical_bit = 0;
};

// Classification of a residual Pauli on one code block relative to the
// code space.
enum class LogicalClass : uint8_t { I = 0, X = 1, Y = 2, Z = 3, Detectable = 4 };

inline char logical_class_char(LogicalClass c) {
    switch (c) {
        case LogicalClass::I: return 'I';
        case LogicalClass::X: return 'X';
        case LogicalClass::Y: return 'Y';
        case LogicalClass::Z: return 'Z';
        case LogicalClass::Detectable: return 'D';
    }
    return '?';
}

// A self-dual CSS block code presented by its classical parity checks.
// Two instances exist: the Steane [[7,1,3]] code used throughout, and the
// trivial one-qubit code used to exercise construction topologies at a
// size the exact oracle can hold.
class BlockCode {
  public:
    static const BlockCode& steane();
    static const BlockCode& unit();

    size_t n() const { return n_; }
    size_t num_checks() const { return checks_.size(); }

    // Support of classical check row r as a bitmask over qubits.
    uint8_t check_mask(size_t r) const { return checks_[r]; }
    // Support of the chosen low-weight logical representative.
    uint8_t logical_mask() const { return logical_mask_; }
    const std::vector<uint8_t>& encoder_plus_sources() const { return plus_sources_; }

    // X- and Z-type stabilizer generators and weight-minimal logical
    // operators over the block qubits.
    const std::vector<PauliString>& x_stabilizers() const { return x_stabs_; }
    const std::vector<PauliString>& z_stabilizers() const { return z_stabs_; }
    const PauliString& logical_x() const { return logical_x_; }
    const PauliString& logical_z() const { return logical_z_; }

    // Syndrome via the classical checks; flips the uniquely indicated bit
    // when the syndrome is nonzero; logical parity against the logical
    // support. Total function over all 2^n inputs.
    DecodeResult decode(uint8_t raw_bits) const;

    // Parity of `bits` over the logical support (no correction).
    uint8_t logical_parity(uint8_t bits) const;

    // Classify a residual Pauli on one block: Detectable if it violates
    // any stabilizer, otherwise its logical action mod the stabilizer
    // group.
    LogicalClass residual_logical_class(const PauliString& e) const;

    // Classify from packed x/z bitmasks over the block qubits.
    LogicalClass residual_logical_class_bits(uint8_t x_bits, uint8_t z_bits) const;

    // Minimal-weight representative of e modulo the stabilizer group
    // (deterministic tie break). Fixes the bookkeeping gauge before
    // per-qubit error counting.
    PauliString min_weight_rep(const PauliString& e) const;

  private:
    BlockCode(size_t n, std::vector<uint8_t> checks, uint8_t logical_mask,
              std::vector<uint8_t> plus_sources);
    void verify_invariants() const;

    size_t n_;
    std::vector<uint8_t> checks_;
    uint8_t logical_mask_;
    std::vector<uint8_t> plus_sources_;
    std::vector<PauliString> x_stabs_, z_stabs_;
    PauliString logical_x_, logical_z_;
    std::array<uint8_t, 8> syndrome_to_flip_{};
};

}  // namespace clusterft
