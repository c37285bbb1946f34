#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/noise.hpp"
#include "clusterft/pauli.hpp"
#include "clusterft/rng.hpp"

namespace clusterft {

// Deviation state of one qubit relative to the ideal reference branch.
//   g: total observable deviation (physical error x true byproduct x record)
//   w: frame discrepancy (true byproduct x record) -- what the classical
//      controller got wrong
//   r: recorded byproduct deviation
// The physical-error part is g XOR w.
struct QubitDeviation {
    uint8_t gx = 0, gz = 0, wx = 0, wz = 0, rx = 0, rz = 0;
    bool identity() const { return !(gx | gz | wx | wz | rx | rz); }
};

struct Injection {
    uint32_t qubit;
    QubitDeviation dev;
    uint32_t at_op = 0;  // applied just before this op executes
};

// Forces a single Pauli fault at one op (for exhaustive fault injection).
// For two-qubit gates (a,b) act on the two operands after the ideal gate;
// for preparations/measurements `flip` injects the basis flip / outcome
// flip.
struct FaultSpec {
    uint32_t op_index = 0;
    Pauli a = Pauli::I;
    Pauli b = Pauli::I;
    bool flip = false;
};

struct RunOptions {
    const std::vector<Injection>* injections = nullptr;
    const FaultSpec* fault = nullptr;
};

// Result of one error-frame trial. Deviation bit-planes stay owned by the
// engine and are valid until the next run.
class FrameEngine;
struct TrialRecord {
    bool accepted = false;
    std::vector<uint8_t> check_flips;  // indexed by circuit check id
    std::vector<uint8_t> out_bits;     // indexed by circuit out id

    const FrameEngine* engine = nullptr;

    QubitDeviation deviation(uint32_t q) const;
    // Deviation restricted to a block, as PauliStrings over the block qubits.
    PauliString block_total(const std::vector<uint32_t>& qubits) const;     // g
    PauliString block_frame(const std::vector<uint32_t>& qubits) const;     // w
    PauliString block_physical(const std::vector<uint32_t>& qubits) const;  // g xor w
};

// Pauli-error-tracking trial runner. Ideal measurement outcomes are the
// reference (all checks read 0); only error-induced flips are tracked.
// Trials are pure functions of (circuit, params, seed).
class FrameEngine {
  public:
    const TrialRecord& run(const Circuit& circuit, const NoiseSampler& sampler, Rng& rng,
                           const RunOptions& options = {});

    // The record of the most recent run.
    const TrialRecord& run_record() const { return record_; }

    // Bit accessors over the last run (survivors keep their bits; measured
    // qubits are cleared).
    bool gx(uint32_t q) const { return bit(gx_, q); }
    bool gz(uint32_t q) const { return bit(gz_, q); }
    bool wx(uint32_t q) const { return bit(wx_, q); }
    bool wz(uint32_t q) const { return bit(wz_, q); }
    bool rx(uint32_t q) const { return bit(rx_, q); }
    bool rz(uint32_t q) const { return bit(rz_, q); }
    // Raw flip bits of measured qubits (observed deviation incl. readout flip).
    bool observed_flip(uint32_t q) const { return s_obs_[q] != 0; }

  private:
    friend struct TrialRecord;
    static bool bit(const std::vector<uint64_t>& w, uint32_t q) { return (w[q >> 6] >> (q & 63)) & 1; }
    static void toggle(std::vector<uint64_t>& w, uint32_t q) { w[q >> 6] ^= 1ULL << (q & 63); }
    void compose_g(uint32_t q, Pauli p) {
        if (pauli_has_x(p)) toggle(gx_, q);
        if (pauli_has_z(p)) toggle(gz_, q);
    }

    std::vector<uint64_t> gx_, gz_, wx_, wz_, rx_, rz_;
    std::vector<uint8_t> s_true_, s_obs_;
    std::vector<uint32_t> birth_;
    TrialRecord record_;
};

// Enumerates every single-fault location of a circuit: all 15 Pauli pairs
// per two-qubit gate, the basis flip per preparation, the outcome flip per
// measurement.
std::vector<FaultSpec> enumerate_faults(const Circuit& circuit, uint32_t op_begin = 0,
                                        uint32_t op_end = UINT32_MAX);

}  // namespace clusterft
