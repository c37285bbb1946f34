#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "clusterft/pauli.hpp"
#include "clusterft/rng.hpp"

namespace clusterft {

// Basis a fresh qubit is prepared in.
enum class PrepBasis : uint8_t { Z, X };  // |0> resp. |+>

// Index of the nonidentity pair (A,B) in the 15-entry two-qubit error
// table. A and B run over I,X,Y,Z with AB != II.
inline constexpr size_t two_qubit_pair_index(Pauli a, Pauli b) {
    return static_cast<size_t>(a) * 4 + static_cast<size_t>(b) - 1;
}

// Error model: every two-qubit gate is followed by an (A,B) error with
// probability p_ab; preparations flip with probability p_prep (|0> to |1>,
// |+> to |->); measurement outcomes flip with probability p_meas.
// Single-qubit gates are noiseless. Memory error is an optional per-step
// rate, zero by default.
struct NoiseParams {
    std::array<double, 15> p_two{};  // indexed by two_qubit_pair_index
    double p_prep = 0.0;
    double p_meas = 0.0;
    double p_gate_scale = 0.0;  // nominal physical scale p_g (informational)
    double p_memory_step = 0.0;

    // Uniform model: p_ab = p_g/15 for all pairs, p_meas = p_prep = (4/15) p_g.
    static NoiseParams standard(double p_g);

    double p_two_sum() const {
        double s = 0;
        for (double p : p_two) s += p;
        return s;
    }
    double p_ab(Pauli a, Pauli b) const { return p_two[two_qubit_pair_index(a, b)]; }
    void set_p_ab(Pauli a, Pauli b, double p) { p_two[two_qubit_pair_index(a, b)] = p; }

    bool is_zero() const;
    void validate() const;  // throws on out-of-range probabilities
};

// Cumulative table for one-uniform-draw sampling of the two-qubit channel.
// Both simulation engines share this so their random streams stay aligned
// draw for draw.
class NoiseSampler {
  public:
    explicit NoiseSampler(const NoiseParams& params);

    const NoiseParams& params() const { return params_; }

    // Pauli pair (A,B) with probability p_ab, nullopt otherwise. Exactly one
    // uniform draw per call.
    std::optional<std::pair<Pauli, Pauli>> sample_two_qubit(Rng& rng) const;

    // X after |0>, Z after |+>, with probability p_prep. One draw per call.
    std::optional<Pauli> sample_prep(PrepBasis basis, Rng& rng) const;

    // True with probability p_meas. One draw per call.
    bool sample_meas_flip(Rng& rng) const;

    // Uniform X/Y/Z with total probability p. One draw per call.
    std::optional<Pauli> sample_memory(double p, Rng& rng) const;

  private:
    NoiseParams params_;
    std::array<double, 15> cumulative_{};
    double total_ = 0.0;
};

}  // namespace clusterft
