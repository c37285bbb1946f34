#include "clusterft/noise.hpp"

#include <stdexcept>

namespace clusterft {

NoiseParams NoiseParams::standard(double p_g) {
    if (p_g < 0.0 || p_g > 1.0) throw std::invalid_argument("standard: p_g must lie in [0,1]");
    NoiseParams np;
    np.p_gate_scale = p_g;
    for (auto& p : np.p_two) p = p_g / 15.0;
    np.p_prep = (4.0 / 15.0) * p_g;
    np.p_meas = (4.0 / 15.0) * p_g;
    return np;
}

bool NoiseParams::is_zero() const {
    if (p_prep != 0.0 || p_meas != 0.0 || p_memory_step != 0.0) return false;
    for (double p : p_two)
        if (p != 0.0) return false;
    return true;
}

void NoiseParams::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    for (double p : p_two)
        if (!in_unit(p)) throw std::invalid_argument("two-qubit error probability out of [0,1]");
    if (p_two_sum() > 1.0 + 1e-12) throw std::invalid_argument("sum of two-qubit error probabilities exceeds 1");
    if (!in_unit(p_prep) || !in_unit(p_meas) || !in_unit(p_memory_step))
        throw std::invalid_argument("error probability out of [0,1]");
}

NoiseSampler::NoiseSampler(const NoiseParams& params) : params_(params) {
    params_.validate();
    double acc = 0.0;
    for (size_t i = 0; i < 15; ++i) {
        acc += params_.p_two[i];
        cumulative_[i] = acc;
    }
    total_ = acc;
}

std::optional<std::pair<Pauli, Pauli>> NoiseSampler::sample_two_qubit(Rng& rng) const {
    const double u = rng.next_double();
    if (u >= total_) return std::nullopt;
    size_t lo = 0;
    while (u >= cumulative_[lo]) ++lo;  // 15 entries; linear scan is fine
    const size_t pair = lo + 1;         // shift back from pair index
    return std::make_pair(static_cast<Pauli>(pair / 4), static_cast<Pauli>(pair % 4));
}

std::optional<Pauli> NoiseSampler::sample_prep(PrepBasis basis, Rng& rng) const {
    const double u = rng.next_double();
    if (u >= params_.p_prep) return std::nullopt;
    return basis == PrepBasis::Z ? Pauli::X : Pauli::Z;
}

bool NoiseSampler::sample_meas_flip(Rng& rng) const { return rng.next_double() < params_.p_meas; }

std::optional<Pauli> NoiseSampler::sample_memory(double p, Rng& rng) const {
    const double u = rng.next_double();
    if (u >= p) return std::nullopt;
    const double third = p / 3.0;
    if (u < third) return Pauli::X;
    if (u < 2 * third) return Pauli::Y;
    return Pauli::Z;
}

}  // namespace clusterft
