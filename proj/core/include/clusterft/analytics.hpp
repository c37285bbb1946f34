#pragma once

#include <cstdint>
#include <vector>

#include "clusterft/noise.hpp"

namespace clusterft {

// Number of unordered qubit pairs in one code block; the leading-order
// coefficient of every concatenation step on a distance-3 code.
inline constexpr double kBlockPairCount = 21.0;  // C(7,2)

// Leading-order per-qubit residual rates left on verified cluster outputs
// by the final double-verification gate layer.
struct HomogeneousError {
    double eps_x = 0.0;
    double eps_y = 0.0;
    double eps_z = 0.0;
};

// eps_X = p_XI, eps_Y = p_YI, eps_Z = p_ZI + p_IZ (the two gates touching
// an output in the final layer).
HomogeneousError homogeneous_leading(const NoiseParams& params);

// Extra transversal errors from one bare-CZ connection:
//   eps'_X = eps_X + sum_B p_XB
//   eps'_Y = eps_Y + sum_B p_YB
//   eps'_Z = eps_Z + eps_X + eps_Y + sum_B p_ZB
HomogeneousError apply_bare_cz(const HomogeneousError& eps, const NoiseParams& params);

// Error probability of the X measurement of a bare-connected level-0
// qubit: eps'_Z + eps'_Y + p_M with the leading homogeneous errors.
// Equals (17/15) p_g for the standard model.
double pq_level0(const NoiseParams& params);

// Measurement error after l concatenation levels: (21 pq0)^(2^l) / 21.
double pq_recursion(double pq0, int level);

// Threshold (21 D)^-1 for pq0 = D p_g.
double threshold_from_ratio(double d_ratio);
double threshold_from_params(const NoiseParams& params);

// Memory-error variant: [21 (1 + log2(log10 N) n tau_m)]^-1.
double threshold_with_memory(double computation_size, double tau_m, double steps_per_level);

// First-order pq0 when the physical level runs one-way (extra CZ gates
// replace the CNOTs): eps_Z = p_p + p_XZ + p_IZ + p_ZY + p_YY + 2 p_ZI.
// Yields D = 5/3 for the standard model.
double physical_oneway_pq0(const NoiseParams& params);

// Smallest level with pq^(l) <= 0.1/N (exact iteration of the recursion)
// and the coarse estimate ceil(log2(log10 N)). Both clamped to >= 1.
struct HighestLevel {
    int exact = 0;       // 0 when the recursion never reaches the goal
    int estimate = 1;
    bool reachable = false;
};
HighestLevel highest_level(double computation_size, double pq0);

// Per-level component resources. R_b^(l) = 7^l.
struct ResourceRow {
    int level = 0;
    double r_single = 0.0;
    double r_double = 0.0;
    double r_hexa = 0.0;
    double r_zero = 0.0;
    double r_plus = 0.0;
    double r_bare = 0.0;
};

// Acceptance probabilities used as divisors, per level (index 0 = level 1).
struct AcceptanceInputs {
    std::vector<double> p_hexa;
    std::vector<double> p_zero;
    std::vector<double> p_plus;
    double at(const std::vector<double>& v, int level) const;  // 1-based; defaults to 1
};

// Evaluates the resource recursion up to max_level. Throws naming the
// level if any required acceptance probability is zero.
std::vector<ResourceRow> resource_table(int max_level, const AcceptanceInputs& acceptance);

}  // namespace clusterft
