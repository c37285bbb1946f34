#include "clusterft/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterft {

HomogeneousError homogeneous_leading(const NoiseParams& p) {
    HomogeneousError eps;
    eps.eps_x = p.p_ab(Pauli::X, Pauli::I);
    eps.eps_y = p.p_ab(Pauli::Y, Pauli::I);
    eps.eps_z = p.p_ab(Pauli::Z, Pauli::I) + p.p_ab(Pauli::I, Pauli::Z);
    return eps;
}

namespace {
double row_sum(const NoiseParams& p, Pauli a) {
    double s = 0;
    for (Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) s += p.p_ab(a, b);
    return s;
}
}  // namespace

HomogeneousError apply_bare_cz(const HomogeneousError& eps, const NoiseParams& p) {
    HomogeneousError out;
    out.eps_x = eps.eps_x + row_sum(p, Pauli::X);
    out.eps_y = eps.eps_y + row_sum(p, Pauli::Y);
    out.eps_z = eps.eps_z + eps.eps_x + eps.eps_y + row_sum(p, Pauli::Z);
    return out;
}

double pq_level0(const NoiseParams& params) {
    const HomogeneousError primed = apply_bare_cz(homogeneous_leading(params), params);
    return primed.eps_z + primed.eps_y + params.p_meas;
}

double pq_recursion(double pq0, int level) {
    if (pq0 < 0) throw std::invalid_argument("pq_recursion: negative probability");
    if (pq0 == 0) return 0.0;
    if (level < 0) throw std::invalid_argument("pq_recursion: negative level");
    const double log_term = std::pow(2.0, level) * std::log(kBlockPairCount * pq0) - std::log(kBlockPairCount);
    if (log_term < -700.0) return 0.0;
    return std::exp(log_term);
}

double threshold_from_ratio(double d_ratio) {
    if (d_ratio <= 0) throw std::invalid_argument("threshold: ratio must be positive");
    return 1.0 / (kBlockPairCount * d_ratio);
}

double threshold_from_params(const NoiseParams& params) {
    if (params.p_gate_scale <= 0) throw std::invalid_argument("threshold: params carry no gate scale");
    return threshold_from_ratio(pq_level0(params) / params.p_gate_scale);
}

double threshold_with_memory(double computation_size, double tau_m, double steps_per_level) {
    if (computation_size <= 1.0) throw std::invalid_argument("threshold_with_memory: N must exceed 1");
    if (tau_m < 0 || steps_per_level < 0) throw std::invalid_argument("threshold_with_memory: negative input");
    const double lbar = std::log2(std::log10(computation_size));
    return 1.0 / (kBlockPairCount * (1.0 + lbar * steps_per_level * tau_m));
}

double physical_oneway_pq0(const NoiseParams& p) {
    HomogeneousError eps;
    eps.eps_x = p.p_ab(Pauli::X, Pauli::I);
    eps.eps_y = p.p_ab(Pauli::Y, Pauli::I);
    eps.eps_z = p.p_prep + p.p_ab(Pauli::X, Pauli::Z) + p.p_ab(Pauli::I, Pauli::Z) +
                p.p_ab(Pauli::Z, Pauli::Y) + p.p_ab(Pauli::Y, Pauli::Y) + 2.0 * p.p_ab(Pauli::Z, Pauli::I);
    const HomogeneousError primed = apply_bare_cz(eps, p);
    return primed.eps_z + primed.eps_y + p.p_meas;
}

HighestLevel highest_level(double computation_size, double pq0) {
    if (computation_size <= 1.0) throw std::invalid_argument("highest_level: N must exceed 1");
    HighestLevel out;
    out.estimate = std::max(1, static_cast<int>(std::ceil(std::log2(std::log10(computation_size)))));
    const double goal = 0.1 / computation_size;
    for (int l = 1; l <= 64; ++l) {
        if (pq_recursion(pq0, l) <= goal) {
            out.exact = l;
            out.reachable = true;
            break;
        }
        if (pq0 >= 1.0 / kBlockPairCount) break;  // recursion does not contract
    }
    return out;
}

double AcceptanceInputs::at(const std::vector<double>& v, int level) const {
    if (level < 1) throw std::invalid_argument("acceptance level must be >= 1");
    if (static_cast<size_t>(level) > v.size()) return 1.0;
    return v[level - 1];
}

std::vector<ResourceRow> resource_table(int max_level, const AcceptanceInputs& acc) {
    if (max_level < 1) throw std::invalid_argument("resource_table: level must be >= 1");
    auto divisor = [&](const std::vector<double>& v, int level, const char* name) {
        const double p = acc.at(v, level);
        if (p <= 0.0)
            throw std::invalid_argument(std::string("acceptance probability for ") + name + " at level " +
                                        std::to_string(level) + " is zero; resources diverge");
        return p;
    };

    std::vector<ResourceRow> table;
    ResourceRow row;
    row.level = 1;
    row.r_bare = 7.0;
    row.r_zero = 69.0 / divisor(acc.p_zero, 1, "|0>");
    row.r_plus = row.r_zero;
    row.r_single = 3.0 * row.r_bare + 2.0 * row.r_zero;
    row.r_double = 9.0 * row.r_bare + 8.0 * row.r_zero;
    row.r_hexa = 0.0;  // hexa clusters first appear at level 2
    table.push_back(row);

    for (int level = 2; level <= max_level; ++level) {
        const ResourceRow& prev = table.back();
        ResourceRow next;
        next.level = level;
        next.r_bare = prev.r_bare * 7.0;
        next.r_hexa = (2 * prev.r_single + 3 * prev.r_double + 6 * prev.r_zero + 10 * prev.r_bare) /
                      divisor(acc.p_hexa, level, "hexa");
        next.r_zero = (6 * prev.r_single + 7 * prev.r_double + 11 * prev.r_zero + 26 * prev.r_bare) /
                      divisor(acc.p_zero, level, "|0>");
        next.r_plus = (5 * prev.r_single + 7 * prev.r_double + 10 * prev.r_zero + 24 * prev.r_bare) /
                      divisor(acc.p_plus, level, "|+>");
        next.r_single = 7.0 * next.r_hexa + 2.0 * (next.r_plus + next.r_bare);
        next.r_double = 21.0 * next.r_hexa + 8.0 * (next.r_plus + next.r_bare) + 2.0 * next.r_bare;
        table.push_back(next);
    }
    return table;
}

}  // namespace clusterft
