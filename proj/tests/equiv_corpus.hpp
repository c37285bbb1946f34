// Shared corpus of circuits with deterministic parity checks, used to
// cross-validate the error-frame engine against the stabilizer oracle.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/frame_engine.hpp"
#include "clusterft/gadgets.hpp"
#include "clusterft/oracle.hpp"
#include "clusterft/rng.hpp"
#include "clusterft/stats.hpp"

namespace corpus {

using namespace clusterft;

// Random graph state with indirect stabilizer checks and teleport hops.
// Every check is a deterministic parity; hops exercise the frame path.
inline Circuit random_graph_circuit(uint64_t seed, int n_vertices, int n_checks, int n_hops) {
    Rng rng(seed);
    Circuit c;
    std::vector<uint32_t> vertex = c.add_qubits(n_vertices);
    std::vector<std::vector<int>> adj(n_vertices);
    for (auto q : vertex) c.prep_plus(q);
    for (int i = 0; i < n_vertices; ++i)
        for (int j = i + 1; j < n_vertices; ++j)
            if (rng.bernoulli(0.4)) {
                c.cz(vertex[i], vertex[j]);
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    int check_id = 0;
    auto emit_check = [&](int v) {
        // Indirect measurement of the graph stabilizer X_v prod Z_N(v).
        const uint32_t anc = c.add_qubit();
        c.prep_plus(anc);
        c.cnot(anc, vertex[v]);
        for (int w : adj[v]) c.cz(anc, vertex[w]);
        c.measure(anc, MeasBasis::X, {"g" + std::to_string(check_id++)});
    };
    for (int k = 0; k < n_checks; ++k) emit_check(static_cast<int>(rng.next_below(n_vertices)));
    for (int h = 0; h < n_hops; ++h) {
        const int v = static_cast<int>(rng.next_below(n_vertices));
        const uint32_t fresh = c.add_qubit();
        c.prep_plus(fresh);
        c.cz(vertex[v], fresh);
        c.measure(vertex[v], MeasBasis::X);
        c.frame(vertex[v], fresh);
        c.h(fresh);  // basis normalization keeps the graph stabilizers intact
        vertex[v] = fresh;
        // a post-hop check sees the frame bookkeeping
        emit_check(v);
    }
    c.outputs.push_back({"data", vertex});
    c.validate();
    return c;
}

struct EquivalenceReport {
    uint64_t runs = 0;
    uint64_t decision_mismatches = 0;
    uint64_t flip_mismatches = 0;
    double acceptance_frame = 0.0;
    double acceptance_oracle = 0.0;
    double acceptance_z = 0.0;       // |rate difference| in sigmas (independent streams)
    double chi2_pvalue = 1.0;        // joint check-flip distribution
    double violation_pvalue = 1.0;   // target-violation distribution (if generators given)
};

// Shared-stream comparison: both engines consume one error stream, so the
// acceptance decision and every check flip must agree run by run; plus an
// independent-stream distributional comparison.
inline EquivalenceReport compare_engines(const Circuit& c, const NoiseParams& params, uint64_t seeds,
                                         uint64_t seed_base,
                                         const std::vector<PauliString>* generators = nullptr) {
    const NoiseSampler sampler(params);
    FrameEngine frame;
    StabilizerOracle oracle;
    const OracleReference ref = oracle.compute_reference(c);

    EquivalenceReport rep;
    std::map<std::vector<uint8_t>, std::pair<uint64_t, uint64_t>> flip_hist;
    std::map<std::vector<uint8_t>, std::pair<uint64_t, uint64_t>> viol_hist;
    uint64_t acc_f = 0, acc_o = 0;

    for (uint64_t s = 0; s < seeds; ++s) {
        // shared error stream
        Rng err_f = Rng::child(seed_base, 0xE0, s);
        Rng err_o = Rng::child(seed_base, 0xE0, s);
        Rng branch = Rng::child(seed_base, 0xB0, s);
        const TrialRecord& rf = frame.run(c, sampler, err_f);
        const OracleRecord ro = oracle.run(c, sampler, err_o, branch, ref);
        ++rep.runs;
        if (rf.accepted != ro.accepted) ++rep.decision_mismatches;
        if (rf.check_flips != ro.check_flips) ++rep.flip_mismatches;

        // independent-stream histograms
        Rng err_f2 = Rng::child(seed_base, 0xE1, s);
        Rng err_o2 = Rng::child(seed_base, 0xE2, s);
        Rng branch2 = Rng::child(seed_base, 0xB2, s);
        const TrialRecord& rf2 = frame.run(c, sampler, err_f2);
        acc_f += rf2.accepted;
        ++flip_hist[rf2.check_flips].first;
        if (generators) {
            // violation bits from the frame engine: anticommutation of the
            // total deviation with each generator
            std::vector<uint8_t> v(generators->size());
            for (size_t g = 0; g < generators->size(); ++g) {
                const PauliString& gen = (*generators)[g];
                uint64_t acc = 0;
                for (uint32_t q = 0; q < c.n_qubits; ++q) {
                    const bool gx = frame.gx(q), gz = frame.gz(q);
                    if (gx && gen.z_bit(q)) acc ^= 1;
                    if (gz && gen.x_bit(q)) acc ^= 1;
                }
                v[g] = static_cast<uint8_t>(acc & 1);
            }
            if (rf2.accepted) ++viol_hist[v].first;
        }
        const OracleRecord ro2 = oracle.run(c, sampler, err_o2, branch2, ref);
        acc_o += ro2.accepted;
        ++flip_hist[ro2.check_flips].second;
        if (generators && ro2.accepted) ++viol_hist[oracle.violations(*generators)].second;
    }

    rep.acceptance_frame = static_cast<double>(acc_f) / seeds;
    rep.acceptance_oracle = static_cast<double>(acc_o) / seeds;
    const double p = 0.5 * (rep.acceptance_frame + rep.acceptance_oracle);
    const double var = p * (1 - p) * 2.0 / seeds;
    rep.acceptance_z = var > 0 ? std::abs(rep.acceptance_frame - rep.acceptance_oracle) / std::sqrt(var)
                               : 0.0;
    std::vector<uint64_t> ha, hb;
    for (const auto& [k, v] : flip_hist) {
        ha.push_back(v.first);
        hb.push_back(v.second);
    }
    rep.chi2_pvalue = chi_squared_two_sample_pvalue(ha, hb);
    if (generators) {
        std::vector<uint64_t> va, vb;
        for (const auto& [k, v] : viol_hist) {
            va.push_back(v.first);
            vb.push_back(v.second);
        }
        rep.violation_pvalue = chi_squared_two_sample_pvalue(va, vb);
    }
    return rep;
}

}  // namespace corpus
