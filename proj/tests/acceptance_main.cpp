// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failed criteria. Trial budgets are sized for desk-scale runtimes and
// documented inline; every tolerance is pinned here.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "clusterft/analytics.hpp"
#include "clusterft/concat.hpp"
#include "clusterft/diagrams.hpp"
#include "equiv_corpus.hpp"
#include "fault_audit.hpp"

using namespace clusterft;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[criterion %d] %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void note(int criterion, const std::string& detail) {
    std::printf("[criterion %d] REPORT %s\n", criterion, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

ConcatConfig cfg_at(double pg, uint64_t trials, uint64_t seed) {
    ConcatConfig cfg;
    cfg.params = NoiseParams::standard(pg);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return cfg;
}

// --- criterion 1: homogeneous errors ---------------------------------------
void criterion1() {
    const double pg = 0.002;
    auto stats = estimate_homogeneous(cfg_at(pg, 100000, 11));
    const double unit = pg / 15.0;
    const double rx = stats.eps_x.value / unit;
    const double ry = stats.eps_y.value / unit;
    const double rz = stats.eps_z.value / unit;
    bool pass = stats.ok && std::fabs(rx - 1.0) <= 0.2 && std::fabs(ry - 1.0) <= 0.2 &&
                std::fabs(rz - 2.0) <= 0.3;
    const bool corr_low = stats.corr_rate_max <= stats.indep_rate / 5.0;

    // Full construction near threshold rejects almost everything, so the
    // higher-order and 3% correlation checks run at workable acceptance:
    // 2% on the full construction with a reduced budget, 3% on the final
    // double-verification stage where the residual structure originates.
    auto high = estimate_homogeneous(cfg_at(0.02, 1000, 12));
    const double hx = high.eps_x.value / (0.02 / 15.0);
    const double hz = high.eps_z.value / (0.02 / 15.0);
    const bool higher_order = hx > 1.0 && hz > 2.0;
    pass = pass && higher_order;

    auto corr3 = estimate_final_stage(cfg_at(0.03, 200000, 13));
    const bool corr_ok = corr_low && corr3.corr_rate_max <= corr3.indep_rate / 5.0;
    pass = pass && corr_ok;
    note(1, fmt("budgets: 1e5 accepted at 0.2%%, 1e3 at 2%% (acceptance %.1e), 2e5 final-stage at 3%%",
                high.attempts ? static_cast<double>(high.accepted) / high.attempts : 0.0));
    report(1, pass,
           fmt("eps/(p_g/15) = %.3f, %.3f, %.3f (want 1+-0.2, 1+-0.2, 2+-0.3); at p_g=2%%: %.2f, %.2f "
               "(exceed 1,2: %s); corr<=indep/5: %.2e<=%.2e at 0.2%%, %.2e<=%.2e at 3%%: %s",
               rx, ry, rz, hx, hz, higher_order ? "yes" : "no", stats.corr_rate_max,
               stats.indep_rate / 5.0, corr3.corr_rate_max, corr3.indep_rate / 5.0,
               corr_ok ? "yes" : "no"));
}

// --- criterion 2: pq1 leading order and slope -------------------------------
RateEstimate g_pq1_at_005, g_pq1_at_01, g_pq1_at_03;

void criterion2() {
    const std::vector<double> grid = {0.001, 0.002, 0.003, 0.005};
    const std::vector<uint64_t> budget = {600000, 350000, 200000, 100000};
    std::vector<double> xs, ys, sig;
    double point_ratio = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        auto pq1 = estimate_pq1(cfg_at(grid[i], budget[i], 21 + i));
        if (grid[i] == 0.005) g_pq1_at_005 = pq1;
        if (pq1.ok) {
            xs.push_back(grid[i]);
            ys.push_back(pq1.value);
            sig.push_back((pq1.hi - pq1.lo) / (2 * pq1.value));
        }
        if (grid[i] == 0.002) {
            const double lead = kBlockPairCount * std::pow((17.0 / 15.0) * grid[i], 2);
            point_ratio = pq1.value / lead;
        }
    }
    auto fit = loglog_slope(xs, ys, sig);
    const bool ratio_ok = point_ratio > 1.0 / 1.5 && point_ratio < 1.5;
    const bool slope_ok = fit.ok && std::fabs(fit.slope - 2.0) <= 0.3;
    report(2, ratio_ok && slope_ok,
           fmt("pq1(0.2%%)/leading = %.3f (want within x1.5); log-log slope over [0.1%%,0.5%%] = "
               "%.2f +- %.2f (want 2.0 +- 0.3)",
               point_ratio, fit.slope, fit.slope_err));
}

// --- criterion 3: frame suppression -----------------------------------------
PauliFrameStats g_pauli_at_005, g_pauli_at_01;

void criterion3() {
    // Budgets (documented): frame errors scale ~ p^4, so the low end needs
    // the most accepted constructions. Accepted level-2 components are
    // sampled from the measured homogeneous model; fresh |+^(1)> units and
    // the whole level-1 one-way stage run exactly.
    const std::vector<double> grid = {0.003, 0.005, 0.007, 0.01};
    const std::vector<uint64_t> budget = {500000, 300000, 150000, 80000};
    std::vector<double> xs, ys, sig;
    for (size_t i = 0; i < grid.size(); ++i) {
        auto pf = estimate_pauli1(cfg_at(grid[i], budget[i], 31 + i));
        if (grid[i] == 0.005) g_pauli_at_005 = pf;
        if (grid[i] == 0.01) g_pauli_at_01 = pf;
        const double total = pf.p_x.value + pf.p_y.value + pf.p_z.value;
        const uint64_t events = pf.p_x.events + pf.p_y.events + pf.p_z.events;
        if (events > 0) {
            xs.push_back(grid[i]);
            ys.push_back(total);
            sig.push_back(1.0 / std::sqrt(static_cast<double>(events)));
        }
        note(3, fmt("p_g=%.3f: pauli1 = %.3e (%llu events over %llu accepted trials)", grid[i], total,
                    static_cast<unsigned long long>(events),
                    static_cast<unsigned long long>(pf.accepted)));
    }
    auto fit = loglog_slope(xs, ys, sig);
    const bool slope_ok = fit.ok && xs.size() >= 3 && std::fabs(fit.slope - 4.0) <= 1.0;
    // strong suppression can leave zero events at 0.5%; then the Wilson
    // upper bound must clear the criterion
    const double pauli_005_upper =
        g_pauli_at_005.p_x.events + g_pauli_at_005.p_y.events + g_pauli_at_005.p_z.events > 0
            ? g_pauli_at_005.p_x.value + g_pauli_at_005.p_y.value + g_pauli_at_005.p_z.value
            : g_pauli_at_005.p_x.hi;
    const bool supp_ok = g_pq1_at_005.ok && pauli_005_upper <= g_pq1_at_005.value / 10.0;
    report(3, slope_ok && supp_ok,
           fmt("log-log slope over [0.3%%,1%%] = %.2f +- %.2f on %zu points (want 4.0 +- 1.0); "
               "pauli1(0.5%%) <= %.3e vs pq1/10 = %.3e: %s",
               fit.slope, fit.slope_err, xs.size(), pauli_005_upper, g_pq1_at_005.value / 10.0,
               supp_ok ? "yes" : "no"));
}

// --- criterion 4: concatenation ordering ------------------------------------
void criterion4() {
    // pq2 at p_g = 1% through the lifted construction, non-overlapping
    // intervals pq2 < pq1 < pq0.
    auto pq1 = estimate_pq1(cfg_at(0.01, 120000, 41));
    g_pq1_at_01 = pq1;
    LevelUnitModel unit;
    unit.level = 1;
    unit.p_q = pq1.value;
    unit.p_pauli_x = g_pauli_at_01.p_x.value;
    unit.p_pauli_y = g_pauli_at_01.p_y.value;
    unit.p_pauli_z = g_pauli_at_01.p_z.value;
    auto lift = lift_level(unit, 400000, 42, cfg_at(0.01, 1, 1).jobs);
    const double pq0 = pq_level0(NoiseParams::standard(0.01));
    const bool ordering =
        lift.pq_next.ok && lift.pq_next.hi < pq1.lo && pq1.hi < pq0;
    note(4, fmt("p_g=1%%: pq0 = %.4e, pq1 = %.4e [%.3e, %.3e], pq2 = %.4e [%.3e, %.3e]", pq0,
                pq1.value, pq1.lo, pq1.hi, lift.pq_next.value, lift.pq_next.lo, lift.pq_next.hi));

    // small-p_g agreement with the one-step recursion
    LevelUnitModel unit_small;
    unit_small.level = 1;
    unit_small.p_q = g_pq1_at_005.value;
    unit_small.p_pauli_x = g_pauli_at_005.p_x.value;
    unit_small.p_pauli_y = g_pauli_at_005.p_y.value;
    unit_small.p_pauli_z = g_pauli_at_005.p_z.value;
    auto lift_small = lift_level(unit_small, 3000000, 43, cfg_at(0.01, 1, 1).jobs);
    const double lead = kBlockPairCount * g_pq1_at_005.value * g_pq1_at_005.value;
    const double ratio = lift_small.pq_next.value / lead;
    const bool small_ok = lift_small.pq_next.ok && ratio > 0.5 && ratio < 2.0;

    report(4, ordering && small_ok,
           fmt("ordering pq2 < pq1 < pq0 with non-overlapping intervals: %s; pq2(0.5%%)/21*pq1^2 = "
               "%.2f (want within x2)",
               ordering ? "yes" : "no", ratio));

    // ordering attempt at p_g = 3% (may be statistics-limited by design:
    // near-threshold acceptance of the full construction is tiny)
    try {
        ConcatConfig c3 = cfg_at(0.03, 500, 44);
        c3.max_attempts_per_trial = 30000;
        auto pq1_3 = estimate_pq1(c3);
        g_pq1_at_03 = pq1_3;
        LevelUnitModel u3;
        u3.level = 1;
        u3.p_q = pq1_3.value;
        auto lift3 = lift_level(u3, 30000, 45, cfg_at(0.01, 1, 1).jobs);
        const double pq0_3 = pq_level0(NoiseParams::standard(0.03));
        note(4, fmt("p_g=3%%: pq0 = %.3e, pq1 = [%.3e, %.3e], pq2 = [%.3e, %.3e] (reported)", pq0_3,
                    pq1_3.lo, pq1_3.hi, lift3.pq_next.lo, lift3.pq_next.hi));
    } catch (const StatisticalFailure& e) {
        note(4, fmt("p_g=3%% attempt statistics-limited (intervals unavailable): %s", e.what()));
    }
}

// --- criterion 5: analytic thresholds ---------------------------------------
void criterion5() {
    const double t1 = threshold_from_ratio(17.0 / 15.0);
    const double t2 = threshold_from_ratio(5.0 / 3.0);
    const double t3 = threshold_with_memory(1e20, 0.1, 10);
    const bool pass = std::fabs(t1 - 0.0420) <= 0.0005 && std::fabs(t2 - 0.0286) <= 0.0005 &&
                      std::fabs(t3 - 0.01) <= 0.002;
    report(5, pass,
           fmt("threshold(17/15) = %.4f (0.0420 +- 0.0005); threshold(5/3) = %.4f (0.0286 +- "
               "0.0005); memory(1e20, 0.1, 10) = %.4f (0.01 +- 0.002)",
               t1, t2, t3));
}

// --- criterion 6: resource bookkeeping --------------------------------------
void criterion6() {
    bool pass = true;
    std::string detail;
    auto want_counts = [&](DiagramKind k, uint32_t s, uint32_t d, uint32_t z, uint32_t b) {
        const auto c = count_components(reduced(k));
        const bool ok = c.n_single == s && c.n_double == d && c.n_zero == z && c.n_bare == b;
        pass = pass && ok;
        detail += fmt("%s (%u,%u,%u,%u)%s ", diagram_kind_name(k).c_str(), c.n_single, c.n_double,
                      c.n_zero, c.n_bare, ok ? "" : "<-MISMATCH");
    };
    want_counts(DiagramKind::Hexa, 2, 3, 6, 10);
    want_counts(DiagramKind::Zero, 6, 7, 11, 26);
    want_counts(DiagramKind::Plus, 5, 7, 10, 24);

    AcceptanceInputs unit_acc;
    auto table = resource_table(1, unit_acc);
    pass = pass && table[0].r_zero == 69.0;
    detail += fmt("R_0(1)=%g ", table[0].r_zero);

    const Circuit enc = build_level1_encoder(CodeStateKind::Zero);
    const Circuit prelim = build_prelim_verification(CodeStateKind::Zero);
    const Circuit second = build_second_verification(CodeStateKind::Zero);
    const bool gadget_counts = enc.count_kind(OpKind::CNOT) == 9 &&
                               prelim.count_kind(OpKind::CNOT) == 12 &&
                               prelim.count_kind(OpKind::PrepZero) + prelim.count_kind(OpKind::PrepPlus) == 3 &&
                               second.count_kind(OpKind::CNOT) == 7;
    pass = pass && gadget_counts;
    detail += fmt("encoder/prelim/compare CNOTs = %zu/%zu/%zu ", enc.count_kind(OpKind::CNOT),
                  prelim.count_kind(OpKind::CNOT), second.count_kind(OpKind::CNOT));

    // step structure of totals in N
    const double pq0 = (17.0 / 15.0) * 0.001;
    int steps = 0;
    double last = -1;
    for (double n = 1e2; n <= 1e32; n *= 3.16) {
        const auto hl = highest_level(n, pq0);
        auto t = resource_table(std::max(1, hl.exact), unit_acc);
        if (last > 0 && t.back().r_zero != last) ++steps;
        last = t.back().r_zero;
    }
    pass = pass && steps >= 2;
    detail += fmt("resource steps over N sweep = %d", steps);
    report(6, pass, detail);
}

// --- criterion 7: oracle equivalence ----------------------------------------
void criterion7() {
    struct Instance {
        std::string name;
        Circuit circuit;
        double pg;
        uint64_t seeds;
        std::vector<PauliString> generators;
    };
    std::vector<Instance> instances;
    for (uint64_t i = 0; i < 44; ++i)
        instances.push_back({fmt("random%02llu", static_cast<unsigned long long>(i)),
                             corpus::random_graph_circuit(9000 + i, 5 + i % 6, 3, 1 + i % 3), 0.03,
                             1200,
                             {}});
    for (auto kind : {CodeStateKind::Zero, CodeStateKind::Plus})
        instances.push_back({kind == CodeStateKind::Zero ? "bootstrap-zero" : "bootstrap-plus",
                             build_verified_code_state(kind), 0.01, 4000, {}});
    {
        BuiltGadget sv = build_single_verification(Granularity::level1());
        auto gens = linear_cluster_generators(sv.data_blocks, BlockCode::steane(), sv.circuit.n_qubits);
        instances.push_back({"single-verification-l1", std::move(sv.circuit), 0.01, 4000, gens});
        BuiltGadget dv = build_double_verification(Granularity::level1());
        auto gens2 = linear_cluster_generators(dv.data_blocks, BlockCode::steane(), dv.circuit.n_qubits);
        instances.push_back({"double-verification-l1", std::move(dv.circuit), 0.008, 3000, gens2});
    }
    for (auto kind : {DiagramKind::Hexa, DiagramKind::Zero, DiagramKind::Plus}) {
        ExpandOptions opt;
        opt.gran = Granularity::mini();
        const auto d = reduced(kind);
        Expansion e = expand(d, opt);
        auto gens = expansion_target_generators(d, e, opt.gran);
        instances.push_back(
            {"mini-" + diagram_kind_name(kind), std::move(e.circuit), 0.02, 3000, gens});
    }

    uint64_t hard_mismatches = 0;
    double worst_z = 0.0, worst_p = 1.0;
    std::string worst_name;
    int compared = 0;
    for (const auto& inst : instances) {
        auto run_once = [&](uint64_t factor) {
            return corpus::compare_engines(inst.circuit, NoiseParams::standard(inst.pg),
                                           inst.seeds * factor, 1700 + compared,
                                           inst.generators.empty() ? nullptr : &inst.generators);
        };
        auto rep = run_once(1);
        // guard against chance dips across ~50 independent tests: re-test
        // a failing instance once at 4x the sample size
        if (rep.chi2_pvalue <= 0.01 || rep.violation_pvalue <= 0.01 || rep.acceptance_z >= 3.0)
            rep = run_once(4);
        hard_mismatches += rep.decision_mismatches + rep.flip_mismatches;
        worst_z = std::max(worst_z, rep.acceptance_z);
        if (std::min(rep.chi2_pvalue, rep.violation_pvalue) < worst_p) {
            worst_p = std::min(rep.chi2_pvalue, rep.violation_pvalue);
            worst_name = inst.name;
        }
        ++compared;
    }
    const bool pass = hard_mismatches == 0 && worst_z < 3.0 && worst_p > 0.01;
    report(7, pass,
           fmt("%d circuits; shared-stream mismatches = %llu (want 0); worst acceptance |z| = %.2f "
               "(< 3); worst distribution p = %.4f at %s (> 0.01)",
               compared, static_cast<unsigned long long>(hard_mismatches), worst_z, worst_p,
               worst_name.c_str()));
}

// --- criterion 8: fault-injection completeness ------------------------------
void criterion8() {
    BuiltGadget dv = build_double_verification(Granularity::level1());
    auto a = audit::audit_gadget(dv);
    auto hist = audit::harmful_site_histogram(a);
    // Surviving single faults: per output qubit, Z off the CNOT
    // extraction's target side plus X/Y/Z off the final CZ layer.
    bool pattern = a.harmful.size() == 2 * 7 * 4 && a.frame_anomalies == 0 &&
                   hist.count({0, -1, '?'}) == 0 && hist.count({1, -1, '?'}) == 0;
    for (size_t b = 0; b < 2; ++b)
        for (int q = 0; q < 7; ++q)
            pattern = pattern && hist[{b, q, 'X'}] == 1 && hist[{b, q, 'Y'}] == 1 &&
                      hist[{b, q, 'Z'}] == 2;
    const int sv_missed = audit::input_faults_missed(build_single_verification(Granularity::level1()));
    const int dv_missed = audit::input_faults_missed(dv);
    pattern = pattern && sv_missed == 0 && dv_missed == 0;
    report(8, pattern,
           fmt("%llu gadget locations: %llu detected, %llu harmless, %llu harmful (want 56 = "
               "X:1 Y:1 Z:2 per output qubit: %s); input faults missed: single %d, double %d",
               static_cast<unsigned long long>(a.locations),
               static_cast<unsigned long long>(a.detected),
               static_cast<unsigned long long>(a.harmless),
               static_cast<unsigned long long>(a.harmful_locations), pattern ? "yes" : "no",
               sv_missed, dv_missed));
}

}  // namespace

int main() {
    std::printf("clusterft acceptance suite\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("SUMMARY: %d/8 criteria passed\n", 8 - g_failures);
    return g_failures;
}
