// Experiment runner: Monte Carlo estimators and analytic scans for the
// verified-cluster fault-tolerance architecture, emitting figure-ready CSV
// plus a JSON run manifest.

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterft/analytics.hpp"
#include "clusterft/concat.hpp"
#include "clusterft/diagrams.hpp"
#include "clusterft/io.hpp"

using json = nlohmann::json;
using namespace clusterft;

namespace {

struct CommonOpts {
    std::vector<double> pg_grid{0.002};
    uint64_t trials = 20000;
    uint64_t seed = 1;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::string out = "run";
    std::string config_path;
    std::string kind = "hexa";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--pg-grid", o.pg_grid, "physical error probabilities p_g")->delimiter(',');
    cmd->add_option("--trials", o.trials, "trials per grid point");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--out", o.out, "output path prefix");
    cmd->add_option("--config", o.config_path, "JSON config file (flags override)");
}

// Flags override config-file values: load the file first, then reparse.
void apply_config_file(CLI::App* cmd, CommonOpts& o, std::vector<std::string>& extra_errors) {
    if (o.config_path.empty()) return;
    json cfg;
    try {
        cfg = json::parse(read_file(o.config_path));
    } catch (const std::exception& e) {
        extra_errors.push_back(std::string("config parse error: ") + e.what());
        return;
    }
    static const std::vector<std::string> known = {"pg_grid", "trials", "seed",  "jobs",
                                                   "out",     "kind",   "level", "computation_size",
                                                   "tau_m",   "n_steps"};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            extra_errors.push_back("config: unknown field '" + it.key() + "'");
    }
    if (!extra_errors.empty()) return;
    if (cfg.contains("pg_grid") && cmd->get_option("--pg-grid")->count() == 0)
        o.pg_grid = cfg["pg_grid"].get<std::vector<double>>();
    if (cfg.contains("trials") && cmd->get_option("--trials")->count() == 0)
        o.trials = cfg["trials"].get<uint64_t>();
    if (cfg.contains("seed") && cmd->get_option("--seed")->count() == 0) o.seed = cfg["seed"].get<uint64_t>();
    if (cfg.contains("jobs") && cmd->get_option("--jobs")->count() == 0) o.jobs = cfg["jobs"].get<int>();
    if (cfg.contains("out") && cmd->get_option("--out")->count() == 0) o.out = cfg["out"].get<std::string>();
    auto* kind_opt = cmd->get_option_no_throw("--kind");
    if (cfg.contains("kind") && kind_opt && kind_opt->count() == 0) o.kind = cfg["kind"].get<std::string>();
}

json manifest_base(const CLI::App* cmd, const CommonOpts& o) {
    json m;
    m["tool"] = "clusterft";
    m["version"] = "0.1.0";
    m["experiment"] = cmd->get_name();
    m["config"] = {{"pg_grid", o.pg_grid}, {"trials", o.trials}, {"seed", o.seed},
                   {"jobs", o.jobs},       {"out", o.out},       {"kind", o.kind}};
    return m;
}

void finalize(const CommonOpts& o, const std::vector<CsvRow>& rows, json manifest,
              std::chrono::steady_clock::time_point t0) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["wall_time_s"] = wall;
    write_file(o.out + ".csv", csv_render(rows));
    write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << o.out << ".csv (" << rows.size() << " rows), " << o.out
              << ".manifest.json\n";
}

ConcatConfig make_cfg(const CommonOpts& o, double pg) {
    ConcatConfig cfg;
    cfg.params = NoiseParams::standard(pg);
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    return cfg;
}

void push_rate(std::vector<CsvRow>& rows, double pg, const std::string& name, const RateEstimate& r) {
    rows.push_back({pg, name, r.value, r.lo, r.hi, r.trials});
}

int run_simulate_homogeneous(const CLI::App* cmd, const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    json acc = json::array();
    for (double pg : o.pg_grid) {
        auto stats = estimate_homogeneous(make_cfg(o, pg), diagram_kind_from_name(o.kind));
        const double norm = pg > 0 ? pg / 15.0 : 1.0;
        auto normed = [&](const RateEstimate& r, const char* n) {
            rows.push_back({pg, n, r.value / norm, r.lo / norm, r.hi / norm, r.trials});
        };
        normed(stats.eps_x, "eps_x_norm");
        normed(stats.eps_y, "eps_y_norm");
        normed(stats.eps_z, "eps_z_norm");
        push_rate(rows, pg, "eps_x", stats.eps_x);
        push_rate(rows, pg, "eps_y", stats.eps_y);
        push_rate(rows, pg, "eps_z", stats.eps_z);
        rows.push_back({pg, "corr_rate_max", stats.corr_rate_max, 0, 0, stats.accepted});
        rows.push_back({pg, "indep_rate", stats.indep_rate, 0, 0, stats.accepted});
        acc.push_back({{"p_g", pg},
                       {"accepted", stats.accepted},
                       {"attempts", stats.attempts},
                       {"ok", stats.ok}});
    }
    manifest["acceptance"] = acc;
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_estimate_pq(const CLI::App* cmd, const CommonOpts& o, int level, uint64_t pauli_trials,
                    double unit_pq, double unit_pauli) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    manifest["config"]["level"] = level;
    for (double pg : o.pg_grid) {
        const double pq0 = pq_level0(NoiseParams::standard(pg));
        rows.push_back({pg, "pq0", pq0, pq0, pq0, 0});
        auto pq1 = estimate_pq1(make_cfg(o, pg));
        push_rate(rows, pg, "pq1", pq1);
        rows.push_back({pg, "pq1_leading", kBlockPairCount * pq0 * pq0, 0, 0, 0});
        if (level >= 2) {
            LevelUnitModel unit;
            unit.level = 1;
            unit.p_q = unit_pq > 0 ? unit_pq : pq1.value;
            if (unit_pauli > 0) {
                unit.p_pauli_z = unit_pauli;
            } else {
                ConcatConfig pc = make_cfg(o, pg);
                pc.trials = pauli_trials;
                auto pf = estimate_pauli1(pc);
                unit.p_pauli_x = pf.p_x.value;
                unit.p_pauli_y = pf.p_y.value;
                unit.p_pauli_z = pf.p_z.value;
                push_rate(rows, pg, "pauli1_x", pf.p_x);
                push_rate(rows, pg, "pauli1_y", pf.p_y);
                push_rate(rows, pg, "pauli1_z", pf.p_z);
            }
            auto lift = lift_level(unit, o.trials, o.seed, o.jobs);
            push_rate(rows, pg, "pq2", lift.pq_next);
            rows.push_back({pg, "pq2_leading", kBlockPairCount * pq1.value * pq1.value, 0, 0, 0});
            push_rate(rows, pg, "acceptance_l3", lift.acceptance);
        }
    }
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_estimate_pauli(const CLI::App* cmd, const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    json acc = json::array();
    for (double pg : o.pg_grid) {
        auto pf = estimate_pauli1(make_cfg(o, pg), diagram_kind_from_name(o.kind));
        push_rate(rows, pg, "pauli1_x", pf.p_x);
        push_rate(rows, pg, "pauli1_y", pf.p_y);
        push_rate(rows, pg, "pauli1_z", pf.p_z);
        rows.push_back({pg, "pauli1_detectable_units", static_cast<double>(pf.detectable_units), 0, 0,
                        pf.accepted});
        acc.push_back(
            {{"p_g", pg}, {"accepted", pf.accepted}, {"attempts", pf.attempts}, {"ok", pf.ok}});
    }
    manifest["acceptance"] = acc;
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_acceptance(const CLI::App* cmd, const CommonOpts& o, int level, uint64_t pauli_trials,
                   double unit_pq, double unit_pauli) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    manifest["config"]["level"] = level;
    for (double pg : o.pg_grid) {
        RateEstimate r;
        if (level == 1) {
            const CodeStateKind state =
                o.kind == "plus" || o.kind == "+" ? CodeStateKind::Plus : CodeStateKind::Zero;
            r = acceptance_level1(state, make_cfg(o, pg));
        } else if (level == 2) {
            r = acceptance_level2(diagram_kind_from_name(o.kind), make_cfg(o, pg));
        } else {
            LevelUnitModel unit;
            unit.level = 1;
            if (unit_pq > 0) {
                unit.p_q = unit_pq;
                unit.p_pauli_z = unit_pauli;
            } else {
                auto pq1 = estimate_pq1(make_cfg(o, pg));
                ConcatConfig pc = make_cfg(o, pg);
                pc.trials = pauli_trials;
                auto pf = estimate_pauli1(pc);
                unit.p_q = pq1.value;
                unit.p_pauli_x = pf.p_x.value;
                unit.p_pauli_y = pf.p_y.value;
                unit.p_pauli_z = pf.p_z.value;
            }
            LiftResult lift;
            for (int l = 3; l <= level; ++l) {
                lift = lift_level(unit, o.trials, o.seed, o.jobs, diagram_kind_from_name(o.kind));
                unit = lift.next;
            }
            r = lift.acceptance;
        }
        push_rate(rows, pg, "acceptance_l" + std::to_string(level), r);
    }
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_threshold_scan(const CLI::App* cmd, const CommonOpts& o, bool physical_oneway, double tau_m,
                       double n_steps, double computation_size) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    for (double pg : o.pg_grid) {
        const NoiseParams params = NoiseParams::standard(pg);
        const double pq0 = physical_oneway ? physical_oneway_pq0(params) : pq_level0(params);
        const double d_ratio = pg > 0 ? pq0 / pg : 0.0;
        rows.push_back({pg, "pq0", pq0, pq0, pq0, 0});
        rows.push_back({pg, "d_ratio", d_ratio, 0, 0, 0});
        for (int l = 1; l <= 4; ++l) {
            const double pql = pq_recursion(pq0, l);
            rows.push_back({pg, "pq_analytic_l" + std::to_string(l), pql, pql, pql, 0});
        }
        if (d_ratio > 0)
            rows.push_back({pg, "p_threshold", threshold_from_ratio(d_ratio), 0, 0, 0});
    }
    if (tau_m > 0) {
        const double pth = threshold_with_memory(computation_size, tau_m, n_steps);
        rows.push_back({0.0, "p_threshold_memory", pth, 0, 0, 0});
        manifest["config"]["tau_m"] = tau_m;
        manifest["config"]["n_steps"] = n_steps;
        manifest["config"]["computation_size"] = computation_size;
    }
    manifest["config"]["physical_oneway"] = physical_oneway;
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_resources(const CLI::App* cmd, const CommonOpts& o, double computation_size,
                  const std::string& p_alpha_file, const std::string& baseline,
                  const std::vector<double>& n_grid) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CsvRow> rows;
    json manifest = manifest_base(cmd, o);
    manifest["config"]["computation_size"] = computation_size;

    AcceptanceInputs acc;
    if (!p_alpha_file.empty()) {
        // CSV: level,p_hexa,p_zero,p_plus
        std::istringstream is(read_file(p_alpha_file));
        std::string line;
        std::getline(is, line);  // header
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            double lvl, ph, p0, pp;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &lvl, &ph, &p0, &pp) != 4)
                throw std::invalid_argument("bad p-alpha row: " + line);
            acc.p_hexa.push_back(ph);
            acc.p_zero.push_back(p0);
            acc.p_plus.push_back(pp);
        }
    }

    const double pg = o.pg_grid.empty() ? 1e-3 : o.pg_grid.front();
    const double pq0 = pq_level0(NoiseParams::standard(pg));
    const auto lbar = highest_level(computation_size, pq0);
    const int levels = std::max(lbar.reachable ? lbar.exact : lbar.estimate, 1);
    manifest["highest_level"] = {{"exact", lbar.exact},
                                 {"estimate", lbar.estimate},
                                 {"reachable", lbar.reachable}};
    auto table = resource_table(levels, acc);
    for (const auto& row : table) {
        const double lv = row.level;
        rows.push_back({lv, "r_single", row.r_single, 0, 0, 0});
        rows.push_back({lv, "r_double", row.r_double, 0, 0, 0});
        rows.push_back({lv, "r_hexa", row.r_hexa, 0, 0, 0});
        rows.push_back({lv, "r_zero", row.r_zero, 0, 0, 0});
        rows.push_back({lv, "r_plus", row.r_plus, 0, 0, 0});
        rows.push_back({lv, "r_bare", row.r_bare, 0, 0, 0});
    }
    for (double n : n_grid) {
        const auto hl = highest_level(n, pq0);
        const int l = std::max(1, hl.reachable ? hl.exact : hl.estimate);
        auto t = resource_table(l, acc);
        rows.push_back({n, "r_zero_at_highest_level", t.back().r_zero, 0, 0, 0});
        rows.push_back({n, "highest_level", static_cast<double>(l), 0, 0, 0});
    }
    if (!baseline.empty()) {
        // Optional user-supplied comparison curve, echoed into the output.
        std::istringstream is(read_file(baseline));
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            double n, r;
            if (std::sscanf(line.c_str(), "%lf,%lf", &n, &r) == 2)
                rows.push_back({n, "baseline", r, 0, 0, 0});
        }
    }
    finalize(o, rows, manifest, t0);
    return 0;
}

int run_expand_diagram(const CLI::App* cmd, const CommonOpts& o, int level) {
    auto t0 = std::chrono::steady_clock::now();
    json manifest = manifest_base(cmd, o);
    manifest["config"]["level"] = level;
    const ReducedDiagram d = reduced(diagram_kind_from_name(o.kind));
    ExpandOptions opt;
    opt.gran = level >= 2 ? Granularity::level2() : Granularity::level1();
    opt.inline_states = false;
    const Expansion e = expand(d, opt);
    write_file(o.out + ".circuit.txt", e.circuit.to_text());
    const auto c = e.counts;
    json counts = {{"n_single", c.n_single},
                   {"n_double", c.n_double},
                   {"n_zero", c.n_zero},
                   {"n_bare", c.n_bare},
                   {"emitted_single", e.emitted_single},
                   {"emitted_double", e.emitted_double},
                   {"emitted_oplus", e.emitted_oplus},
                   {"emitted_hops", e.emitted_hops},
                   {"n_qubits", e.circuit.n_qubits}};
    write_file(o.out + ".counts.json", counts.dump(2) + "\n");
    manifest["counts"] = counts;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["wall_time_s"] = wall;
    write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << o.out << ".circuit.txt, " << o.out << ".counts.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator and analytic estimator for verified-cluster fault tolerance"};
    app.require_subcommand(1);

    CommonOpts o;
    uint64_t pauli_trials = 20000;
    int level = 1;
    double unit_pq = 0, unit_pauli = 0;
    bool physical_oneway = false;
    double tau_m = 0, n_steps = 0, computation_size = 1e16;
    std::string p_alpha_file, baseline;
    std::vector<double> n_grid;

    auto* homog = app.add_subcommand("simulate-homogeneous",
                                     "residual error rates on verified level-2 cluster outputs");
    add_common(homog, o);
    homog->add_option("--kind", o.kind, "construction kind: hexa|zero|plus");

    auto* pq = app.add_subcommand("estimate-pq", "logical measurement error p_q at level 1 or 2");
    add_common(pq, o);
    pq->add_option("--level", level, "1 (direct) or 2 (lifted)")->check(CLI::Range(1, 2));
    pq->add_option("--pauli-trials", pauli_trials, "trials for the frame-error stage");
    pq->add_option("--unit-pq", unit_pq, "override unit p_q (skips the direct stage at level 2)");
    pq->add_option("--unit-pauli", unit_pauli, "override unit frame error");

    auto* pauli = app.add_subcommand("estimate-pauli", "frame error rates of level-1 output units");
    add_common(pauli, o);
    pauli->add_option("--kind", o.kind, "level-3 construction kind");

    auto* acc = app.add_subcommand("acceptance", "postselection success probability per level");
    add_common(acc, o);
    acc->add_option("--kind", o.kind, "h|hexa|zero|plus");
    acc->add_option("--level", level, "concatenation level (>=3 coarse-grained)")->check(CLI::Range(1, 8));
    acc->add_option("--pauli-trials", pauli_trials, "trials for the frame-error stage");
    acc->add_option("--unit-pq", unit_pq, "override unit p_q for coarse levels");
    acc->add_option("--unit-pauli", unit_pauli, "override unit frame error");

    auto* thr = app.add_subcommand("threshold-scan", "closed-form recursion and threshold values");
    add_common(thr, o);
    thr->add_flag("--physical-oneway", physical_oneway, "one-way computation at the physical level");
    thr->add_option("--memory", tau_m, "memory error waiting-time factor tau_m");
    thr->add_option("--memory-steps", n_steps, "steps per level n for the memory variant");
    thr->add_option("--N", computation_size, "computation size for the memory variant");

    auto* res = app.add_subcommand("resources", "resource recursion up to the highest level");
    add_common(res, o);
    res->add_option("--N", computation_size, "computation size")->required();
    res->add_option("--p-alpha", p_alpha_file, "CSV of per-level acceptance: level,p_hexa,p_zero,p_plus");
    res->add_option("--baseline", baseline, "optional comparison CSV (N,resources) echoed to output");
    res->add_option("--n-grid", n_grid, "additional N values for the step-structure curve")->delimiter(',');

    auto* expd = app.add_subcommand("expand-diagram", "compile a reduced diagram into a circuit");
    add_common(expd, o);
    expd->add_option("--kind", o.kind, "hexa|zero|plus|preliminary_model");
    expd->add_option("--level", level, "1 or 2 (granularity of the emitted circuit)")->check(CLI::Range(1, 2));

    CLI11_PARSE(app, argc, argv);
    CLI::App* cmd = app.get_subcommands().front();

    std::vector<std::string> config_errors;
    apply_config_file(cmd, o, config_errors);
    if (!config_errors.empty()) {
        for (const auto& e : config_errors) std::cerr << "error: " << e << "\n";
        return 2;
    }

    try {
        if (cmd == homog) return run_simulate_homogeneous(cmd, o);
        if (cmd == pq) return run_estimate_pq(cmd, o, level, pauli_trials, unit_pq, unit_pauli);
        if (cmd == pauli) return run_estimate_pauli(cmd, o);
        if (cmd == acc) return run_acceptance(cmd, o, level, pauli_trials, unit_pq, unit_pauli);
        if (cmd == thr) return run_threshold_scan(cmd, o, physical_oneway, tau_m, n_steps, computation_size);
        if (cmd == res) return run_resources(cmd, o, computation_size, p_alpha_file, baseline, n_grid);
        if (cmd == expd) return run_expand_diagram(cmd, o, level);
    } catch (const StatisticalFailure& e) {
        std::cerr << "statistical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
