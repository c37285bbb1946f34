#include "clusterft/concat.hpp"

#include <algorithm>
#include <array>
#include <thread>

#include "clusterft/gadgets.hpp"

namespace clusterft {

namespace {

constexpr uint64_t kStreamHomog = 0xA1;
constexpr uint64_t kStreamPq1 = 0xA2;
constexpr uint64_t kStreamPauli = 0xA3;
constexpr uint64_t kStreamLift = 0xA4;
constexpr uint64_t kStreamAcc1 = 0xA5;
constexpr uint64_t kStreamAcc2 = 0xA6;

struct BlockSample {
    std::array<QubitDeviation, 7> dev;
};

struct Ctx {
    FrameEngine engine;
    Rng rng{0};
    std::vector<Injection> inj;
    uint64_t cap = 1;
};

const std::vector<uint32_t>& named_block(const std::vector<BlockRef>& blocks, const std::string& name) {
    for (const auto& b : blocks)
        if (b.name == name) return b.qubits;
    throw std::logic_error("missing block: " + name);
}

// Run the worker bodies over [0, trials) split across jobs; merges nothing,
// each body writes its worker tally. Statistical failures propagate.
template <typename Tally, typename Fn>
std::vector<Tally> run_workers(uint64_t trials, int jobs, uint64_t cap, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (static_cast<uint64_t>(jobs) > trials && trials > 0) jobs = static_cast<int>(trials);
    std::vector<Tally> tallies(jobs);
    std::vector<std::string> failures(jobs);
    const uint64_t chunk = jobs > 0 ? (trials + jobs - 1) / jobs : 0;
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) {
        threads.emplace_back([&, j] {
            Ctx ctx;
            ctx.cap = cap;
            const uint64_t begin = j * chunk;
            const uint64_t end = std::min(trials, begin + chunk);
            try {
                for (uint64_t t = begin; t < end; ++t) fn(ctx, t, tallies[j]);
            } catch (const StatisticalFailure& e) {
                failures[j] = e.what();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& f : failures)
        if (!f.empty()) throw StatisticalFailure(f);
    return tallies;
}

BlockSample sample_bootstrap(Ctx& ctx, const Circuit& circ, const std::vector<uint32_t>& out,
                             const NoiseSampler& sampler, uint64_t& attempts) {
    for (uint64_t a = 0; a < ctx.cap; ++a) {
        ++attempts;
        const TrialRecord& rec = ctx.engine.run(circ, sampler, ctx.rng);
        if (!rec.accepted) continue;
        BlockSample s;
        for (int i = 0; i < 7; ++i) s.dev[i] = rec.deviation(out[i]);
        return s;
    }
    throw StatisticalFailure("bootstrap code state not accepted within attempt budget");
}

struct Level2Context {
    Expansion expansion;
    Circuit boot_zero, boot_plus;
    std::vector<uint32_t> boot_zero_out, boot_plus_out;
};

// The physical-level construction runs in the circuit model (deterministic
// CNOT and CZ gates exist there), so the heavy statistics skip the one-way
// connection overhead; the full teleport wiring stays available for
// structural checks and export.
Level2Context make_level2_context(DiagramKind kind) {
    Level2Context lc;
    ExpandOptions opt;
    opt.gran = Granularity::level1();
    opt.inline_states = false;
    opt.direct_wiring = true;
    lc.expansion = expand(reduced(kind), opt);
    lc.boot_zero = build_verified_code_state(CodeStateKind::Zero);
    lc.boot_zero_out = named_block(lc.boot_zero.outputs, "data");
    lc.boot_plus = build_verified_code_state(CodeStateKind::Plus);
    lc.boot_plus_out = named_block(lc.boot_plus.outputs, "data");
    return lc;
}

void inject_block_inputs(Ctx& ctx, const Level2Context& lc, const NoiseSampler& sampler,
                         std::vector<Injection>& out, uint64_t& boot_attempts) {
    out.clear();
    for (const auto& blk : lc.expansion.circuit.inputs) {
        const bool plus = blk.name.rfind("plus:", 0) == 0;
        BlockSample s = plus ? sample_bootstrap(ctx, lc.boot_plus, lc.boot_plus_out, sampler, boot_attempts)
                             : sample_bootstrap(ctx, lc.boot_zero, lc.boot_zero_out, sampler, boot_attempts);
        for (size_t i = 0; i < blk.qubits.size(); ++i) out.push_back({blk.qubits[i], s.dev[i]});
    }
}

// One accepted level-2 construction with fresh verified inputs per attempt.
// On return the engine record holds the accepted run.
uint64_t sample_accepted_level2(Ctx& ctx, const Level2Context& lc, const NoiseSampler& sampler) {
    uint64_t boot_attempts = 0;
    for (uint64_t a = 1; a <= ctx.cap; ++a) {
        inject_block_inputs(ctx, lc, sampler, ctx.inj, boot_attempts);
        RunOptions opt;
        opt.injections = &ctx.inj;
        const TrialRecord& rec = ctx.engine.run(lc.expansion.circuit, sampler, ctx.rng, opt);
        if (rec.accepted) return a;
    }
    throw StatisticalFailure("level-2 construction not accepted within attempt budget");
}

// Logical stabilizer generators of the intended output state, as
// (x_blocks, z_blocks) masks over the output blocks: cluster generators
// X_v prod Z_nbr for the hexa chain, code rows plus the encoded logical
// for the code states.
std::vector<std::pair<uint8_t, uint8_t>> logical_gauge_generators(DiagramKind kind, size_t n_blocks) {
    std::vector<std::pair<uint8_t, uint8_t>> gens;
    if (kind == DiagramKind::Hexa || kind == DiagramKind::PreliminaryModel) {
        for (size_t v = 0; v < n_blocks; ++v) {
            uint8_t z = 0;
            if (v > 0) z |= 1u << (v - 1);
            if (v + 1 < n_blocks) z |= 1u << (v + 1);
            gens.push_back({static_cast<uint8_t>(1u << v), z});
        }
    } else {
        const BlockCode& outer = BlockCode::steane();
        for (size_t r = 0; r < outer.num_checks(); ++r) {
            gens.push_back({outer.check_mask(r), 0});
            gens.push_back({0, outer.check_mask(r)});
        }
        if (kind == DiagramKind::Zero)
            gens.push_back({0, outer.logical_mask()});
        else
            gens.push_back({outer.logical_mask(), 0});
    }
    return gens;
}

// Reduces a multi-block deviation modulo the full stabilizer group of the
// target state (per-block code stabilizers and the logical generators);
// deviations that stabilize the ideal output are bookkeeping gauge, not
// noise. Returns per-block minimal-weight representatives.
std::vector<PauliString> gauge_fixed_blocks(const TrialRecord& rec, const std::vector<Block>& outputs,
                                            const std::vector<std::pair<uint8_t, uint8_t>>& gens) {
    const BlockCode& code = BlockCode::steane();
    std::vector<PauliString> devs(outputs.size());
    bool any = false;
    for (size_t b = 0; b < outputs.size(); ++b) {
        devs[b] = rec.block_total(outputs[b]);
        any = any || !devs[b].identity();
    }
    if (!any) return devs;
    bool logical = false;
    for (auto& d : devs) {
        d = code.min_weight_rep(d);
        const LogicalClass cls = code.residual_logical_class(d);
        logical = logical || cls == LogicalClass::X || cls == LogicalClass::Y || cls == LogicalClass::Z;
    }
    if (!logical) return devs;

    auto lift = [&](PauliString s, bool as_x) {
        PauliString lifted(7);
        for (int i = 0; i < 7; ++i)
            if ((code.logical_mask() >> i) & 1) {
                if (as_x)
                    lifted.toggle_x(i);
                else
                    lifted.toggle_z(i);
            }
        s.compose_inplace(lifted);
        return s;
    };
    auto total_weight = [&](const std::vector<PauliString>& v) {
        size_t w = 0;
        for (const auto& d : v) w += d.weight();
        return w;
    };
    std::vector<PauliString> best = devs;
    size_t best_w = total_weight(devs);
    const size_t combos = size_t{1} << gens.size();
    for (size_t c = 1; c < combos; ++c) {
        uint8_t bx = 0, bz = 0;
        for (size_t g = 0; g < gens.size(); ++g)
            if ((c >> g) & 1) {
                bx ^= gens[g].first;
                bz ^= gens[g].second;
            }
        std::vector<PauliString> cand = devs;
        for (size_t b = 0; b < cand.size(); ++b) {
            if ((bx >> b) & 1) cand[b] = lift(cand[b], true);
            if ((bz >> b) & 1) cand[b] = lift(cand[b], false);
            cand[b] = code.min_weight_rep(cand[b]);
        }
        const size_t w = total_weight(cand);
        if (w < best_w) {
            best_w = w;
            best = std::move(cand);
        }
    }
    return best;
}

}  // namespace

HomogeneousStats estimate_homogeneous(const ConcatConfig& cfg, DiagramKind kind) {
    const NoiseSampler sampler(cfg.params);
    const Level2Context lc = make_level2_context(kind);
    const auto& outputs = lc.expansion.output_blocks;
    const auto gauge_gens = logical_gauge_generators(kind, outputs.size());
    size_t n_out = 0;
    for (const auto& b : outputs) n_out += b.size();

    struct Tally {
        uint64_t ex = 0, ey = 0, ez = 0, err = 0;
        uint64_t accepted = 0, attempts = 0;
        std::vector<uint32_t> pair_counts;
    };
    auto tallies = run_workers<Tally>(
        cfg.trials, cfg.jobs, cfg.max_attempts_per_trial, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            if (tally.pair_counts.empty()) tally.pair_counts.assign(n_out * n_out, 0);
            ctx.rng = Rng::child(cfg.seed, kStreamHomog, t);
            tally.attempts += sample_accepted_level2(ctx, lc, sampler);
            ++tally.accepted;
            const TrialRecord& rec = ctx.engine.run_record();
            std::vector<uint32_t> errored;
            uint32_t k = 0;
            const auto devs = gauge_fixed_blocks(rec, outputs, gauge_gens);
            for (size_t b = 0; b < outputs.size(); ++b) {
                const auto& blk = outputs[b];
                const PauliString& dev = devs[b];
                for (size_t i = 0; i < blk.size(); ++i) {
                    switch (dev.get(i)) {
                        case Pauli::I: break;
                        case Pauli::X:
                            ++tally.ex;
                            ++tally.err;
                            errored.push_back(k);
                            break;
                        case Pauli::Y:
                            ++tally.ey;
                            ++tally.err;
                            errored.push_back(k);
                            break;
                        case Pauli::Z:
                            ++tally.ez;
                            ++tally.err;
                            errored.push_back(k);
                            break;
                    }
                    ++k;
                }
            }
            for (size_t i = 0; i < errored.size(); ++i)
                for (size_t j = i + 1; j < errored.size(); ++j)
                    ++tally.pair_counts[errored[i] * n_out + errored[j]];
        });

    HomogeneousStats out;
    uint64_t ex = 0, ey = 0, ez = 0, err = 0;
    std::vector<uint64_t> pairs(n_out * n_out, 0);
    for (const auto& t : tallies) {
        ex += t.ex;
        ey += t.ey;
        ez += t.ez;
        err += t.err;
        out.accepted += t.accepted;
        out.attempts += t.attempts;
        for (size_t i = 0; i < t.pair_counts.size(); ++i) pairs[i] += t.pair_counts[i];
    }
    const uint64_t denom = out.accepted * n_out;
    out.eps_x = wilson_rate(ex, denom);
    out.eps_y = wilson_rate(ey, denom);
    out.eps_z = wilson_rate(ez, denom);
    uint64_t max_pair = 0;
    for (uint64_t p : pairs) max_pair = std::max(max_pair, p);
    out.corr_rate_max = out.accepted ? static_cast<double>(max_pair) / out.accepted : 0.0;
    out.indep_rate = denom ? static_cast<double>(err) / denom : 0.0;
    out.ok = out.eps_x.ok && out.eps_y.ok && out.eps_z.ok;
    return out;
}

HomogeneousStats estimate_final_stage(const ConcatConfig& cfg) {
    const NoiseSampler sampler(cfg.params);
    GadgetBuilder gb(Granularity::level1(), false);
    Block d1 = gb.code_state(CodeStateKind::Plus, "d1");
    Block d2 = gb.code_state(CodeStateKind::Plus, "d2");
    gb.double_verification(d1, d2, "dv");
    gb.circuit().outputs.push_back({"data1", d1});
    gb.circuit().outputs.push_back({"data2", d2});
    gb.circuit().validate();
    Level2Context lc;
    lc.expansion.circuit = std::move(gb.circuit());
    lc.expansion.output_blocks = {d1, d2};
    lc.boot_zero = build_verified_code_state(CodeStateKind::Zero);
    lc.boot_zero_out = named_block(lc.boot_zero.outputs, "data");
    lc.boot_plus = build_verified_code_state(CodeStateKind::Plus);
    lc.boot_plus_out = named_block(lc.boot_plus.outputs, "data");
    const auto& outputs = lc.expansion.output_blocks;
    const auto gauge_gens = logical_gauge_generators(DiagramKind::PreliminaryModel, outputs.size());
    const size_t n_out = 14;

    struct Tally {
        uint64_t ex = 0, ey = 0, ez = 0, err = 0;
        uint64_t accepted = 0, attempts = 0;
        std::vector<uint32_t> pair_counts;
    };
    auto tallies = run_workers<Tally>(
        cfg.trials, cfg.jobs, cfg.max_attempts_per_trial, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            if (tally.pair_counts.empty()) tally.pair_counts.assign(n_out * n_out, 0);
            ctx.rng = Rng::child(cfg.seed, kStreamHomog ^ 0x55, t);
            tally.attempts += sample_accepted_level2(ctx, lc, sampler);
            ++tally.accepted;
            const TrialRecord& rec = ctx.engine.run_record();
            std::vector<uint32_t> errored;
            uint32_t k = 0;
            const auto devs = gauge_fixed_blocks(rec, outputs, gauge_gens);
            for (size_t b = 0; b < outputs.size(); ++b) {
                for (size_t i = 0; i < outputs[b].size(); ++i) {
                    const Pauli p = devs[b].get(i);
                    if (p != Pauli::I) {
                        ++tally.err;
                        errored.push_back(k);
                        if (p == Pauli::X) ++tally.ex;
                        if (p == Pauli::Y) ++tally.ey;
                        if (p == Pauli::Z) ++tally.ez;
                    }
                    ++k;
                }
            }
            for (size_t i = 0; i < errored.size(); ++i)
                for (size_t j = i + 1; j < errored.size(); ++j)
                    ++tally.pair_counts[errored[i] * n_out + errored[j]];
        });

    HomogeneousStats out;
    uint64_t ex = 0, ey = 0, ez = 0, err = 0;
    std::vector<uint64_t> pairs(n_out * n_out, 0);
    for (const auto& t : tallies) {
        ex += t.ex;
        ey += t.ey;
        ez += t.ez;
        err += t.err;
        out.accepted += t.accepted;
        out.attempts += t.attempts;
        for (size_t i = 0; i < t.pair_counts.size(); ++i) pairs[i] += t.pair_counts[i];
    }
    const uint64_t denom = out.accepted * n_out;
    out.eps_x = wilson_rate(ex, denom);
    out.eps_y = wilson_rate(ey, denom);
    out.eps_z = wilson_rate(ez, denom);
    uint64_t max_pair = 0;
    for (uint64_t p : pairs) max_pair = std::max(max_pair, p);
    out.corr_rate_max = out.accepted ? static_cast<double>(max_pair) / out.accepted : 0.0;
    out.indep_rate = denom ? static_cast<double>(err) / denom : 0.0;
    out.ok = out.eps_x.ok && out.eps_y.ok && out.eps_z.ok;
    return out;
}

namespace {

struct PqPair {
    Circuit circuit;
    std::vector<uint32_t> a, b;
    int32_t out_a = -1, out_b = -1;
};

PqPair make_pq_pair() {
    PqPair p;
    Circuit& c = p.circuit;
    p.a = c.add_qubits(7);
    p.b = c.add_qubits(7);
    c.inputs.push_back({"a", p.a});
    c.inputs.push_back({"b", p.b});
    for (int i = 0; i < 7; ++i) c.cz(p.a[i], p.b[i]);
    for (int i = 0; i < 7; ++i) c.measure(p.a[i], MeasBasis::X);
    c.decode(BlockCode::steane(), p.a, {}, {}, "ma");
    for (int i = 0; i < 7; ++i) c.measure(p.b[i], MeasBasis::X);
    c.decode(BlockCode::steane(), p.b, {}, {}, "mb");
    c.validate();
    p.out_a = c.find_out("ma");
    p.out_b = c.find_out("mb");
    return p;
}

}  // namespace

RateEstimate estimate_pq1(const ConcatConfig& cfg) {
    const NoiseSampler sampler(cfg.params);
    const Level2Context lc = make_level2_context(DiagramKind::Hexa);
    const PqPair pq = make_pq_pair();
    const auto& outputs = lc.expansion.output_blocks;
    const auto gauge_gens = logical_gauge_generators(DiagramKind::Hexa, outputs.size());

    struct Tally {
        uint64_t events = 0, measurements = 0;
    };
    auto tallies = run_workers<Tally>(
        cfg.trials, cfg.jobs, cfg.max_attempts_per_trial, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            ctx.rng = Rng::child(cfg.seed, kStreamPq1, t);
            sample_accepted_level2(ctx, lc, sampler);
            const TrialRecord& rec = ctx.engine.run_record();
            const auto devs = gauge_fixed_blocks(rec, outputs, gauge_gens);
            for (int pair = 0; pair < 3; ++pair) {
                ctx.inj.clear();
                for (int i = 0; i < 7; ++i) {
                    QubitDeviation da, db;
                    da.gx = devs[2 * pair].x_bit(i);
                    da.gz = devs[2 * pair].z_bit(i);
                    db.gx = devs[2 * pair + 1].x_bit(i);
                    db.gz = devs[2 * pair + 1].z_bit(i);
                    ctx.inj.push_back({pq.a[i], da});
                    ctx.inj.push_back({pq.b[i], db});
                }
                RunOptions opt;
                opt.injections = &ctx.inj;
                const TrialRecord& r = ctx.engine.run(pq.circuit, sampler, ctx.rng, opt);
                tally.events += r.out_bits[pq.out_a] + r.out_bits[pq.out_b];
                tally.measurements += 2;
            }
        });

    uint64_t events = 0, measurements = 0;
    for (const auto& t : tallies) {
        events += t.events;
        measurements += t.measurements;
    }
    return wilson_rate(events, measurements);
}

PauliFrameStats estimate_pauli1(const ConcatConfig& cfg, DiagramKind kind) {
    const NoiseSampler sampler(cfg.params);
    const Circuit boot_plus = build_verified_code_state(CodeStateKind::Plus);
    const auto& boot_plus_out = named_block(boot_plus.outputs, "data");
    ExpandOptions opt2;
    opt2.gran = Granularity::level2();
    opt2.inline_states = false;
    const Expansion exp3 = expand(reduced(kind), opt2);
    const BlockCode& steane = BlockCode::steane();

    // Accepted level-2 clusters are sampled from the measured homogeneous
    // residual model (independent per-qubit rates, including higher
    // orders); the smallness of pairwise correlations is established by
    // the homogeneous-error stage. Brute-force rejection over every
    // component would stall near threshold.
    ConcatConfig eps_cfg = cfg;
    eps_cfg.trials = std::min<uint64_t>(20000, std::max<uint64_t>(2000, cfg.trials / 20));
    const HomogeneousStats eps = estimate_homogeneous(eps_cfg, DiagramKind::Hexa);
    const double ex = eps.eps_x.value, ey = eps.eps_y.value, ez = eps.eps_z.value;

    struct Tally {
        uint64_t px = 0, py = 0, pz = 0, det = 0;
        uint64_t accepted = 0, attempts = 0;
    };
    auto tallies = run_workers<Tally>(
        cfg.trials, cfg.jobs, cfg.max_attempts_per_trial, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            ctx.rng = Rng::child(cfg.seed, kStreamPauli, t);
            std::vector<Injection> saved;
            for (uint64_t a = 0; a < ctx.cap; ++a) {
                saved.clear();
                uint64_t boot_attempts = 0;
                for (const auto& blk : exp3.circuit.inputs) {
                    if (blk.name.rfind("zero:", 0) == 0) {
                        for (uint32_t q : blk.qubits) {
                            const double u = ctx.rng.next_double();
                            if (u >= ex + ey + ez) continue;
                            QubitDeviation d;
                            if (u < ex) {
                                d.gx = 1;
                            } else if (u < ex + ey) {
                                d.gx = d.gz = 1;
                            } else {
                                d.gz = 1;
                            }
                            saved.push_back({q, d});
                        }
                    } else {  // fresh verified |+^(1)> units, sampled exactly
                        for (size_t u = 0; u < 7; ++u) {
                            BlockSample s =
                                sample_bootstrap(ctx, boot_plus, boot_plus_out, sampler, boot_attempts);
                            for (int i = 0; i < 7; ++i)
                                saved.push_back({blk.qubits[u * 7 + i], s.dev[i]});
                        }
                    }
                }
                RunOptions opt;
                opt.injections = &saved;
                const TrialRecord& rec = ctx.engine.run(exp3.circuit, sampler, ctx.rng, opt);
                ++tally.attempts;
                if (!rec.accepted) continue;
                ++tally.accepted;
                for (const auto& blk : exp3.output_blocks) {
                    for (size_t u = 0; u < 7; ++u) {
                        uint8_t wx = 0, wz = 0;
                        for (int i = 0; i < 7; ++i) {
                            const auto d = rec.deviation(blk[u * 7 + i]);
                            wx |= static_cast<uint8_t>(d.wx << i);
                            wz |= static_cast<uint8_t>(d.wz << i);
                        }
                        switch (steane.residual_logical_class_bits(wx, wz)) {
                            case LogicalClass::I: break;
                            case LogicalClass::X: ++tally.px; break;
                            case LogicalClass::Y: ++tally.py; break;
                            case LogicalClass::Z: ++tally.pz; break;
                            case LogicalClass::Detectable: ++tally.det; break;
                        }
                    }
                }
                return;
            }
            throw StatisticalFailure("level-3 construction not accepted within attempt budget");
        });

    PauliFrameStats out;
    uint64_t px = 0, py = 0, pz = 0;
    for (const auto& t : tallies) {
        px += t.px;
        py += t.py;
        pz += t.pz;
        out.detectable_units += t.det;
        out.accepted += t.accepted;
        out.attempts += t.attempts;
    }
    const uint64_t units = out.accepted * exp3.output_blocks.size() * 7;
    out.p_x = wilson_rate(px, units);
    out.p_y = wilson_rate(py, units);
    out.p_z = wilson_rate(pz, units);
    out.ok = out.accepted > 0;
    return out;
}

LiftResult lift_level(const LevelUnitModel& unit, uint64_t trials, uint64_t seed, int jobs,
                      DiagramKind kind) {
    ExpandOptions opt;
    opt.gran = Granularity::level1();
    opt.inline_states = false;
    const Expansion exp = expand(reduced(kind), opt);
    NoiseParams unit_params;
    unit_params.p_meas = unit.p_q;
    const NoiseSampler sampler(unit_params);
    const BlockCode& steane = BlockCode::steane();
    const uint32_t n = exp.circuit.n_qubits;
    const double px = unit.p_pauli_x, py = unit.p_pauli_y, pz = unit.p_pauli_z;

    struct Tally {
        uint64_t accepted = 0, attempts = 0;
        uint64_t pq_events = 0, pq_meas = 0;
        uint64_t fx = 0, fy = 0, fz = 0, det = 0, funits = 0;
    };
    auto tallies =
        run_workers<Tally>(trials, jobs, 200000, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            ctx.rng = Rng::child(seed, kStreamLift, t);
            for (uint64_t a = 0; a < ctx.cap; ++a) {
                ctx.inj.clear();
                for (uint32_t q = 0; q < n; ++q) {
                    const double u = ctx.rng.next_double();
                    if (u >= px + py + pz) continue;
                    QubitDeviation d;
                    if (u < px) {
                        d.gx = 1;
                    } else if (u < px + py) {
                        d.gx = d.gz = 1;
                    } else {
                        d.gz = 1;
                    }
                    ctx.inj.push_back({q, d});
                }
                RunOptions ro;
                ro.injections = &ctx.inj;
                const TrialRecord& rec = ctx.engine.run(exp.circuit, sampler, ctx.rng, ro);
                ++tally.attempts;
                if (!rec.accepted) continue;
                ++tally.accepted;
                for (const auto& blk : exp.output_blocks) {
                    uint8_t flips = 0, wx = 0, wz = 0;
                    for (int i = 0; i < 7; ++i) {
                        const auto d = rec.deviation(blk[i]);
                        uint8_t f = d.gz;  // X measurement flips on Z/Y deviations
                        if (ctx.rng.bernoulli(unit.p_q)) f ^= 1;
                        flips |= static_cast<uint8_t>(f << i);
                        wx |= static_cast<uint8_t>(d.wx << i);
                        wz |= static_cast<uint8_t>(d.wz << i);
                    }
                    tally.pq_events += steane.decode(flips).logical_bit;
                    ++tally.pq_meas;
                    switch (steane.residual_logical_class_bits(wx, wz)) {
                        case LogicalClass::I: break;
                        case LogicalClass::X: ++tally.fx; break;
                        case LogicalClass::Y: ++tally.fy; break;
                        case LogicalClass::Z: ++tally.fz; break;
                        case LogicalClass::Detectable: ++tally.det; break;
                    }
                    ++tally.funits;
                }
                return;
            }
            throw StatisticalFailure("lifted construction not accepted within attempt budget");
        });

    Tally sum;
    for (const auto& t : tallies) {
        sum.accepted += t.accepted;
        sum.attempts += t.attempts;
        sum.pq_events += t.pq_events;
        sum.pq_meas += t.pq_meas;
        sum.fx += t.fx;
        sum.fy += t.fy;
        sum.fz += t.fz;
        sum.det += t.det;
        sum.funits += t.funits;
    }
    LiftResult out;
    out.pq_next = wilson_rate(sum.pq_events, sum.pq_meas);
    out.pauli_next.p_x = wilson_rate(sum.fx, sum.funits);
    out.pauli_next.p_y = wilson_rate(sum.fy, sum.funits);
    out.pauli_next.p_z = wilson_rate(sum.fz, sum.funits);
    out.pauli_next.detectable_units = sum.det;
    out.pauli_next.accepted = sum.accepted;
    out.pauli_next.attempts = sum.attempts;
    out.pauli_next.ok = sum.accepted > 0;
    out.pauli_next_total = wilson_rate(sum.fx + sum.fy + sum.fz, sum.funits);
    out.acceptance = wilson_rate(sum.accepted, sum.attempts);
    out.next.level = unit.level + 1;
    out.next.p_q = out.pq_next.value;
    out.next.p_pauli_x = out.pauli_next.p_x.value;
    out.next.p_pauli_y = out.pauli_next.p_y.value;
    out.next.p_pauli_z = out.pauli_next.p_z.value;
    return out;
}

RateEstimate acceptance_level1(CodeStateKind state, const ConcatConfig& cfg) {
    const NoiseSampler sampler(cfg.params);
    const Circuit boot = build_verified_code_state(state);
    struct Tally {
        uint64_t accepted = 0;
    };
    auto tallies =
        run_workers<Tally>(cfg.trials, cfg.jobs, cfg.max_attempts_per_trial,
                           [&](Ctx& ctx, uint64_t t, Tally& tally) {
                               ctx.rng = Rng::child(cfg.seed, kStreamAcc1, t);
                               const TrialRecord& rec = ctx.engine.run(boot, sampler, ctx.rng);
                               if (rec.accepted) ++tally.accepted;
                           });
    uint64_t accepted = 0;
    for (const auto& t : tallies) accepted += t.accepted;
    return wilson_rate(accepted, cfg.trials);
}

RateEstimate acceptance_level2(DiagramKind kind, const ConcatConfig& cfg) {
    const NoiseSampler sampler(cfg.params);
    const Level2Context lc = make_level2_context(kind);
    struct Tally {
        uint64_t accepted = 0;
    };
    auto tallies = run_workers<Tally>(
        cfg.trials, cfg.jobs, cfg.max_attempts_per_trial, [&](Ctx& ctx, uint64_t t, Tally& tally) {
            ctx.rng = Rng::child(cfg.seed, kStreamAcc2, t);
            uint64_t boot_attempts = 0;
            inject_block_inputs(ctx, lc, sampler, ctx.inj, boot_attempts);
            RunOptions opt;
            opt.injections = &ctx.inj;
            const TrialRecord& rec = ctx.engine.run(lc.expansion.circuit, sampler, ctx.rng, opt);
            if (rec.accepted) ++tally.accepted;
        });
    uint64_t accepted = 0;
    for (const auto& t : tallies) accepted += t.accepted;
    return wilson_rate(accepted, cfg.trials);
}

}  // namespace clusterft
