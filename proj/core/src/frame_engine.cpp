#include "clusterft/frame_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace clusterft {

QubitDeviation TrialRecord::deviation(uint32_t q) const {
    QubitDeviation d;
    d.gx = engine->gx(q);
    d.gz = engine->gz(q);
    d.wx = engine->wx(q);
    d.wz = engine->wz(q);
    d.rx = engine->rx(q);
    d.rz = engine->rz(q);
    return d;
}

PauliString TrialRecord::block_total(const std::vector<uint32_t>& qubits) const {
    PauliString s(qubits.size());
    for (size_t i = 0; i < qubits.size(); ++i) {
        s.set_x(i, engine->gx(qubits[i]));
        s.set_z(i, engine->gz(qubits[i]));
    }
    return s;
}

PauliString TrialRecord::block_frame(const std::vector<uint32_t>& qubits) const {
    PauliString s(qubits.size());
    for (size_t i = 0; i < qubits.size(); ++i) {
        s.set_x(i, engine->wx(qubits[i]));
        s.set_z(i, engine->wz(qubits[i]));
    }
    return s;
}

PauliString TrialRecord::block_physical(const std::vector<uint32_t>& qubits) const {
    PauliString s(qubits.size());
    for (size_t i = 0; i < qubits.size(); ++i) {
        s.set_x(i, engine->gx(qubits[i]) ^ engine->wx(qubits[i]));
        s.set_z(i, engine->gz(qubits[i]) ^ engine->wz(qubits[i]));
    }
    return s;
}

namespace {
// Anticommutation of a deviation (x,z bits) with the measured Pauli.
inline uint8_t anti_bit(bool x, bool z, MeasBasis basis) {
    switch (basis) {
        case MeasBasis::X: return z;
        case MeasBasis::Z: return x;
        case MeasBasis::Y: return x ^ z;
    }
    return 0;
}
}  // namespace

const TrialRecord& FrameEngine::run(const Circuit& c, const NoiseSampler& sampler, Rng& rng,
                                    const RunOptions& options) {
    const size_t words = (c.n_qubits + 63) / 64;
    for (auto* v : {&gx_, &gz_, &wx_, &wz_, &rx_, &rz_}) {
        v->assign(words, 0);
    }
    s_true_.assign(c.n_qubits, 0);
    s_obs_.assign(c.n_qubits, 0);
    const bool memory_on = sampler.params().p_memory_step > 0.0;
    if (memory_on) birth_.assign(c.n_qubits, 0);

    record_.engine = this;
    record_.check_flips.assign(c.check_names.size(), 0);
    record_.out_bits.assign(c.out_names.size(), 0);

    auto apply_injection = [&](const Injection& inj) {
        const uint32_t q = inj.qubit;
        if (inj.dev.gx) toggle(gx_, q);
        if (inj.dev.gz) toggle(gz_, q);
        if (inj.dev.wx) toggle(wx_, q);
        if (inj.dev.wz) toggle(wz_, q);
        if (inj.dev.rx) toggle(rx_, q);
        if (inj.dev.rz) toggle(rz_, q);
    };
    bool has_deferred = false;
    if (options.injections) {
        for (const auto& inj : *options.injections) {
            if (inj.at_op == 0)
                apply_injection(inj);
            else
                has_deferred = true;
        }
    }

    const FaultSpec* fault = options.fault;
    for (uint32_t idx = 0; idx < c.ops.size(); ++idx) {
        if (has_deferred && idx > 0) {
            for (const auto& inj : *options.injections)
                if (inj.at_op == idx) apply_injection(inj);
        }
        const Op& op = c.ops[idx];
        const bool forced = fault && fault->op_index == idx;
        switch (op.kind) {
            case OpKind::PrepZero:
            case OpKind::PrepPlus: {
                const PrepBasis basis = op.kind == OpKind::PrepZero ? PrepBasis::Z : PrepBasis::X;
                if (auto e = sampler.sample_prep(basis, rng)) compose_g(op.a, *e);
                if (forced && fault->flip) compose_g(op.a, basis == PrepBasis::Z ? Pauli::X : Pauli::Z);
                if (memory_on) birth_[op.a] = idx;
                break;
            }
            case OpKind::H: {
                const uint32_t q = op.a;
                for (auto planes : {std::pair{&gx_, &gz_}, {&wx_, &wz_}, {&rx_, &rz_}}) {
                    const bool x = bit(*planes.first, q), z = bit(*planes.second, q);
                    if (x != z) {
                        toggle(*planes.first, q);
                        toggle(*planes.second, q);
                    }
                }
                break;
            }
            case OpKind::S: {
                const uint32_t q = op.a;
                if (bit(gx_, q)) toggle(gz_, q);
                if (bit(wx_, q)) toggle(wz_, q);
                if (bit(rx_, q)) toggle(rz_, q);
                break;
            }
            case OpKind::CNOT: {
                const uint32_t ctl = op.a, tgt = op.b;
                if (bit(gx_, ctl)) toggle(gx_, tgt);
                if (bit(gz_, tgt)) toggle(gz_, ctl);
                if (bit(wx_, ctl)) toggle(wx_, tgt);
                if (bit(wz_, tgt)) toggle(wz_, ctl);
                if (bit(rx_, ctl)) toggle(rx_, tgt);
                if (bit(rz_, tgt)) toggle(rz_, ctl);
                if (auto e = sampler.sample_two_qubit(rng)) {
                    compose_g(ctl, e->first);
                    compose_g(tgt, e->second);
                }
                if (forced) {
                    compose_g(ctl, fault->a);
                    compose_g(tgt, fault->b);
                }
                break;
            }
            case OpKind::CZ: {
                const uint32_t qa = op.a, qb = op.b;
                if (bit(gx_, qa)) toggle(gz_, qb);
                if (bit(gx_, qb)) toggle(gz_, qa);
                if (bit(wx_, qa)) toggle(wz_, qb);
                if (bit(wx_, qb)) toggle(wz_, qa);
                if (bit(rx_, qa)) toggle(rz_, qb);
                if (bit(rx_, qb)) toggle(rz_, qa);
                if (auto e = sampler.sample_two_qubit(rng)) {
                    compose_g(qa, e->first);
                    compose_g(qb, e->second);
                }
                if (forced) {
                    compose_g(qa, fault->a);
                    compose_g(qb, fault->b);
                }
                break;
            }
            case OpKind::Measure: {
                const uint32_t q = op.a;
                if (memory_on) {
                    const uint32_t idle = idx - birth_[q];
                    const double p = 1.0 - std::pow(1.0 - sampler.params().p_memory_step, idle);
                    if (auto e = sampler.sample_memory(p, rng)) compose_g(q, *e);
                }
                const uint8_t s_true =
                    anti_bit(bit(gx_, q) ^ bit(rx_, q), bit(gz_, q) ^ bit(rz_, q), op.basis);
                uint8_t s_obs = anti_bit(bit(gx_, q), bit(gz_, q), op.basis);
                if (sampler.sample_meas_flip(rng)) s_obs ^= 1;
                if (forced && fault->flip) s_obs ^= 1;
                s_true_[q] = s_true;
                s_obs_[q] = s_obs;
                for (uint32_t i = op.tag_begin; i < op.tag_end; ++i)
                    record_.check_flips[c.tag_pool[i]] ^= s_obs;
                if (op.out_tag >= 0) record_.out_bits[op.out_tag] = s_obs;
                for (auto* v : {&gx_, &gz_, &wx_, &wz_, &rx_, &rz_})
                    if (bit(*v, q)) toggle(*v, q);
                break;
            }
            case OpKind::Frame: {
                // One-bit teleport with raw byproduct recording. A state
                // deviation on the source rides through onto the target
                // (the posterior shifts relative to the observed outcome);
                // the record follows the observed bit, so its deviation is
                // the readout-and-adjustment part alone.
                const uint32_t src = op.a, dst = op.b;
                if (s_obs_[src]) {
                    toggle(gx_, dst);
                    toggle(wx_, dst);
                }
                if (s_obs_[src] ^ s_true_[src]) toggle(rx_, dst);
                break;
            }
            case OpKind::Decode: {
                const auto& g = c.decode_groups[op.group];
                uint8_t bits_true = 0, bits_obs = 0;
                for (size_t i = 0; i < g.sources.size(); ++i) {
                    bits_true |= static_cast<uint8_t>(s_true_[g.sources[i]] << i);
                    bits_obs |= static_cast<uint8_t>(s_obs_[g.sources[i]] << i);
                }
                const DecodeResult d = g.code->decode(bits_obs);
                for (uint32_t i = op.tag_begin; i < op.tag_end; ++i)
                    record_.check_flips[c.tag_pool[i]] ^= d.logical_bit;
                if (op.out_tag >= 0) record_.out_bits[op.out_tag] = d.logical_bit;
                if (!g.targets.empty()) {
                    // True byproduct per physical pair; logical-only record.
                    for (size_t i = 0; i < g.targets.size(); ++i) {
                        if ((bits_true >> i) & 1) {
                            toggle(gx_, g.targets[i]);
                            toggle(wx_, g.targets[i]);
                        }
                    }
                    if (d.logical_bit) {
                        const uint8_t rep = g.code->logical_mask();
                        for (size_t i = 0; i < g.targets.size(); ++i) {
                            if ((rep >> i) & 1) {
                                toggle(gx_, g.targets[i]);
                                toggle(wx_, g.targets[i]);
                                toggle(rx_, g.targets[i]);
                            }
                        }
                    }
                }
                break;
            }
        }
    }

    record_.accepted = true;
    for (uint8_t f : record_.check_flips)
        if (f) {
            record_.accepted = false;
            break;
        }
    return record_;
}

std::vector<FaultSpec> enumerate_faults(const Circuit& circuit, uint32_t op_begin, uint32_t op_end) {
    std::vector<FaultSpec> out;
    const uint32_t end = std::min<uint32_t>(op_end, static_cast<uint32_t>(circuit.ops.size()));
    for (uint32_t i = op_begin; i < end; ++i) {
        const Op& op = circuit.ops[i];
        switch (op.kind) {
            case OpKind::CNOT:
            case OpKind::CZ:
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        if (a == 0 && b == 0) continue;
                        FaultSpec f;
                        f.op_index = i;
                        f.a = static_cast<Pauli>(a);
                        f.b = static_cast<Pauli>(b);
                        out.push_back(f);
                    }
                break;
            case OpKind::PrepZero:
            case OpKind::PrepPlus:
            case OpKind::Measure: {
                FaultSpec f;
                f.op_index = i;
                f.flip = true;
                out.push_back(f);
                break;
            }
            default: break;
        }
    }
    return out;
}

}  // namespace clusterft
