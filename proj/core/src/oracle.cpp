#include "clusterft/oracle.hpp"

#include <bit>
#include <stdexcept>

namespace clusterft {

namespace {
inline bool bit(const std::vector<uint64_t>& w, uint32_t q) { return (w[q >> 6] >> (q & 63)) & 1; }
inline void toggle(std::vector<uint64_t>& w, uint32_t q) { w[q >> 6] ^= 1ULL << (q & 63); }
inline uint8_t frame_anti(const std::vector<uint64_t>& fx, const std::vector<uint64_t>& fz, uint32_t q,
                          MeasBasis basis) {
    switch (basis) {
        case MeasBasis::X: return bit(fz, q);
        case MeasBasis::Z: return bit(fx, q);
        case MeasBasis::Y: return bit(fx, q) ^ bit(fz, q);
    }
    return 0;
}
}  // namespace

StabilizerOracle::RawRun StabilizerOracle::run_raw(const Circuit& c, const NoiseSampler* sampler,
                                                   Rng* rng_err, Rng& rng_branch, const RunOptions& options) {
    if (!c.inputs.empty())
        throw std::invalid_argument("oracle requires a self-contained circuit (no input blocks)");
    if (sampler && sampler->params().p_memory_step > 0.0)
        throw std::invalid_argument("oracle does not model memory error");

    state_.emplace(c.n_qubits);
    Tableau& st = *state_;
    const size_t words = (c.n_qubits + 63) / 64;
    rec_x_.assign(words, 0);
    rec_z_.assign(words, 0);
    std::vector<uint8_t> adjusted(c.n_qubits, 0);  // frame-adjusted outcomes

    RawRun raw;
    raw.check_values.assign(c.check_names.size(), 0);
    raw.out_values.assign(c.out_names.size(), 0);

    const FaultSpec* fault = options.fault;
    auto apply_fault_pauli = [&](uint32_t q, Pauli p) { st.apply_pauli(q, p); };

    for (uint32_t idx = 0; idx < c.ops.size(); ++idx) {
        const Op& op = c.ops[idx];
        const bool forced = fault && fault->op_index == idx;
        switch (op.kind) {
            case OpKind::PrepZero:
            case OpKind::PrepPlus: {
                if (op.kind == OpKind::PrepPlus) st.h(op.a);
                const PrepBasis basis = op.kind == OpKind::PrepZero ? PrepBasis::Z : PrepBasis::X;
                if (sampler) {
                    if (auto e = sampler->sample_prep(basis, *rng_err)) apply_fault_pauli(op.a, *e);
                }
                if (forced && fault->flip)
                    apply_fault_pauli(op.a, basis == PrepBasis::Z ? Pauli::X : Pauli::Z);
                break;
            }
            case OpKind::H: {
                st.h(op.a);
                const bool x = bit(rec_x_, op.a), z = bit(rec_z_, op.a);
                if (x != z) {
                    toggle(rec_x_, op.a);
                    toggle(rec_z_, op.a);
                }
                break;
            }
            case OpKind::S:
                st.s(op.a);
                if (bit(rec_x_, op.a)) toggle(rec_z_, op.a);
                break;
            case OpKind::CNOT:
            case OpKind::CZ: {
                if (op.kind == OpKind::CNOT) {
                    st.cnot(op.a, op.b);
                    if (bit(rec_x_, op.a)) toggle(rec_x_, op.b);
                    if (bit(rec_z_, op.b)) toggle(rec_z_, op.a);
                } else {
                    st.cz(op.a, op.b);
                    if (bit(rec_x_, op.a)) toggle(rec_z_, op.b);
                    if (bit(rec_x_, op.b)) toggle(rec_z_, op.a);
                }
                if (sampler) {
                    if (auto e = sampler->sample_two_qubit(*rng_err)) {
                        apply_fault_pauli(op.a, e->first);
                        apply_fault_pauli(op.b, e->second);
                    }
                }
                if (forced) {
                    apply_fault_pauli(op.a, fault->a);
                    apply_fault_pauli(op.b, fault->b);
                }
                break;
            }
            case OpKind::Measure: {
                bool o = st.measure(op.a, op.basis, rng_branch);
                if (sampler && sampler->sample_meas_flip(*rng_err)) o = !o;
                if (forced && fault->flip) o = !o;
                const uint8_t adj = static_cast<uint8_t>(o) ^ frame_anti(rec_x_, rec_z_, op.a, op.basis);
                adjusted[op.a] = adj;
                for (uint32_t i = op.tag_begin; i < op.tag_end; ++i) raw.check_values[c.tag_pool[i]] ^= adj;
                if (op.out_tag >= 0) raw.out_values[op.out_tag] = adj;
                if (bit(rec_x_, op.a)) toggle(rec_x_, op.a);
                if (bit(rec_z_, op.a)) toggle(rec_z_, op.a);
                break;
            }
            case OpKind::Frame:
                if (adjusted[op.a]) toggle(rec_x_, op.b);
                break;
            case OpKind::Decode: {
                const auto& g = c.decode_groups[op.group];
                uint8_t bits = 0;
                for (size_t i = 0; i < g.sources.size(); ++i)
                    bits |= static_cast<uint8_t>(adjusted[g.sources[i]] << i);
                const DecodeResult d = g.code->decode(bits);
                for (uint32_t i = op.tag_begin; i < op.tag_end; ++i)
                    raw.check_values[c.tag_pool[i]] ^= d.logical_bit;
                if (op.out_tag >= 0) raw.out_values[op.out_tag] = d.logical_bit;
                if (!g.targets.empty() && d.logical_bit) {
                    const uint8_t rep = g.code->logical_mask();
                    for (size_t i = 0; i < g.targets.size(); ++i)
                        if ((rep >> i) & 1) toggle(rec_x_, g.targets[i]);
                }
                break;
            }
        }
    }
    return raw;
}

OracleReference StabilizerOracle::compute_reference(const Circuit& c, uint64_t branch_seed_base,
                                                    int determinism_probes) {
    OracleReference ref;
    for (int probe = 0; probe < determinism_probes; ++probe) {
        Rng branch(branch_seed_base + probe);
        RawRun raw = run_raw(c, nullptr, nullptr, branch, RunOptions{});
        if (probe == 0) {
            ref.check_values = raw.check_values;
            ref.out_values = raw.out_values;
        } else if (raw.check_values != ref.check_values) {
            throw std::logic_error("check tag is not a deterministic parity");
        }
    }
    return ref;
}

OracleRecord StabilizerOracle::run(const Circuit& c, const NoiseSampler& sampler, Rng& rng_err,
                                   Rng& rng_branch, const OracleReference& reference,
                                   const RunOptions& options) {
    RawRun raw = run_raw(c, &sampler, &rng_err, rng_branch, options);
    OracleRecord rec;
    rec.check_flips.resize(raw.check_values.size());
    for (size_t i = 0; i < raw.check_values.size(); ++i)
        rec.check_flips[i] = raw.check_values[i] ^ reference.check_values[i];
    rec.out_bits.resize(raw.out_values.size());
    for (size_t i = 0; i < raw.out_values.size(); ++i)
        rec.out_bits[i] = raw.out_values[i] ^ reference.out_values[i];
    rec.accepted = true;
    for (uint8_t f : rec.check_flips)
        if (f) {
            rec.accepted = false;
            break;
        }
    return rec;
}

bool StabilizerOracle::violated(const PauliString& generator) const {
    if (!state_) throw std::logic_error("violated() before run()");
    auto v = state_->expectation(generator);
    if (!v) throw std::logic_error("target generator has no definite eigenvalue");
    uint64_t acc = 0;
    for (size_t w = 0; w < rec_x_.size(); ++w)
        acc ^= (rec_x_[w] & generator.z_words()[w]) ^ (rec_z_[w] & generator.x_words()[w]);
    const bool frame_flip = std::popcount(acc) & 1;
    return (*v == -1) != frame_flip;
}

std::vector<uint8_t> StabilizerOracle::violations(const std::vector<PauliString>& generators) const {
    std::vector<uint8_t> out(generators.size());
    for (size_t i = 0; i < generators.size(); ++i) out[i] = violated(generators[i]) ? 1 : 0;
    return out;
}

}  // namespace clusterft
