#include "clusterft/gadgets.hpp"

#include <stdexcept>

namespace clusterft {

GadgetBuilder::GadgetBuilder(Granularity gran, bool inline_states, std::string prefix)
    : gran_(gran), inline_states_(inline_states), prefix_(std::move(prefix)) {
    if (gran_.encoded_units && inline_states_)
        throw std::invalid_argument("encoded-unit blocks cannot be prepared inline");
}

std::string GadgetBuilder::tag(const std::string& name) const {
    return prefix_.empty() ? name : prefix_ + "." + name;
}

Block GadgetBuilder::alloc_block() { return circuit_.add_qubits(gran_.block_size()); }

Block GadgetBuilder::fresh_plus_units(const std::string& name) {
    Block b = alloc_block();
    if (gran_.encoded_units) {
        circuit_.inputs.push_back({"punits:" + tag(name), b});
    } else {
        for (uint32_t q : b) circuit_.prep_plus(q);
    }
    return b;
}

Block GadgetBuilder::code_state(CodeStateKind kind, const std::string& name) {
    Block b = alloc_block();
    if (inline_states_) {
        encoder(b, kind);
    } else {
        circuit_.inputs.push_back({(kind == CodeStateKind::Zero ? "zero:" : "plus:") + tag(name), b});
    }
    return b;
}

void GadgetBuilder::transversal_cz(const Block& a, const Block& b) {
    if (a.size() != b.size()) throw std::invalid_argument("transversal_cz: block size mismatch");
    for (size_t k = 0; k < a.size(); ++k) circuit_.cz(a[k], b[k]);
}

void GadgetBuilder::transversal_cnot(const Block& c, const Block& t) {
    if (c.size() != t.size()) throw std::invalid_argument("transversal_cnot: block size mismatch");
    for (size_t k = 0; k < c.size(); ++k) circuit_.cnot(c[k], t[k]);
}

void GadgetBuilder::transversal_h(const Block& b) {
    for (uint32_t q : b) circuit_.h(q);
}

void GadgetBuilder::encoder(const Block& b, CodeStateKind kind) {
    if (gran_.unit_size() != 1) throw std::invalid_argument("encoder needs unit granularity");
    const BlockCode& code = *gran_.block_code;
    for (size_t i = 0; i < code.n(); ++i) {
        bool is_plus = false;
        for (uint8_t s : code.encoder_plus_sources()) is_plus |= (s == i);
        if (is_plus)
            circuit_.prep_plus(b[i]);
        else
            circuit_.prep_zero(b[i]);
    }
    for (size_t r = 0; r < code.num_checks(); ++r) {
        const uint8_t pivot = code.encoder_plus_sources()[r];
        const uint8_t mask = code.check_mask(r);
        for (size_t m = 0; m < code.n(); ++m)
            if (((mask >> m) & 1) && m != pivot) circuit_.cnot(b[pivot], b[m]);
    }
    if (kind == CodeStateKind::Plus) transversal_h(b);
}

void GadgetBuilder::unit_measure(const uint32_t* unit, MeasBasis basis,
                                 const std::vector<std::string>& tags, const std::string& out_tag,
                                 const uint32_t* teleport_dst) {
    if (!gran_.encoded_units) {
        circuit_.measure(unit[0], basis, tags, out_tag);
        if (teleport_dst) circuit_.frame(unit[0], teleport_dst[0]);
        return;
    }
    const size_t us = gran_.unit_size();
    std::vector<uint32_t> sources(unit, unit + us);
    for (uint32_t q : sources) circuit_.measure(q, basis);
    std::vector<uint32_t> targets;
    if (teleport_dst) targets.assign(teleport_dst, teleport_dst + us);
    circuit_.decode(BlockCode::steane(), std::move(sources), std::move(targets), tags, out_tag);
}

void GadgetBuilder::measure_block(const Block& b, MeasBasis basis, const std::string& tag_prefix,
                                  bool logical_parity_tag, const std::string& out_prefix) {
    const BlockCode& code = *gran_.block_code;
    const size_t us = gran_.unit_size();
    const std::string base = tag(tag_prefix);
    for (size_t i = 0; i < code.n(); ++i) {
        std::vector<std::string> tags;
        for (size_t r = 0; r < code.num_checks(); ++r)
            if ((code.check_mask(r) >> i) & 1) tags.push_back(base + ".h" + std::to_string(r));
        if (logical_parity_tag && ((code.logical_mask() >> i) & 1)) tags.push_back(base + ".lp");
        std::string out;
        if (!out_prefix.empty()) out = tag(out_prefix) + ".u" + std::to_string(i);
        unit_measure(b.data() + i * us, basis, tags, out, nullptr);
    }
}

void GadgetBuilder::teleport_measure(const Block& src, const Block& dst, const std::string& tag_prefix) {
    if (src.size() != dst.size()) throw std::invalid_argument("teleport_measure: block size mismatch");
    const BlockCode& code = *gran_.block_code;
    const size_t us = gran_.unit_size();
    const size_t units = src.size() / us;
    const std::string base = tag_prefix.empty() ? std::string{} : tag(tag_prefix);
    for (size_t i = 0; i < units; ++i) {
        std::vector<std::string> tags;
        if (!base.empty())
            for (size_t r = 0; r < code.num_checks(); ++r)
                if ((code.check_mask(r) >> i) & 1) tags.push_back(base + ".h" + std::to_string(r));
        unit_measure(src.data() + i * us, MeasBasis::X, tags, {}, dst.data() + i * us);
    }
}

void GadgetBuilder::hop(Block& carrier, const std::string& name) {
    Block fresh = fresh_plus_units(name);
    transversal_cz(carrier, fresh);
    teleport_measure(carrier, fresh);
    transversal_h(fresh);  // basis normalization; single-qubit gates are noiseless
    carrier = fresh;
}

Block GadgetBuilder::oplus_input(const std::string& name) {
    Block src = code_state(CodeStateKind::Zero, name + ".src");
    Block dst = fresh_plus_units(name);
    transversal_cz(src, dst);
    teleport_measure(src, dst);
    return dst;
}

void GadgetBuilder::single_verification(const Block& d1, const Block& d2, const std::string& name,
                                        bool cnot_dressing) {
    if (cnot_dressing) transversal_h(d2);
    transversal_cz(d1, d2);
    if (cnot_dressing) transversal_h(d2);
    Block a1 = code_state(CodeStateKind::Zero, name + ".a1");
    Block a2 = code_state(CodeStateKind::Zero, name + ".a2");
    transversal_cnot(a1, d1);
    transversal_cnot(a2, d2);
    measure_block(a1, MeasBasis::X, name + ".a1", false);
    measure_block(a2, MeasBasis::X, name + ".a2", false);
}

void GadgetBuilder::double_verification(const Block& d1, const Block& d2, const std::string& name,
                                        bool cnot_dressing) {
    if (cnot_dressing) transversal_h(d2);
    transversal_cz(d1, d2);
    if (cnot_dressing) transversal_h(d2);
    const Block* data[2] = {&d1, &d2};
    Block primary_z[2], secondary_z[2], primary_x[2], secondary_x[2];
    for (int side = 0; side < 2; ++side) {
        const std::string sn = name + (side == 0 ? ".1" : ".2");
        primary_z[side] = code_state(CodeStateKind::Zero, sn + ".p");
        secondary_z[side] = code_state(CodeStateKind::Zero, sn + ".s");
        primary_x[side] = code_state(CodeStateKind::Zero, sn + ".q");
        secondary_x[side] = code_state(CodeStateKind::Zero, sn + ".t");
        // Z-error extraction through CNOT, then X-error extraction through
        // CZ; each primary is inspected by its secondary before readout so
        // primary-to-data propagation is caught in first order.
        transversal_cnot(primary_z[side], *data[side]);
        transversal_cnot(primary_z[side], secondary_z[side]);
        transversal_cz(*data[side], primary_x[side]);
        transversal_cnot(primary_x[side], secondary_x[side]);
    }
    for (int side = 0; side < 2; ++side) {
        const std::string sn = name + (side == 0 ? ".1" : ".2");
        measure_block(secondary_z[side], MeasBasis::Z, sn + ".s", true);
        measure_block(primary_z[side], MeasBasis::X, sn + ".p", false);
        measure_block(secondary_x[side], MeasBasis::Z, sn + ".t", true);
        measure_block(primary_x[side], MeasBasis::X, sn + ".q", false);
    }
}

void GadgetBuilder::prelim_verification(const Block& b, CodeStateKind kind, const std::string& name) {
    if (gran_.unit_size() != 1) throw std::invalid_argument("prelim_verification needs unit granularity");
    const BlockCode& code = *gran_.block_code;
    for (size_t r = 0; r < code.num_checks(); ++r) {
        const uint32_t anc = circuit_.add_qubit();
        const uint8_t mask = code.check_mask(r);
        const std::string t = tag(name + ".g" + std::to_string(r));
        if (kind == CodeStateKind::Zero) {
            // X-stabilizer measurement guarding Z errors.
            circuit_.prep_plus(anc);
            for (size_t m = 0; m < code.n(); ++m)
                if ((mask >> m) & 1) circuit_.cnot(anc, b[m]);
            circuit_.measure(anc, MeasBasis::X, {t});
        } else {
            // Z-stabilizer measurement guarding X errors.
            circuit_.prep_zero(anc);
            for (size_t m = 0; m < code.n(); ++m)
                if ((mask >> m) & 1) circuit_.cnot(b[m], anc);
            circuit_.measure(anc, MeasBasis::Z, {t});
        }
    }
}

void GadgetBuilder::second_verification(const Block& kept, const Block& ancilla, CodeStateKind kind,
                                        const std::string& name) {
    if (kind == CodeStateKind::Zero) {
        transversal_cnot(kept, ancilla);
        measure_block(ancilla, MeasBasis::Z, name, true);
    } else {
        transversal_cnot(ancilla, kept);
        measure_block(ancilla, MeasBasis::X, name, true);
    }
}

Circuit build_level1_encoder(CodeStateKind kind) {
    GadgetBuilder gb(Granularity::level1(), true);
    Block data = gb.alloc_block();
    gb.encoder(data, kind);
    gb.circuit().outputs.push_back({"data", data});
    gb.circuit().validate();
    return std::move(gb.circuit());
}

Circuit build_prelim_verification(CodeStateKind kind) {
    GadgetBuilder gb(Granularity::level1(), true);
    Block data = gb.alloc_block();
    gb.circuit().inputs.push_back({"data", data});
    gb.prelim_verification(data, kind, "prelim");
    gb.circuit().outputs.push_back({"data", data});
    gb.circuit().validate();
    return std::move(gb.circuit());
}

Circuit build_second_verification(CodeStateKind kind) {
    GadgetBuilder gb(Granularity::level1(), true);
    Block data = gb.alloc_block();
    Block ancilla = gb.alloc_block();
    gb.circuit().inputs.push_back({"data", data});
    gb.circuit().inputs.push_back({"ancilla", ancilla});
    gb.second_verification(data, ancilla, kind, "cmp");
    gb.circuit().outputs.push_back({"data", data});
    gb.circuit().validate();
    return std::move(gb.circuit());
}

Circuit build_verified_code_state(CodeStateKind kind) {
    GadgetBuilder gb(Granularity::level1(), true);
    Block kept = gb.alloc_block();
    Block ancilla = gb.alloc_block();
    gb.encoder(kept, kind);
    gb.encoder(ancilla, kind);
    gb.prelim_verification(kept, kind, "k");
    gb.prelim_verification(ancilla, kind, "a");
    gb.second_verification(kept, ancilla, kind, "cmp");
    gb.circuit().outputs.push_back({"data", kept});
    gb.circuit().validate();
    return std::move(gb.circuit());
}

namespace {

BuiltGadget finish_gadget(GadgetBuilder&& gb, std::vector<Block> data_blocks, uint32_t begin) {
    BuiltGadget out;
    for (size_t i = 0; i < data_blocks.size(); ++i)
        gb.circuit().outputs.push_back({"data" + std::to_string(i + 1), data_blocks[i]});
    out.circuit = std::move(gb.circuit());
    out.circuit.validate();
    out.gadget_op_begin = begin;
    out.data_blocks = std::move(data_blocks);
    return out;
}

Block inline_plus_block(GadgetBuilder& gb) {
    Block b = gb.alloc_block();
    gb.encoder(b, CodeStateKind::Plus);
    return b;
}

}  // namespace

BuiltGadget build_single_verification(const Granularity& gran) {
    GadgetBuilder gb(gran, true);
    Block d1 = inline_plus_block(gb);
    Block d2 = inline_plus_block(gb);
    const uint32_t begin = static_cast<uint32_t>(gb.circuit().ops.size());
    gb.single_verification(d1, d2, "sv");
    return finish_gadget(std::move(gb), {d1, d2}, begin);
}

BuiltGadget build_double_verification(const Granularity& gran) {
    GadgetBuilder gb(gran, true);
    Block d1 = inline_plus_block(gb);
    Block d2 = inline_plus_block(gb);
    const uint32_t begin = static_cast<uint32_t>(gb.circuit().ops.size());
    gb.double_verification(d1, d2, "dv");
    return finish_gadget(std::move(gb), {d1, d2}, begin);
}

BuiltGadget build_teleport_gadget(const Granularity& gran, bool to_zero) {
    GadgetBuilder gb(gran, true);
    Block src = gb.alloc_block();
    gb.encoder(src, CodeStateKind::Zero);
    const uint32_t begin = static_cast<uint32_t>(gb.circuit().ops.size());
    Block dst = gb.fresh_plus_units("t");
    gb.transversal_cz(src, dst);
    gb.teleport_measure(src, dst);
    if (to_zero) gb.transversal_h(dst);
    return finish_gadget(std::move(gb), {dst}, begin);
}

namespace {

void lift_block_pauli(PauliString& out, const Block& block, const BlockCode& code, uint8_t x_mask,
                      uint8_t z_mask) {
    const size_t us = block.size() / code.n();
    for (size_t i = 0; i < code.n(); ++i) {
        // Encoded units carry the pattern on their own logical support.
        for (size_t j = 0; j < us; ++j) {
            const bool in_unit_logical = us == 1 || ((BlockCode::steane().logical_mask() >> j) & 1);
            if (!in_unit_logical) continue;
            const uint32_t q = block[i * us + j];
            if ((x_mask >> i) & 1) out.toggle_x(q);
            if ((z_mask >> i) & 1) out.toggle_z(q);
        }
    }
}

}  // namespace

std::vector<PauliString> code_state_generators(CodeStateKind kind, const std::vector<Block>& blocks,
                                               const BlockCode& block_code, uint32_t n_qubits) {
    std::vector<PauliString> gens;
    const uint8_t all = block_code.logical_mask();
    for (const auto& b : blocks)
        if (b.size() != block_code.n())
            throw std::invalid_argument("state generators need unit-granularity blocks");
    // Per-block code stabilizers (none for the one-qubit code).
    for (const auto& b : blocks)
        for (size_t r = 0; r < block_code.num_checks(); ++r) {
            PauliString gx(n_qubits), gz(n_qubits);
            for (size_t i = 0; i < block_code.n(); ++i)
                if ((block_code.check_mask(r) >> i) & 1) {
                    gx.toggle_x(b[i]);
                    gz.toggle_z(b[i]);
                }
            gens.push_back(gx);
            gens.push_back(gz);
        }
    // Logical-level stabilizers of the encoded state over the blocks
    // (blocks play the role of the qubits of one more code level).
    const BlockCode& outer = BlockCode::steane();
    if (blocks.size() != outer.n()) throw std::invalid_argument("code_state_generators: need 7 blocks");
    for (size_t r = 0; r < outer.num_checks(); ++r) {
        PauliString gx(n_qubits), gz(n_qubits);
        for (size_t i = 0; i < outer.n(); ++i)
            if ((outer.check_mask(r) >> i) & 1) {
                lift_block_pauli(gx, blocks[i], block_code, all, 0);
                lift_block_pauli(gz, blocks[i], block_code, 0, all);
            }
        gens.push_back(gx);
        gens.push_back(gz);
    }
    PauliString logical(n_qubits);
    for (size_t i = 0; i < outer.n(); ++i)
        if ((outer.logical_mask() >> i) & 1) {
            if (kind == CodeStateKind::Zero)
                lift_block_pauli(logical, blocks[i], block_code, 0, all);
            else
                lift_block_pauli(logical, blocks[i], block_code, all, 0);
        }
    gens.push_back(logical);
    return gens;
}

std::vector<PauliString> linear_cluster_generators(const std::vector<Block>& blocks,
                                                   const BlockCode& block_code, uint32_t n_qubits) {
    std::vector<PauliString> gens;
    const uint8_t all = block_code.logical_mask();
    for (const auto& b : blocks) {
        if (b.size() != block_code.n())
            throw std::invalid_argument("state generators need unit-granularity blocks");
        for (size_t r = 0; r < block_code.num_checks(); ++r) {
            PauliString gx(n_qubits), gz(n_qubits);
            for (size_t i = 0; i < block_code.n(); ++i)
                if ((block_code.check_mask(r) >> i) & 1) {
                    gx.toggle_x(b[i]);
                    gz.toggle_z(b[i]);
                }
            gens.push_back(gx);
            gens.push_back(gz);
        }
    }
    for (size_t v = 0; v < blocks.size(); ++v) {
        PauliString k(n_qubits);
        lift_block_pauli(k, blocks[v], block_code, all, 0);
        if (v > 0) lift_block_pauli(k, blocks[v - 1], block_code, 0, all);
        if (v + 1 < blocks.size()) lift_block_pauli(k, blocks[v + 1], block_code, 0, all);
        gens.push_back(k);
    }
    return gens;
}

}  // namespace clusterft
