#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/code.hpp"

namespace clusterft {

enum class CodeStateKind : uint8_t { Zero, Plus };

// Granularity of the blocks a construction circuit operates on.
//  - block_code: code tying a block's units together (steane or the
//    one-qubit test code)
//  - encoded_units: each unit is itself a 7-qubit code block whose
//    transversal measurements get Hamming-decoded (the granularity of the
//    level-2 one-way computation). Otherwise units are physical qubits.
struct Granularity {
    const BlockCode* block_code = &BlockCode::steane();
    bool encoded_units = false;

    size_t unit_size() const { return encoded_units ? BlockCode::steane().n() : 1; }
    size_t block_size() const { return block_code->n() * unit_size(); }

    static Granularity level1() { return {&BlockCode::steane(), false}; }
    static Granularity level2() { return {&BlockCode::steane(), true}; }
    static Granularity mini() { return {&BlockCode::unit(), false}; }
};

using Block = std::vector<uint32_t>;

// Incrementally assembles construction circuits out of transversal block
// operations, teleport hops and verification gadgets. Code-state blocks
// are either encoded inline (self-contained circuits for the oracle and
// for bootstrap) or declared as input blocks to be injected by a pipeline.
class GadgetBuilder {
  public:
    GadgetBuilder(Granularity gran, bool inline_states, std::string prefix = {});

    Circuit& circuit() { return circuit_; }
    const Granularity& gran() const { return gran_; }

    Block alloc_block();
    // Fresh |+> units (physical preps; at level-2 granularity an input
    // block of verified |+^(1)> units).
    Block fresh_plus_units(const std::string& name);
    // A verified |0^(l)> / |+^(l)> block: inline encoder or input block.
    Block code_state(CodeStateKind kind, const std::string& name);

    void transversal_cz(const Block& a, const Block& b);
    void transversal_cnot(const Block& c, const Block& t);
    void transversal_h(const Block& b);

    // In-place encoder over the block's units (unit granularity only):
    // |0_L> from 9 CNOTs, |+_L> via trailing transversal H.
    void encoder(const Block& b, CodeStateKind kind);

    // Transversal block measurement feeding one check per code row
    // (tag `<p>.h<r>`) and optionally the logical parity (`<p>.lp`). When
    // out_prefix is nonempty each unit's flip lands in `<out>.u<i>`.
    void measure_block(const Block& b, MeasBasis basis, const std::string& tag_prefix,
                       bool logical_parity_tag, const std::string& out_prefix = {});

    // X-measure src's units, recording the one-bit-teleport byproducts onto
    // dst (raw per-qubit record at unit granularity, Hamming-decoded logical
    // record for encoded units). When tag_prefix is nonempty the block's
    // Hamming parities become checks (valid when both ends are code
    // blocks, e.g. the final box teleports).
    void teleport_measure(const Block& src, const Block& dst, const std::string& tag_prefix = {});

    // Bare-CZ connection to a fresh carrier: the outgoing block is measured
    // out and the state continues, basis-normalized, on the fresh block.
    void hop(Block& carrier, const std::string& name);

    // Input encoding: teleports a |0^(l)> source onto fresh |+> units,
    // leaving |+^(l)> on the returned block.
    Block oplus_input(const std::string& name);

    // Verified CZ with one Z-syndrome extraction per block. When
    // cnot_dressing is set the verified edge unitary is CNOT(d1 -> d2)
    // (basis-change conjugation of the CZ; single-qubit gates are
    // noiseless in the error model).
    void single_verification(const Block& d1, const Block& d2, const std::string& name,
                             bool cnot_dressing = false);

    // Verified CZ with per-side Z then X error extraction, each primary
    // ancilla inspected by a secondary.
    void double_verification(const Block& d1, const Block& d2, const std::string& name,
                             bool cnot_dressing = false);

    // Bare stabilizer measurements (1 ancilla + 4 CNOTs each) guarding Z
    // errors on |0> / X errors on |+>. Unit granularity only.
    void prelim_verification(const Block& b, CodeStateKind kind, const std::string& name);

    // Transversal comparison against a second code state; detects X errors
    // on |0> / Z errors on |+> in first order.
    void second_verification(const Block& kept, const Block& ancilla, CodeStateKind kind,
                             const std::string& name);

  private:
    void unit_measure(const uint32_t* unit, MeasBasis basis, const std::vector<std::string>& tags,
                      const std::string& out_tag, const uint32_t* teleport_dst);
    std::string tag(const std::string& name) const;

    Granularity gran_;
    bool inline_states_;
    std::string prefix_;
    Circuit circuit_;
};

// --- Standalone gadget circuits -------------------------------------------

// 7-qubit encoder for the logical |0> (exactly 9 CNOTs) or |+> (same, plus
// transversal H); output block "data".
Circuit build_level1_encoder(CodeStateKind kind);

// The three bare stabilizer measurements appended to an encoded block
// (input "data"): 3 ancillas, 12 CNOTs.
Circuit build_prelim_verification(CodeStateKind kind);

// Transversal 7-CNOT comparison of two preliminarily verified blocks
// (inputs "data", "ancilla"); the ancilla block is measured out.
Circuit build_second_verification(CodeStateKind kind);

// Full level-1 bootstrap: encoder + preliminary verification on two
// blocks, then the transversal comparison. Self-contained; output "data".
Circuit build_verified_code_state(CodeStateKind kind);

struct BuiltGadget {
    Circuit circuit;
    uint32_t gadget_op_begin = 0;  // ops before this are inline input preparation
    std::vector<Block> data_blocks;
};

// Self-contained verification gadgets on |+^(l)> data blocks for oracle
// cross-checks and fault injection.
BuiltGadget build_single_verification(const Granularity& gran);
BuiltGadget build_double_verification(const Granularity& gran);
// One-bit-teleportation encodings; to_zero selects the |0> variant.
BuiltGadget build_teleport_gadget(const Granularity& gran, bool to_zero);

// --- Target stabilizer groups for noiseless state checks ------------------

// Full stabilizer group (including logical constraints) of the intended
// output state over the given blocks, lifted to circuit-wide operators.
std::vector<PauliString> code_state_generators(CodeStateKind kind, const std::vector<Block>& blocks,
                                               const BlockCode& block_code, uint32_t n_qubits);
// Linear-cluster generators K_i = X_i prod_{j~i} Z_j over block logicals.
std::vector<PauliString> linear_cluster_generators(const std::vector<Block>& blocks,
                                                   const BlockCode& block_code, uint32_t n_qubits);

}  // namespace clusterft
