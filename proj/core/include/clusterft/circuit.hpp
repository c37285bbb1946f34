#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "clusterft/code.hpp"
#include "clusterft/pauli.hpp"

namespace clusterft {

enum class OpKind : uint8_t {
    PrepZero,  // fresh |0>
    PrepPlus,  // fresh |+>
    H,
    S,
    CNOT,  // a = control, b = target
    CZ,
    Measure,  // destructive single-qubit measurement
    Frame,    // classical: record teleport byproduct of measured a onto b
    Decode,   // classical: Hamming-decode a block measurement (decode_groups[group])
};

enum class MeasBasis : uint8_t { X = 0, Y = 1, Z = 2 };

inline char basis_char(MeasBasis b) { return b == MeasBasis::X ? 'X' : (b == MeasBasis::Y ? 'Y' : 'Z'); }

struct Op {
    OpKind kind;
    MeasBasis basis = MeasBasis::Z;
    uint32_t a = 0;
    uint32_t b = 0;
    uint32_t tag_begin = 0;  // slice of Circuit::tag_pool with check-tag ids
    uint32_t tag_end = 0;
    int32_t out_tag = -1;
    int32_t group = -1;  // Decode only
};

// One Hamming-decoded transversal block measurement. The sources must all
// be measured in the same basis before the Decode op runs. When targets
// are present the decoded outcome drives a logical teleport byproduct on
// them.
struct DecodeGroup {
    const BlockCode* code = nullptr;
    std::vector<uint32_t> sources;
    std::vector<uint32_t> targets;  // empty for pure syndrome measurements
};

struct BlockRef {
    std::string name;
    std::vector<uint32_t> qubits;
};

// Ordered list of preparation/gate/measurement/classical operations on
// indexed qubits. Input blocks are qubits whose preparation happens
// outside this circuit (residual errors get injected by the caller);
// output blocks are the surviving qubits of interest.
class Circuit {
  public:
    uint32_t n_qubits = 0;
    std::vector<Op> ops;
    std::vector<uint32_t> tag_pool;
    std::vector<std::string> check_names;
    std::vector<std::string> out_names;
    std::vector<DecodeGroup> decode_groups;
    std::vector<BlockRef> inputs;
    std::vector<BlockRef> outputs;

    uint32_t add_qubit() { return n_qubits++; }
    std::vector<uint32_t> add_qubits(size_t count);

    void prep_zero(uint32_t q) { push({OpKind::PrepZero, MeasBasis::Z, q}); }
    void prep_plus(uint32_t q) { push({OpKind::PrepPlus, MeasBasis::Z, q}); }
    void h(uint32_t q) { push({OpKind::H, MeasBasis::Z, q}); }
    void s(uint32_t q) { push({OpKind::S, MeasBasis::Z, q}); }
    void cnot(uint32_t c, uint32_t t) { push({OpKind::CNOT, MeasBasis::Z, c, t}); }
    void cz(uint32_t a, uint32_t b) { push({OpKind::CZ, MeasBasis::Z, a, b}); }

    // check_tags name parity checks; a measurement may feed several.
    void measure(uint32_t q, MeasBasis basis, const std::vector<std::string>& check_tags = {},
                 const std::string& out_tag = {});
    void frame(uint32_t measured_src, uint32_t dst) { push({OpKind::Frame, MeasBasis::Z, measured_src, dst}); }
    void decode(const BlockCode& code, std::vector<uint32_t> sources, std::vector<uint32_t> targets,
                const std::vector<std::string>& check_tags = {}, const std::string& out_tag = {});

    uint32_t check_id(const std::string& name);
    uint32_t out_id(const std::string& name);
    int32_t find_check(const std::string& name) const;
    int32_t find_out(const std::string& name) const;

    size_t num_two_qubit_gates() const;
    size_t count_kind(OpKind kind) const;

    // Enforces: every qubit is prepared (or declared as input) before first
    // use, never touched after measurement, and classical ops reference
    // only measured sources. Throws std::invalid_argument on violation.
    void validate() const;

    // Line-oriented text format, one op per line. Deterministic byte-exact
    // emission.
    std::string to_text() const;
    static Circuit from_text(const std::string& text);

  private:
    void push(Op op) { ops.push_back(op); }
};

// Sequential composition: appends `tail` (qubit indices offset by
// `qubit_offset`) to `head`. Tag names are imported verbatim.
void append_circuit(Circuit& head, const Circuit& tail, uint32_t qubit_offset);

}  // namespace clusterft
