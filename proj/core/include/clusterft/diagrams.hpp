#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/gadgets.hpp"

namespace clusterft {

enum class DiagramKind : uint8_t { Hexa, Zero, Plus, PreliminaryModel };

enum class EdgeType : uint8_t { Single, Double };
enum class EdgeUnitary : uint8_t { CZ, CNOT };  // CNOT = basis-dressed CZ toward node b

struct DiagramNode {
    bool is_output = false;
    bool is_box = false;        // measured transversally in X at the end (H rotation)
    bool h_after_input = false; // basis change right after the input encoding
    int position = -1;          // logical position of the produced state (outputs only)
};

struct DiagramEdge {
    EdgeType type;
    EdgeUnitary unitary = EdgeUnitary::CZ;
    uint32_t a = 0;  // control for CNOT edges
    uint32_t b = 0;
};

struct ComponentCounts {
    uint32_t n_single = 0;
    uint32_t n_double = 0;
    uint32_t n_zero = 0;
    uint32_t n_bare = 0;
};

// Graph IR of a fundamental-cluster construction. Edges are stored in
// expansion time order (all single verifications strictly before the
// double verifications; box edges last). Every node enters through one
// input encoding.
struct ReducedDiagram {
    DiagramKind kind;
    bool h_outputs = false;  // trailing transversal H on every output block
    bool relaxed_final_double = false;  // demo diagrams may end on a single edge
    std::vector<DiagramNode> nodes;
    std::vector<DiagramEdge> edges;

    void validate() const;  // throws std::invalid_argument on violations
};

// Canonical diagram for a fundamental-cluster kind.
ReducedDiagram reduced(DiagramKind kind);
DiagramKind diagram_kind_from_name(const std::string& name);
std::string diagram_kind_name(DiagramKind kind);

// Component bookkeeping: single/double verifications, |0> consumption
// (one per node), bare connections n_b = 2(n_single + n_double).
ComponentCounts count_components(const ReducedDiagram& d);

struct ExpandOptions {
    Granularity gran = Granularity::level1();
    bool inline_states = true;
    // false: full one-way wiring (input encodings and bare-CZ hops between
    // successive verifications) matching the component bookkeeping.
    // true: circuit-model realization with persistent blocks, available
    // when deterministic gates exist at the working level; used for the
    // heavy statistics since it avoids the connection overhead.
    bool direct_wiring = false;
    std::string prefix;
};

struct Expansion {
    Circuit circuit;
    ComponentCounts counts;
    std::vector<Block> output_blocks;  // ascending logical position
    uint32_t emitted_oplus = 0;
    uint32_t emitted_hops = 0;
    uint32_t emitted_single = 0;
    uint32_t emitted_double = 0;
};

// Compiles a reduced diagram into a construction circuit: input encodings
// first, verification gadgets in edge order with a bare-CZ hop whenever a
// node re-enters a later verification, box teleports at the end.
Expansion expand(const ReducedDiagram& d, const ExpandOptions& opt);

// Stabilizer generators of the intended noiseless output state of an
// expansion (identity-signed).
std::vector<PauliString> expansion_target_generators(const ReducedDiagram& d, const Expansion& e,
                                                     const Granularity& gran);

}  // namespace clusterft
