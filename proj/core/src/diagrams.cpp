#include "clusterft/diagrams.hpp"

#include <algorithm>
#include <stdexcept>

namespace clusterft {

void ReducedDiagram::validate() const {
    std::vector<int> last_edge(nodes.size(), -1);
    std::vector<int> degree(nodes.size(), 0);
    bool seen_double = false;
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& edge = edges[e];
        if (edge.a >= nodes.size() || edge.b >= nodes.size() || edge.a == edge.b)
            throw std::invalid_argument("diagram edge endpoints invalid");
        if (edge.type == EdgeType::Double) seen_double = true;
        if (edge.type == EdgeType::Single && seen_double)
            throw std::invalid_argument("single verifications must precede double verifications");
        last_edge[edge.a] = static_cast<int>(e);
        last_edge[edge.b] = static_cast<int>(e);
        ++degree[edge.a];
        ++degree[edge.b];
    }
    for (size_t v = 0; v < nodes.size(); ++v) {
        if (last_edge[v] < 0) throw std::invalid_argument("isolated diagram node");
        if (nodes[v].is_box) {
            if (nodes[v].is_output) throw std::invalid_argument("box nodes are measured, not outputs");
            if (edges[last_edge[v]].type != EdgeType::Double)
                throw std::invalid_argument("box teleport channel must be a double verification");
            // The box's teleport partner takes the state; it must have no
            // later engagement.
            const auto& be = edges[last_edge[v]];
            const uint32_t partner = be.a == v ? be.b : be.a;
            if (last_edge[partner] != last_edge[v])
                throw std::invalid_argument("box partner re-enters a later verification");
            if (degree[partner] != 1) throw std::invalid_argument("box partner must be a fresh receiver");
        }
        if (nodes[v].is_output && !relaxed_final_double) {
            if (edges[last_edge[v]].type != EdgeType::Double)
                throw std::invalid_argument("output node not doubly verified in the final stage");
        }
    }
}

ReducedDiagram reduced(DiagramKind kind) {
    ReducedDiagram d;
    d.kind = kind;
    const auto S = EdgeType::Single;
    const auto D = EdgeType::Double;
    const auto CZe = EdgeUnitary::CZ;
    const auto CX = EdgeUnitary::CNOT;
    switch (kind) {
        case DiagramKind::Hexa: {
            d.nodes.resize(6);
            for (int v = 0; v < 6; ++v) {
                d.nodes[v].is_output = true;
                d.nodes[v].position = v;
            }
            d.edges = {{S, CZe, 1, 2}, {S, CZe, 3, 4}, {D, CZe, 0, 1}, {D, CZe, 2, 3}, {D, CZe, 4, 5}};
            break;
        }
        case DiagramKind::Zero:
        case DiagramKind::Plus: {
            // Positions 0..6 carry the encoding circuit; boxed positions
            // hand their state to a fresh receiver through the final double
            // verification (the box measurement supplies the Hadamard
            // rotation of the stored form).
            const bool plus = kind == DiagramKind::Plus;
            const std::vector<uint32_t> boxed = plus ? std::vector<uint32_t>{0, 1, 2}
                                                     : std::vector<uint32_t>{0, 1, 2, 3};
            d.h_outputs = plus;
            d.nodes.resize(7 + boxed.size());
            for (uint32_t p = 0; p < 7; ++p) d.nodes[p].position = p;
            // Encoder inputs: |+> at the check pivots {0,1,3}, |0> elsewhere.
            for (uint32_t p : {2u, 4u, 5u, 6u}) d.nodes[p].h_after_input = true;
            for (size_t i = 0; i < boxed.size(); ++i) {
                const uint32_t box = boxed[i];
                const uint32_t receiver = static_cast<uint32_t>(7 + i);
                d.nodes[box].is_box = true;
                d.nodes[box].position = -1;
                d.nodes[receiver].is_output = true;
                d.nodes[receiver].position = static_cast<int>(box);
            }
            for (uint32_t p = 0; p < 7; ++p)
                if (!d.nodes[p].is_box) d.nodes[p].is_output = true;
            if (!plus) {
                d.edges = {{S, CX, 0, 2}, {S, CX, 0, 4}, {S, CX, 0, 6}, {S, CX, 1, 2},
                           {S, CX, 1, 5}, {S, CX, 1, 6}, {D, CX, 3, 4}, {D, CX, 3, 5},
                           {D, CX, 3, 6}, {D, CZe, 0, 7}, {D, CZe, 1, 8}, {D, CZe, 2, 9},
                           {D, CZe, 3, 10}};
            } else {
                d.edges = {{S, CX, 0, 2}, {S, CX, 0, 4}, {S, CX, 0, 6}, {S, CX, 1, 2},
                           {S, CX, 1, 5}, {D, CX, 1, 6}, {D, CX, 3, 4}, {D, CX, 3, 5},
                           {D, CX, 3, 6}, {D, CZe, 0, 7}, {D, CZe, 1, 8}, {D, CZe, 2, 9}};
            }
            break;
        }
        case DiagramKind::PreliminaryModel: {
            d.nodes.resize(2);
            for (int v = 0; v < 2; ++v) {
                d.nodes[v].is_output = true;
                d.nodes[v].position = v;
            }
            d.edges = {{S, CZe, 0, 1}};
            d.relaxed_final_double = true;
            break;
        }
    }
    d.validate();
    return d;
}

DiagramKind diagram_kind_from_name(const std::string& name) {
    if (name == "hexa" || name == "h") return DiagramKind::Hexa;
    if (name == "zero" || name == "0") return DiagramKind::Zero;
    if (name == "plus" || name == "+") return DiagramKind::Plus;
    if (name == "preliminary" || name == "preliminary_model") return DiagramKind::PreliminaryModel;
    throw std::invalid_argument("unknown diagram kind: " + name);
}

std::string diagram_kind_name(DiagramKind kind) {
    switch (kind) {
        case DiagramKind::Hexa: return "hexa";
        case DiagramKind::Zero: return "zero";
        case DiagramKind::Plus: return "plus";
        case DiagramKind::PreliminaryModel: return "preliminary_model";
    }
    return "?";
}

ComponentCounts count_components(const ReducedDiagram& d) {
    ComponentCounts c;
    for (const auto& e : d.edges) {
        if (e.type == EdgeType::Single)
            ++c.n_single;
        else
            ++c.n_double;
    }
    c.n_zero = static_cast<uint32_t>(d.nodes.size());
    c.n_bare = 2 * (c.n_single + c.n_double);
    return c;
}

Expansion expand(const ReducedDiagram& d, const ExpandOptions& opt) {
    d.validate();
    Expansion out;
    out.counts = count_components(d);

    GadgetBuilder gb(opt.gran, opt.inline_states, opt.prefix);
    std::vector<Block> carrier(d.nodes.size());
    std::vector<int> engagements(d.nodes.size(), 0);

    // Input encodings first (direct wiring starts from verified |+^(l)>
    // blocks instead, the circuit-model bootstrap).
    for (size_t v = 0; v < d.nodes.size(); ++v) {
        if (opt.direct_wiring) {
            carrier[v] = gb.code_state(CodeStateKind::Plus, "n" + std::to_string(v));
        } else {
            carrier[v] = gb.oplus_input("n" + std::to_string(v));
            ++out.emitted_oplus;
        }
    }
    for (size_t v = 0; v < d.nodes.size(); ++v)
        if (d.nodes[v].h_after_input) gb.transversal_h(carrier[v]);

    // Verification gadgets in time order; re-entering nodes hop to a fresh
    // carrier over a bare CZ (persistent blocks under direct wiring).
    for (size_t e = 0; e < d.edges.size(); ++e) {
        const auto& edge = d.edges[e];
        for (uint32_t v : {edge.a, edge.b}) {
            if (engagements[v] > 0 && !opt.direct_wiring) {
                gb.hop(carrier[v], "hop" + std::to_string(v) + "_" + std::to_string(engagements[v]));
                ++out.emitted_hops;
            }
            ++engagements[v];
        }
        const std::string name = "e" + std::to_string(e);
        const bool dress = edge.unitary == EdgeUnitary::CNOT;
        if (edge.type == EdgeType::Single) {
            gb.single_verification(carrier[edge.a], carrier[edge.b], name, dress);
            ++out.emitted_single;
        } else {
            gb.double_verification(carrier[edge.a], carrier[edge.b], name, dress);
            ++out.emitted_double;
        }
    }

    // Box measurements: the final double verification's entanglement is the
    // teleport channel into the receiver.
    for (size_t v = 0; v < d.nodes.size(); ++v) {
        if (!d.nodes[v].is_box) continue;
        int last = -1;
        for (size_t e = 0; e < d.edges.size(); ++e)
            if (d.edges[e].a == v || d.edges[e].b == v) last = static_cast<int>(e);
        const auto& edge = d.edges[last];
        const uint32_t partner = edge.a == v ? edge.b : edge.a;
        gb.teleport_measure(carrier[v], carrier[partner], "box" + std::to_string(v));
        gb.transversal_h(carrier[partner]);
    }

    // Outputs by logical position.
    std::vector<std::pair<int, uint32_t>> ordered;
    for (size_t v = 0; v < d.nodes.size(); ++v)
        if (d.nodes[v].is_output) ordered.emplace_back(d.nodes[v].position, static_cast<uint32_t>(v));
    std::sort(ordered.begin(), ordered.end());
    for (auto [pos, v] : ordered) {
        if (d.h_outputs) gb.transversal_h(carrier[v]);
        gb.circuit().outputs.push_back({"out" + std::to_string(pos), carrier[v]});
        out.output_blocks.push_back(carrier[v]);
    }

    out.circuit = std::move(gb.circuit());
    out.circuit.validate();
    return out;
}

std::vector<PauliString> expansion_target_generators(const ReducedDiagram& d, const Expansion& e,
                                                     const Granularity& gran) {
    switch (d.kind) {
        case DiagramKind::Hexa:
            return linear_cluster_generators(e.output_blocks, *gran.block_code, e.circuit.n_qubits);
        case DiagramKind::PreliminaryModel:
            return linear_cluster_generators(e.output_blocks, *gran.block_code, e.circuit.n_qubits);
        case DiagramKind::Zero:
            return code_state_generators(CodeStateKind::Zero, e.output_blocks, *gran.block_code,
                                         e.circuit.n_qubits);
        case DiagramKind::Plus:
            return code_state_generators(CodeStateKind::Plus, e.output_blocks, *gran.block_code,
                                         e.circuit.n_qubits);
    }
    throw std::logic_error("unreachable");
}

}  // namespace clusterft
