#include "clusterft/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace clusterft {

std::vector<uint32_t> Circuit::add_qubits(size_t count) {
    std::vector<uint32_t> out(count);
    for (auto& q : out) q = add_qubit();
    return out;
}

uint32_t Circuit::check_id(const std::string& name) {
    for (uint32_t i = 0; i < check_names.size(); ++i)
        if (check_names[i] == name) return i;
    check_names.push_back(name);
    return static_cast<uint32_t>(check_names.size() - 1);
}

uint32_t Circuit::out_id(const std::string& name) {
    for (uint32_t i = 0; i < out_names.size(); ++i)
        if (out_names[i] == name) return i;
    out_names.push_back(name);
    return static_cast<uint32_t>(out_names.size() - 1);
}

int32_t Circuit::find_check(const std::string& name) const {
    for (uint32_t i = 0; i < check_names.size(); ++i)
        if (check_names[i] == name) return static_cast<int32_t>(i);
    return -1;
}

int32_t Circuit::find_out(const std::string& name) const {
    for (uint32_t i = 0; i < out_names.size(); ++i)
        if (out_names[i] == name) return static_cast<int32_t>(i);
    return -1;
}

void Circuit::measure(uint32_t q, MeasBasis basis, const std::vector<std::string>& check_tags,
                      const std::string& out_tag) {
    Op op{OpKind::Measure, basis, q};
    op.tag_begin = static_cast<uint32_t>(tag_pool.size());
    for (const auto& t : check_tags) tag_pool.push_back(check_id(t));
    op.tag_end = static_cast<uint32_t>(tag_pool.size());
    if (!out_tag.empty()) op.out_tag = static_cast<int32_t>(out_id(out_tag));
    push(op);
}

void Circuit::decode(const BlockCode& code, std::vector<uint32_t> sources, std::vector<uint32_t> targets,
                     const std::vector<std::string>& check_tags, const std::string& out_tag) {
    if (sources.size() != code.n()) throw std::invalid_argument("decode: source count must match code size");
    if (!targets.empty() && targets.size() != code.n())
        throw std::invalid_argument("decode: target count must match code size");
    Op op{OpKind::Decode, MeasBasis::Z};
    op.tag_begin = static_cast<uint32_t>(tag_pool.size());
    for (const auto& t : check_tags) tag_pool.push_back(check_id(t));
    op.tag_end = static_cast<uint32_t>(tag_pool.size());
    if (!out_tag.empty()) op.out_tag = static_cast<int32_t>(out_id(out_tag));
    op.group = static_cast<int32_t>(decode_groups.size());
    decode_groups.push_back(DecodeGroup{&code, std::move(sources), std::move(targets)});
    push(op);
}

size_t Circuit::num_two_qubit_gates() const {
    size_t count = 0;
    for (const auto& op : ops)
        if (op.kind == OpKind::CNOT || op.kind == OpKind::CZ) ++count;
    return count;
}

size_t Circuit::count_kind(OpKind kind) const {
    size_t count = 0;
    for (const auto& op : ops)
        if (op.kind == kind) ++count;
    return count;
}

void Circuit::validate() const {
    enum class QState : uint8_t { Unborn, Alive, Measured };
    std::vector<QState> state(n_qubits, QState::Unborn);
    for (const auto& blk : inputs)
        for (uint32_t q : blk.qubits) {
            if (q >= n_qubits) throw std::invalid_argument("input block qubit out of range");
            state[q] = QState::Alive;
        }
    auto need_alive = [&](uint32_t q) {
        if (q >= n_qubits) throw std::invalid_argument("qubit index out of range");
        if (state[q] == QState::Unborn) throw std::invalid_argument("qubit used before preparation");
        if (state[q] == QState::Measured) throw std::invalid_argument("qubit used after measurement");
    };
    for (const auto& op : ops) {
        switch (op.kind) {
            case OpKind::PrepZero:
            case OpKind::PrepPlus:
                if (op.a >= n_qubits) throw std::invalid_argument("qubit index out of range");
                if (state[op.a] != QState::Unborn) throw std::invalid_argument("qubit prepared twice");
                state[op.a] = QState::Alive;
                break;
            case OpKind::H:
            case OpKind::S: need_alive(op.a); break;
            case OpKind::CNOT:
            case OpKind::CZ:
                need_alive(op.a);
                need_alive(op.b);
                if (op.a == op.b) throw std::invalid_argument("two-qubit gate on a single qubit");
                break;
            case OpKind::Measure:
                need_alive(op.a);
                state[op.a] = QState::Measured;
                break;
            case OpKind::Frame:
                if (state[op.a] != QState::Measured) throw std::invalid_argument("frame source not measured");
                need_alive(op.b);
                break;
            case OpKind::Decode: {
                const auto& g = decode_groups[op.group];
                for (uint32_t q : g.sources)
                    if (state[q] != QState::Measured) throw std::invalid_argument("decode source not measured");
                for (uint32_t q : g.targets) need_alive(q);
                break;
            }
        }
    }
    for (const auto& blk : outputs)
        for (uint32_t q : blk.qubits)
            if (state[q] != QState::Alive) throw std::invalid_argument("output block qubit not alive at end");
}

namespace {

void emit_tags(std::ostringstream& os, const Circuit& c, const Op& op) {
    bool any = false;
    std::string buf;
    for (uint32_t i = op.tag_begin; i < op.tag_end; ++i) {
        if (any) buf += ',';
        buf += "chk:" + c.check_names[c.tag_pool[i]];
        any = true;
    }
    if (op.out_tag >= 0) {
        if (any) buf += ',';
        buf += "out:" + c.out_names[op.out_tag];
        any = true;
    }
    if (any) os << ' ' << buf;
}

}  // namespace

std::string Circuit::to_text() const {
    std::ostringstream os;
    os << "# clusterft circuit v1\n";
    os << "QUBITS " << n_qubits << "\n";
    for (const auto& blk : inputs) {
        os << "INPUT " << blk.name;
        for (uint32_t q : blk.qubits) os << ' ' << q;
        os << "\n";
    }
    for (const auto& blk : outputs) {
        os << "OUTPUT " << blk.name;
        for (uint32_t q : blk.qubits) os << ' ' << q;
        os << "\n";
    }
    for (const auto& op : ops) {
        switch (op.kind) {
            case OpKind::PrepZero: os << "PREPZ " << op.a; break;
            case OpKind::PrepPlus: os << "PREPP " << op.a; break;
            case OpKind::H: os << "H " << op.a; break;
            case OpKind::S: os << "S " << op.a; break;
            case OpKind::CNOT: os << "CNOT " << op.a << ' ' << op.b; break;
            case OpKind::CZ: os << "CZ " << op.a << ' ' << op.b; break;
            case OpKind::Measure:
                os << "MEASURE " << op.a << ' ' << basis_char(op.basis);
                emit_tags(os, *this, op);
                break;
            case OpKind::Frame: os << "FRAME " << op.a << ' ' << op.b; break;
            case OpKind::Decode: {
                const auto& g = decode_groups[op.group];
                os << "DECODE";
                for (uint32_t q : g.sources) os << ' ' << q;
                if (!g.targets.empty()) {
                    os << " >";
                    for (uint32_t q : g.targets) os << ' ' << q;
                }
                emit_tags(os, *this, op);
                break;
            }
        }
        os << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

void parse_tags(Circuit& c, Op& op, const std::string& tok) {
    size_t pos = 0;
    op.tag_begin = static_cast<uint32_t>(c.tag_pool.size());
    std::vector<std::string> outs;
    while (pos < tok.size()) {
        size_t comma = tok.find(',', pos);
        if (comma == std::string::npos) comma = tok.size();
        std::string item = tok.substr(pos, comma - pos);
        if (item.rfind("chk:", 0) == 0)
            c.tag_pool.push_back(c.check_id(item.substr(4)));
        else if (item.rfind("out:", 0) == 0)
            op.out_tag = static_cast<int32_t>(c.out_id(item.substr(4)));
        else
            throw std::invalid_argument("bad tag token: " + item);
        pos = comma + 1;
    }
    op.tag_end = static_cast<uint32_t>(c.tag_pool.size());
}

}  // namespace

Circuit Circuit::from_text(const std::string& text) {
    Circuit c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tok = split_ws(line);
        const std::string& name = tok[0];
        auto qarg = [&](size_t i) { return static_cast<uint32_t>(std::stoul(tok.at(i))); };
        if (name == "QUBITS") {
            c.n_qubits = qarg(1);
        } else if (name == "INPUT" || name == "OUTPUT") {
            BlockRef blk;
            blk.name = tok.at(1);
            for (size_t i = 2; i < tok.size(); ++i) blk.qubits.push_back(qarg(i));
            (name == "INPUT" ? c.inputs : c.outputs).push_back(std::move(blk));
        } else if (name == "PREPZ") {
            c.prep_zero(qarg(1));
        } else if (name == "PREPP") {
            c.prep_plus(qarg(1));
        } else if (name == "H") {
            c.h(qarg(1));
        } else if (name == "S") {
            c.s(qarg(1));
        } else if (name == "CNOT") {
            c.cnot(qarg(1), qarg(2));
        } else if (name == "CZ") {
            c.cz(qarg(1), qarg(2));
        } else if (name == "MEASURE") {
            Op op{OpKind::Measure, MeasBasis::Z, qarg(1)};
            const std::string& b = tok.at(2);
            op.basis = b == "X" ? MeasBasis::X : (b == "Y" ? MeasBasis::Y : MeasBasis::Z);
            if (tok.size() > 3) parse_tags(c, op, tok[3]);
            c.ops.push_back(op);
        } else if (name == "FRAME") {
            c.frame(qarg(1), qarg(2));
        } else if (name == "DECODE") {
            Op op{OpKind::Decode, MeasBasis::Z};
            DecodeGroup g;
            size_t i = 1;
            while (i < tok.size() && tok[i] != ">" && (std::isdigit(tok[i][0]) != 0)) g.sources.push_back(qarg(i++));
            if (i < tok.size() && tok[i] == ">") {
                ++i;
                while (i < tok.size() && std::isdigit(tok[i][0]) != 0) g.targets.push_back(qarg(i++));
            }
            if (i < tok.size()) parse_tags(c, op, tok[i]);
            g.code = g.sources.size() == 1 ? &BlockCode::unit() : &BlockCode::steane();
            op.group = static_cast<int32_t>(c.decode_groups.size());
            c.decode_groups.push_back(std::move(g));
            c.ops.push_back(op);
        } else {
            throw std::invalid_argument("unknown circuit line: " + line);
        }
    }
    return c;
}

void append_circuit(Circuit& head, const Circuit& tail, uint32_t qubit_offset) {
    const uint32_t needed = qubit_offset + tail.n_qubits;
    if (head.n_qubits < needed) head.n_qubits = needed;
    for (const auto& blk : tail.inputs) {
        BlockRef copy = blk;
        for (auto& q : copy.qubits) q += qubit_offset;
        head.inputs.push_back(std::move(copy));
    }
    for (const auto& blk : tail.outputs) {
        BlockRef copy = blk;
        for (auto& q : copy.qubits) q += qubit_offset;
        head.outputs.push_back(std::move(copy));
    }
    for (const auto& op : tail.ops) {
        Op copy = op;
        copy.a += qubit_offset;
        if (copy.kind == OpKind::CNOT || copy.kind == OpKind::CZ || copy.kind == OpKind::Frame)
            copy.b += qubit_offset;
        copy.tag_begin = copy.tag_end = 0;
        if (op.tag_end > op.tag_begin) {
            copy.tag_begin = static_cast<uint32_t>(head.tag_pool.size());
            for (uint32_t i = op.tag_begin; i < op.tag_end; ++i)
                head.tag_pool.push_back(head.check_id(tail.check_names[tail.tag_pool[i]]));
            copy.tag_end = static_cast<uint32_t>(head.tag_pool.size());
        }
        if (op.out_tag >= 0) copy.out_tag = static_cast<int32_t>(head.out_id(tail.out_names[op.out_tag]));
        if (op.kind == OpKind::Decode) {
            DecodeGroup g = tail.decode_groups[op.group];
            for (auto& q : g.sources) q += qubit_offset;
            for (auto& q : g.targets) q += qubit_offset;
            copy.group = static_cast<int32_t>(head.decode_groups.size());
            head.decode_groups.push_back(std::move(g));
        }
        head.ops.push_back(copy);
    }
}

}  // namespace clusterft
