// Copyright (c) 2026 the twocoin authors
// SPDX-License-Identifier: Apache-2.0

#include "twocoin/qasm.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace twocoin {

namespace {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) return std::to_string(x);
    return std::string(buf, ptr);
}

void append_span_comment(std::ostringstream& out, const char* name,
                         const RegisterSpan& span) {
    if (span.size <= 0) return;
    out << " " << name << "=q[" << span.offset;
    if (span.size > 1) out << ".." << span.offset + span.size - 1;
    out << "]";
}

// --- tiny expression parser for gate angles -------------------------------

struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    int line;

    ExprParser(const std::string& text, int line_) : s(text), line(line_) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    double parse() {
        double v = expr();
        skip_ws();
        if (pos != s.size()) throw QasmParseError(line, "trailing characters in expression");
        return v;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                const double d = factor();
                if (d == 0.0) throw QasmParseError(line, "division by zero in expression");
                v /= d;
            } else {
                return v;
            }
        }
    }
    double factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) throw QasmParseError(line, "missing ')' in expression");
            return v;
        }
        if (s.compare(pos, 2, "pi") == 0) {
            pos += 2;
            return std::numbers::pi;
        }
        const char* begin = s.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw QasmParseError(line, "expected a number or pi");
        pos += static_cast<size_t>(end - begin);
        return v;
    }
};

struct Statement {
    std::string name;
    std::vector<double> params;
    std::vector<int> qubits;
};

// q[NUM] with a known register name
int parse_qubit_ref(const std::string& tok, const std::string& reg, int line) {
    std::string t = tok;
    auto strip = [&t]() {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    };
    strip();
    if (t.compare(0, reg.size(), reg) != 0 || t.size() < reg.size() + 3 ||
        t[reg.size()] != '[' || t.back() != ']') {
        throw QasmParseError(line, "expected a qubit reference like " + reg + "[k]");
    }
    const std::string num = t.substr(reg.size() + 1, t.size() - reg.size() - 2);
    int v = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || p != num.data() + num.size()) {
        throw QasmParseError(line, "bad qubit index '" + num + "'");
    }
    return v;
}

}  // namespace

std::string export_gatelist(const Circuit& circuit,
                            const std::vector<int>& measure_qubits) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (circuit.position.size + circuit.coin1.size + circuit.coin2.size +
            circuit.ancilla.size > 0) {
        out << "// registers:";
        append_span_comment(out, "position", circuit.position);
        append_span_comment(out, "coin1", circuit.coin1);
        append_span_comment(out, "coin2", circuit.coin2);
        append_span_comment(out, "ancilla", circuit.ancilla);
        out << "\n";
    }
    out << "qreg q[" << circuit.qubit_count << "];\n";
    if (!measure_qubits.empty()) {
        out << "creg c[" << measure_qubits.size() << "];\n";
    }
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::X: out << "x q[" << g.q0 << "];\n"; break;
            case GateKind::H: out << "h q[" << g.q0 << "];\n"; break;
            case GateKind::S: out << "s q[" << g.q0 << "];\n"; break;
            case GateKind::Sdg: out << "sdg q[" << g.q0 << "];\n"; break;
            case GateKind::U3:
                out << "u3(" << format_double(g.theta) << "," << format_double(g.phi)
                    << "," << format_double(g.lambda) << ") q[" << g.q0 << "];\n";
                break;
            case GateKind::CNOT:
                out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
                break;
            case GateKind::Toffoli:
                out << "ccx q[" << g.q0 << "],q[" << g.q1 << "],q[" << g.q2 << "];\n";
                break;
        }
    }
    for (size_t i = 0; i < measure_qubits.size(); ++i) {
        out << "measure q[" << measure_qubits[i] << "] -> c[" << i << "];\n";
    }
    return out.str();
}

Circuit parse_gatelist(const std::string& text) {
    Circuit circuit;
    bool saw_header = false, saw_qreg = false;
    std::string qreg_name = "q";

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        // strip comments and whitespace
        if (const auto c = raw.find("//"); c != std::string::npos) raw.erase(c);
        size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = raw.find_last_not_of(" \t\r");
        std::string stmt = raw.substr(b, e - b + 1);
        if (stmt.empty()) continue;
        if (stmt.back() != ';') throw QasmParseError(line_no, "missing ';'");
        stmt.pop_back();

        if (stmt.rfind("OPENQASM", 0) == 0) {
            if (stmt.find("2.0") == std::string::npos) {
                throw QasmParseError(line_no, "only OPENQASM 2.0 is supported");
            }
            saw_header = true;
            continue;
        }
        if (stmt.rfind("include", 0) == 0) continue;
        if (stmt.rfind("creg", 0) == 0) continue;
        if (stmt.rfind("measure", 0) == 0) continue;  // accepted, dropped
        if (stmt.rfind("barrier", 0) == 0) continue;
        if (stmt.rfind("qreg", 0) == 0) {
            size_t br = stmt.find('[');
            size_t br2 = stmt.find(']');
            if (br == std::string::npos || br2 == std::string::npos || br2 < br) {
                throw QasmParseError(line_no, "malformed qreg declaration");
            }
            std::string name = stmt.substr(4, br - 4);
            name.erase(0, name.find_first_not_of(" \t"));
            name.erase(name.find_last_not_of(" \t") + 1);
            qreg_name = name;
            circuit.qubit_count = std::atoi(stmt.substr(br + 1, br2 - br - 1).c_str());
            if (circuit.qubit_count <= 0) {
                throw QasmParseError(line_no, "qreg size must be positive");
            }
            saw_qreg = true;
            continue;
        }

        if (!saw_header) throw QasmParseError(line_no, "missing OPENQASM 2.0 header");
        if (!saw_qreg) throw QasmParseError(line_no, "gate before qreg declaration");

        // gate statement: name[(params)] operands
        Statement st;
        size_t i = 0;
        while (i < stmt.size() && (std::isalnum(static_cast<unsigned char>(stmt[i])) ||
                                   stmt[i] == '_')) {
            st.name += stmt[i++];
        }
        if (st.name.empty()) throw QasmParseError(line_no, "expected a gate name");
        if (i < stmt.size() && stmt[i] == '(') {
            size_t close = std::string::npos;
            int nesting = 0;
            for (size_t k = i; k < stmt.size(); ++k) {
                if (stmt[k] == '(') ++nesting;
                if (stmt[k] == ')' && --nesting == 0) {
                    close = k;
                    break;
                }
            }
            if (close == std::string::npos) throw QasmParseError(line_no, "missing ')'");
            std::string params = stmt.substr(i + 1, close - i - 1);
            size_t start = 0;
            int depth = 0;
            for (size_t k = 0; k <= params.size(); ++k) {
                if (k < params.size() && params[k] == '(') ++depth;
                if (k < params.size() && params[k] == ')') --depth;
                if (k == params.size() || (params[k] == ',' && depth == 0)) {
                    st.params.push_back(
                        ExprParser(params.substr(start, k - start), line_no).parse());
                    start = k + 1;
                }
            }
            i = close + 1;
        }
        std::string operands = stmt.substr(i);
        size_t start = 0;
        for (size_t k = 0; k <= operands.size(); ++k) {
            if (k == operands.size() || operands[k] == ',') {
                const std::string tok = operands.substr(start, k - start);
                if (tok.find_first_not_of(" \t") != std::string::npos) {
                    st.qubits.push_back(parse_qubit_ref(tok, qreg_name, line_no));
                }
                start = k + 1;
            }
        }

        auto need = [&](size_t nq, size_t np) {
            if (st.qubits.size() != nq) {
                throw QasmParseError(line_no, st.name + " expects " + std::to_string(nq) +
                                                  " qubit operand(s)");
            }
            if (st.params.size() != np) {
                throw QasmParseError(line_no, st.name + " expects " + std::to_string(np) +
                                                  " parameter(s)");
            }
        };
        try {
            if (st.name == "x") { need(1, 0); circuit.append(Gate::x(st.qubits[0])); }
            else if (st.name == "h") { need(1, 0); circuit.append(Gate::h(st.qubits[0])); }
            else if (st.name == "s") { need(1, 0); circuit.append(Gate::s(st.qubits[0])); }
            else if (st.name == "sdg") { need(1, 0); circuit.append(Gate::sdg(st.qubits[0])); }
            else if (st.name == "u3") {
                need(1, 3);
                circuit.append(Gate::u3(st.qubits[0], st.params[0], st.params[1], st.params[2]));
            } else if (st.name == "cx") {
                need(2, 0);
                circuit.append(Gate::cnot(st.qubits[0], st.qubits[1]));
            } else if (st.name == "ccx") {
                need(3, 0);
                circuit.append(Gate::toffoli(st.qubits[0], st.qubits[1], st.qubits[2]));
            } else {
                throw QasmParseError(line_no, "unsupported gate '" + st.name + "'");
            }
        } catch (const std::invalid_argument& err) {
            throw QasmParseError(line_no, err.what());
        }
    }
    if (!saw_header) throw QasmParseError(1, "missing OPENQASM 2.0 header");
    if (!saw_qreg) throw QasmParseError(1, "missing qreg declaration");
    return circuit;
}

}  // namespace twocoin
