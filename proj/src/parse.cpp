// Copyright 2026 The qcp-dse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcp/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

namespace {

struct Token {
    std::string text;
    size_t column;  // 1-based
};

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

uint64_t parse_uint(const Token& t, size_t line_no, const char* what) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        throw ParseError(fmt::format("expected {} but got '{}'", what, t.text), line_no, t.column);
    }
    return value;
}

uint32_t parse_qubit(const Token& t, size_t line_no) {
    std::string low = lower(t.text);
    if (low.size() < 2 || low[0] != 'q') {
        throw ParseError(fmt::format("expected qubit operand like q3, got '{}'", t.text), line_no, t.column);
    }
    Token rest{low.substr(1), t.column + 1};
    return static_cast<uint32_t>(parse_uint(rest, line_no, "qubit index"));
}

double parse_real(const Token& t, size_t line_no) {
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size()) {
        throw ParseError(fmt::format("expected a real number, got '{}'", t.text), line_no, t.column);
    }
    return v;
}

// `if q<m>@<ts>==<0|1>`; the whole clause arrives as one or more tokens after
// the gate operands, already lowercased by the caller.
ConditionRef parse_condition(const std::string& clause, size_t line_no, size_t column) {
    uint32_t q = 0, ts = 0;
    uint32_t val = 0;
    int consumed = 0;
    if (std::sscanf(clause.c_str(), "q%u@%u==%u%n", &q, &ts, &val, &consumed) != 3 ||
        consumed != static_cast<int>(clause.size()) || val > 1) {
        throw ParseError(fmt::format("malformed condition '{}'", clause), line_no, column);
    }
    ConditionRef c;
    c.measured_qubit = q;
    c.source_timestamp = ts;
    c.expected_value = static_cast<uint8_t>(val);
    return c;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

std::optional<GateType> fixed_kind(const std::string& m) {
    if (m == "x90") return GateType::X90;
    if (m == "y90") return GateType::Y90;
    if (m == "x180") return GateType::X180;
    if (m == "y180") return GateType::Y180;
    if (m == "measure") return GateType::MEASURE;
    if (m == "h") return GateType::H;
    return std::nullopt;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit circuit;
    bool saw_qubits = false;
    std::optional<uint32_t> current_ts;
    std::vector<GateOp> pending;
    size_t pending_moment_line = 0;

    auto flush_moment = [&]() {
        if (current_ts) {
            circuit.moments.emplace_back(*current_ts, std::move(pending));
            pending.clear();
        }
    };

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) continue;
        std::string head = lower(toks[0].text);

        if (head == "qubits") {
            if (saw_qubits) throw ParseError("duplicate 'qubits' line", line_no, toks[0].column);
            if (toks.size() != 2) throw ParseError("usage: qubits <n>", line_no, toks[0].column);
            uint64_t n = parse_uint(toks[1], line_no, "qubit count");
            if (n == 0) throw ParseError("qubit count must be positive", line_no, toks[1].column);
            circuit.num_qubits = static_cast<uint32_t>(n);
            saw_qubits = true;
            continue;
        }
        if (!saw_qubits) {
            throw ParseError("circuit must start with 'qubits <n>'", line_no, toks[0].column);
        }
        if (head == "ts") {
            if (toks.size() != 2) throw ParseError("usage: ts <k>", line_no, toks[0].column);
            flush_moment();
            current_ts = static_cast<uint32_t>(parse_uint(toks[1], line_no, "time stamp"));
            pending_moment_line = line_no;
            continue;
        }
        if (!current_ts) {
            throw ParseError("gate line before any 'ts' header", line_no, toks[0].column);
        }

        // Split off a trailing condition clause: ... if q<m>@<ts>==<b>
        std::optional<ConditionRef> cond;
        size_t arg_end = toks.size();
        for (size_t i = 1; i < toks.size(); ++i) {
            if (lower(toks[i].text) == "if") {
                if (i + 1 != toks.size() - 1) {
                    throw ParseError("condition must be the final clause", line_no, toks[i].column);
                }
                cond = parse_condition(lower(toks[i + 1].text), line_no, toks[i + 1].column);
                arg_end = i;
                break;
            }
        }

        GateOp op;
        size_t nargs = arg_end - 1;
        if (head == "rz" || head == "cphase") {
            op.type = head == "rz" ? GateType::RZ : GateType::CPHASE;
            size_t nq = head == "rz" ? 1 : 2;
            if (nargs != nq + 1) {
                throw ParseError(fmt::format("usage: {} q<i>{} <angle>", head, nq == 2 ? " q<j>" : ""), line_no,
                                 toks[0].column);
            }
            for (size_t i = 0; i < nq; ++i) op.qubits.push_back(parse_qubit(toks[1 + i], line_no));
            op.angle = parse_real(toks[1 + nq], line_no);
        } else if (head == "cnot") {
            op.type = GateType::CNOT;
            if (nargs != 2) throw ParseError("usage: cnot q<control> q<target>", line_no, toks[0].column);
            op.qubits.push_back(parse_qubit(toks[1], line_no));
            op.qubits.push_back(parse_qubit(toks[2], line_no));
        } else if (auto fixed = fixed_kind(head)) {
            op.type = *fixed;
            if (nargs != 1) throw ParseError(fmt::format("usage: {} q<i>", head), line_no, toks[0].column);
            op.qubits.push_back(parse_qubit(toks[1], line_no));
        } else if (is_identifier(head)) {
            op.type = GateType::CUSTOM;
            op.custom = head;
            if (nargs != 1) throw ParseError(fmt::format("usage: {} q<i>", head), line_no, toks[0].column);
            op.qubits.push_back(parse_qubit(toks[1], line_no));
        } else {
            throw ParseError(fmt::format("unknown gate line '{}'", toks[0].text), line_no, toks[0].column);
        }
        op.cond = cond;
        pending.push_back(std::move(op));
    }
    flush_moment();
    (void)pending_moment_line;
    circuit.validate();
    return circuit;
}

std::string format_circuit(const Circuit& c) {
    std::string out = fmt::format("qubits {}\n", c.num_qubits);
    for (const Moment& m : c.moments) {
        out += fmt::format("ts {}\n", m.timestamp);
        for (const GateOp& op : m.ops) {
            std::string line = op.type == GateType::CUSTOM ? op.custom : mnemonic(op.type);
            for (uint32_t q : op.qubits) line += fmt::format(" q{}", q);
            if (op.angle) line += fmt::format(" {:.17g}", *op.angle);
            if (op.cond) {
                line += fmt::format(" if q{}@{}=={}", op.cond->measured_qubit, op.cond->source_timestamp,
                                    op.cond->expected_value);
            }
            out += line;
            out += '\n';
        }
    }
    return out;
}

}  // namespace qcp
