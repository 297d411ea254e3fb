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

#include "qcp/encode.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "qcp/error.hpp"

namespace qcp {

uint64_t Isa::max_qubits() const {
    switch (kind) {
        case IsaKind::Rv32Mmio:
            return 1ull << 32;  // index addressing; the mask strategy caps at 32
        case IsaKind::Eqasm:
            return 1ull << 32;  // sections scale; the design target is 7
        case IsaKind::Quasar:
            return 512;
        case IsaKind::Qv:
            // Qubits enumerate from 1 so a zero index can act as a nop slot.
            return ves >= 32 ? (1ull << 32) - 1 : (1ull << ves) - 1;
    }
    return 0;
}

const char* isa_name(IsaKind k) {
    switch (k) {
        case IsaKind::Rv32Mmio: return "rv32";
        case IsaKind::Eqasm: return "eqasm";
        case IsaKind::Quasar: return "quasar";
        case IsaKind::Qv: return "qv";
    }
    return "?";
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::ImmediateOnly: return "immediate";
        case Strategy::MaskOnly: return "mask";
        case Strategy::Hybrid: return "hybrid";
    }
    return "?";
}

bool same_instruction(const Instruction& a, const Instruction& b) {
    return a.mnemonic == b.mnemonic && a.args == b.args;
}

size_t InstructionStream::total_words() const {
    size_t n = 0;
    for (const Instruction& i : instructions) n += i.words;
    return n;
}

namespace {

std::string gate_tuple(uint32_t ts, const KindKey& kind, const std::vector<uint32_t>& qubits) {
    std::string q;
    for (uint32_t x : qubits) q += fmt::format(":{}", x);
    return fmt::format("{}|{}{}", ts, kind_label(kind), q);
}

}  // namespace

std::vector<std::string> InstructionStream::covered_gate_multiset() const {
    std::vector<std::string> out;
    for (const Instruction& inst : instructions) {
        for (const CoveredGate& g : inst.covers) out.push_back(gate_tuple(inst.timestamp, g.kind, g.qubits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> circuit_gate_multiset(const Circuit& c, bool angle_sensitive) {
    std::vector<std::string> out;
    for (const Moment& m : c.moments) {
        for (const GateOp& op : m.ops) out.push_back(gate_tuple(m.timestamp, kind_key(op, angle_sensitive), op.qubits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string InstructionStream::to_asm() const {
    std::string out;
    for (const Instruction& inst : instructions) {
        std::string line = inst.text.empty() ? inst.mnemonic : inst.text;
        out += fmt::format("{:<40} # ts={}\n", line, inst.timestamp);
    }
    return out;
}

InstructionStream encode(const Circuit& c, const Isa& isa, const CostModelConfig& cfg, Strategy strategy) {
    c.validate();
    for (const Moment& m : c.moments) {
        for (const GateOp& op : m.ops) {
            if (!is_native(op.type)) {
                throw EncodeError(fmt::format("encode: logical kind '{}' at ts {}; run decompose_to_native first",
                                              mnemonic(op.type), m.timestamp));
            }
            if (op.cond) {
                throw EncodeError(fmt::format("encode: conditional gate at ts {}; use the feedback encoder",
                                              m.timestamp));
            }
        }
    }
    if (c.num_qubits > isa.max_qubits()) {
        throw EncodeError(fmt::format("encode: {} qubits exceed the {} limit of {}", c.num_qubits,
                                      isa_name(isa.kind), isa.max_qubits()));
    }
    switch (isa.kind) {
        case IsaKind::Rv32Mmio:
            return encode_rv32(c, cfg, strategy);
        case IsaKind::Eqasm:
            if (strategy != Strategy::Hybrid) {
                throw EncodeError("encode: eqasm supports only the hybrid strategy");
            }
            return encode_eqasm(c, cfg, strategy);
        case IsaKind::Quasar:
            return encode_quasar(c, cfg, strategy);
        case IsaKind::Qv:
            if (strategy != Strategy::Hybrid) {
                throw EncodeError(fmt::format("encode: {} strategy is unsupported on qv", strategy_name(strategy)));
            }
            return encode_qv(c, isa, cfg, strategy);
    }
    throw EncodeError("encode: unknown isa");
}

uint64_t eqasm_coupling_bits(uint32_t n) {
    if (n < 2) throw EncodeError("eqasm_coupling_bits: need at least 2 qubits");
    return static_cast<uint64_t>(n) * (n - 1);
}

uint64_t eqasm_coupling_instructions(uint32_t n, const CostModelConfig& cfg) {
    uint64_t bits = eqasm_coupling_bits(n);
    return (bits + cfg.eqasm_coupling_mask_bits - 1) / cfg.eqasm_coupling_mask_bits;
}

EncodingReport encoding_report(const Circuit& c, const std::vector<Isa>& isas, const CostModelConfig& cfg,
                               Strategy strategy) {
    EncodingReport report;
    report.num_qubits = c.num_qubits;
    for (const Isa& isa : isas) {
        InstructionStream s = encode(c, isa, cfg, strategy);
        IsaReport r;
        r.isa = isa;
        r.strategy = s.strategy;
        r.moments = s.moments;
        r.instruction_words = s.total_words();
        r.instruction_bytes = r.instruction_words * 4;
        r.data_words = s.data_words;
        r.data_bytes = r.data_words * 4;
        if (isa.kind == IsaKind::Qv) {
            // The packed figure charges vectors at their element width
            // instead of word-aligning each one.
            r.data_bytes_packed = (static_cast<uint64_t>(s.data_words) * 4 * isa.ves) / 32;
        }
        r.registers_used.assign(s.registers_used.begin(), s.registers_used.end());
        report.per_isa.push_back(std::move(r));
    }
    return report;
}

std::string encoding_report_csv(const EncodingReport& r) {
    std::string out = "isa,strategy,ts,words,data_words\n";
    for (const IsaReport& ir : r.per_isa) {
        for (const MomentCost& m : ir.moments) {
            out += fmt::format("{},{},{},{},{}\n", isa_name(ir.isa.kind), strategy_name(ir.strategy), m.timestamp,
                               m.words, m.data_words);
        }
    }
    out += "isa,strategy,total_words,total_bytes,data_words,data_bytes\n";
    for (const IsaReport& ir : r.per_isa) {
        out += fmt::format("{},{},{},{},{},{}\n", isa_name(ir.isa.kind), strategy_name(ir.strategy),
                           ir.instruction_words, ir.instruction_bytes, ir.data_words, ir.data_bytes);
    }
    return out;
}

std::string encoding_report_json(const EncodingReport& r) {
    nlohmann::json doc;
    doc["qubits"] = r.num_qubits;
    doc["isas"] = nlohmann::json::array();
    for (const IsaReport& ir : r.per_isa) {
        nlohmann::json j;
        j["isa"] = isa_name(ir.isa.kind);
        if (ir.isa.kind == IsaKind::Qv) j["ves"] = ir.isa.ves;
        j["strategy"] = strategy_name(ir.strategy);
        j["instruction_words"] = ir.instruction_words;
        j["instruction_bytes"] = ir.instruction_bytes;
        j["data_words"] = ir.data_words;
        j["data_bytes"] = ir.data_bytes;
        j["registers"] = ir.registers_used;
        j["moments"] = nlohmann::json::array();
        for (const MomentCost& m : ir.moments) {
            j["moments"].push_back({{"ts", m.timestamp}, {"words", m.words}, {"data_words", m.data_words}});
        }
        doc["isas"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

}  // namespace qcp
