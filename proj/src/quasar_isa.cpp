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

#include "qcp/quasar_isa.hpp"

#include <array>
#include <map>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

namespace {

// Operand shape of a quantum opcode.
enum class Form : uint8_t {
    OneQImm,    // {qubit}
    OneQImmK,   // {qubit, kind7} (qrzi/qrxi/qryi carry an angle index, qgi a kind id)
    OneQMask,   // {rs1, bank4}
    OneQMaskK,  // {rs1, bank4, kind7}
    TwoQImm,    // {control, target}
    TwoQMask,   // {rs1, bank1, rs2, bank2}
    MeasImm,    // {qubit, rd}
    MeasMask,   // {rs1, bank4, rd}
    AngleSet,   // {index7, fix18} angle-table write
    Ts,         // {delta25}
    TsReg,      // {rs1}
    MoveMr,     // {rd, bank4}
    Fence,      // {}
};

struct QDef {
    const char* name;
    Form form;
};

// Opcode = table index + 1. Opcode 0 stays invalid so the all-zero word
// never decodes.
constexpr std::array<QDef, 31> kQuantum = {{
    {"qx90i", Form::OneQImm},   {"qx90m", Form::OneQMask},   // 1, 2
    {"qy90i", Form::OneQImm},   {"qy90m", Form::OneQMask},   // 3, 4
    {"qx180i", Form::OneQImm},  {"qx180m", Form::OneQMask},  // 5, 6
    {"qy180i", Form::OneQImm},  {"qy180m", Form::OneQMask},  // 7, 8
    {"qz90i", Form::OneQImm},   {"qz90m", Form::OneQMask},   // 9, 10
    {"qz180i", Form::OneQImm},  {"qz180m", Form::OneQMask},  // 11, 12
    {"qrxi", Form::OneQImmK},   {"qrxm", Form::OneQMaskK},   // 13, 14
    {"qryi", Form::OneQImmK},   {"qrym", Form::OneQMaskK},   // 15, 16
    {"qrzi", Form::OneQImmK},   {"qrzm", Form::OneQMaskK},   // 17, 18
    {"qgi", Form::OneQImmK},    {"qgm", Form::OneQMaskK},    // 19, 20
    {"qcnoti", Form::TwoQImm},  {"qcnotm", Form::TwoQMask},  // 21, 22
    {"qczi", Form::TwoQImm},    {"qczm", Form::TwoQMask},    // 23, 24
    {"qmeasi", Form::MeasImm},  {"qmeasm", Form::MeasMask},  // 25, 26
    {"qangt", Form::AngleSet},                               // 27
    {"ts", Form::Ts},           {"tsr", Form::TsReg},        // 28, 29
    {"qmvmr", Form::MoveMr},    {"qfence", Form::Fence},     // 30, 31
}};

const std::map<std::string, uint32_t>& quantum_opcode_map() {
    static const std::map<std::string, uint32_t> m = [] {
        std::map<std::string, uint32_t> out;
        for (size_t i = 0; i < kQuantum.size(); ++i) out[kQuantum[i].name] = static_cast<uint32_t>(i + 1);
        return out;
    }();
    return m;
}

uint32_t field(const Instruction& inst, size_t i, uint32_t limit, const char* what) {
    if (i >= inst.args.size()) {
        throw IsaError(fmt::format("{}: missing {} operand", inst.mnemonic, what));
    }
    int64_t v = inst.args[i];
    if (v < 0 || v >= static_cast<int64_t>(limit)) {
        throw IsaError(fmt::format("{}: {} {} out of range (limit {})", inst.mnemonic, what, v, limit));
    }
    return static_cast<uint32_t>(v);
}

uint32_t assemble_quantum(const Instruction& inst, uint32_t opcode) {
    const QDef& def = kQuantum[opcode - 1];
    uint32_t w = 0b10u | (opcode << 2);
    switch (def.form) {
        case Form::OneQImm:
            w |= field(inst, 0, 512, "qubit index") << 7;
            break;
        case Form::OneQImmK:
            w |= field(inst, 0, 512, "qubit index") << 7;
            w |= field(inst, 1, 128, "kind/angle index") << 16;
            break;
        case Form::OneQMask:
            w |= field(inst, 0, 32, "mask register") << 7;
            w |= field(inst, 1, 16, "bank offset") << 12;
            break;
        case Form::OneQMaskK:
            w |= field(inst, 0, 32, "mask register") << 7;
            w |= field(inst, 1, 16, "bank offset") << 12;
            w |= field(inst, 2, 128, "kind/angle index") << 16;
            break;
        case Form::TwoQImm:
            w |= field(inst, 0, 512, "control index") << 7;
            w |= field(inst, 1, 512, "target index") << 16;
            break;
        case Form::TwoQMask:
            w |= field(inst, 0, 32, "control mask register") << 7;
            w |= field(inst, 1, 16, "control bank") << 12;
            w |= field(inst, 2, 32, "target mask register") << 16;
            w |= field(inst, 3, 16, "target bank") << 21;
            break;
        case Form::MeasImm:
            w |= field(inst, 0, 512, "qubit index") << 7;
            w |= field(inst, 1, 32, "destination register") << 16;
            break;
        case Form::MeasMask:
            w |= field(inst, 0, 32, "mask register") << 7;
            w |= field(inst, 1, 16, "bank offset") << 12;
            w |= field(inst, 2, 32, "destination register") << 16;
            break;
        case Form::AngleSet:
            w |= field(inst, 0, 128, "angle index") << 7;
            w |= field(inst, 1, 1u << 18, "fixed-point angle") << 14;
            break;
        case Form::Fence:
            break;
        case Form::Ts:
            w |= field(inst, 0, 1u << 25, "stamp delta") << 7;
            break;
        case Form::TsReg:
            w |= field(inst, 0, 32, "source register") << 7;
            break;
        case Form::MoveMr:
            w |= field(inst, 0, 32, "destination register") << 7;
            w |= field(inst, 1, 16, "bank offset") << 12;
            break;
    }
    return w;
}

// RV32I encodings for the classical subset.
uint32_t enc_r(uint32_t f7, uint32_t rs2, uint32_t rs1, uint32_t f3, uint32_t rd, uint32_t op) {
    return (f7 << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | op;
}
uint32_t enc_i(int32_t imm, uint32_t rs1, uint32_t f3, uint32_t rd, uint32_t op) {
    return (static_cast<uint32_t>(imm) << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | op;
}

int64_t arg(const Instruction& inst, size_t i) {
    if (i >= inst.args.size()) throw IsaError(fmt::format("{}: missing operand {}", inst.mnemonic, i));
    return inst.args[i];
}

uint32_t reg_arg(const Instruction& inst, size_t i) {
    int64_t v = arg(inst, i);
    if (v < 0 || v > 31) throw IsaError(fmt::format("{}: bad register x{}", inst.mnemonic, v));
    return static_cast<uint32_t>(v);
}

int32_t imm_arg(const Instruction& inst, size_t i, int32_t lo, int32_t hi) {
    int64_t v = arg(inst, i);
    if (v < lo || v > hi) throw IsaError(fmt::format("{}: immediate {} out of [{}, {}]", inst.mnemonic, v, lo, hi));
    return static_cast<int32_t>(v);
}

uint32_t assemble_classical(const Instruction& inst) {
    const std::string& m = inst.mnemonic;
    if (m == "lui") {
        uint32_t rd = reg_arg(inst, 0);
        auto imm = static_cast<uint32_t>(imm_arg(inst, 1, 0, (1 << 20) - 1));
        return (imm << 12) | (rd << 7) | 0x37;
    }
    static const std::map<std::string, uint32_t> imm_f3 = {
        {"addi", 0}, {"xori", 4}, {"ori", 6}, {"andi", 7},
    };
    if (auto it = imm_f3.find(m); it != imm_f3.end()) {
        return enc_i(imm_arg(inst, 2, -2048, 2047), reg_arg(inst, 1), it->second, reg_arg(inst, 0), 0x13);
    }
    if (m == "slli" || m == "srli") {
        uint32_t shamt = static_cast<uint32_t>(imm_arg(inst, 2, 0, 31));
        return enc_i(static_cast<int32_t>(shamt), reg_arg(inst, 1), m == "slli" ? 1 : 5, reg_arg(inst, 0), 0x13);
    }
    static const std::map<std::string, std::pair<uint32_t, uint32_t>> r_ops = {
        {"add", {0, 0x00}}, {"sub", {0, 0x20}}, {"xor", {4, 0x00}}, {"or", {6, 0x00}}, {"and", {7, 0x00}},
    };
    if (auto it = r_ops.find(m); it != r_ops.end()) {
        return enc_r(it->second.second, reg_arg(inst, 2), reg_arg(inst, 1), it->second.first, reg_arg(inst, 0), 0x33);
    }
    if (m == "lw") {
        return enc_i(imm_arg(inst, 2, -2048, 2047), reg_arg(inst, 1), 2, reg_arg(inst, 0), 0x03);
    }
    if (m == "beq" || m == "bne") {
        uint32_t rs1 = reg_arg(inst, 0);
        uint32_t rs2 = reg_arg(inst, 1);
        int32_t off = imm_arg(inst, 2, -4096, 4095);
        if (off % 2 != 0) throw IsaError(fmt::format("{}: misaligned branch offset {}", m, off));
        auto u = static_cast<uint32_t>(off);
        uint32_t w = 0x63 | ((m == "bne" ? 1u : 0u) << 12);
        w |= ((u >> 12) & 1) << 31;
        w |= ((u >> 5) & 0x3f) << 25;
        w |= rs2 << 20;
        w |= rs1 << 15;
        w |= ((u >> 1) & 0xf) << 8;
        w |= ((u >> 11) & 1) << 7;
        return w;
    }
    throw IsaError(fmt::format("unknown classical mnemonic '{}'", m));
}

int32_t sext(uint32_t v, int bits) {
    uint32_t m = 1u << (bits - 1);
    return static_cast<int32_t>((v ^ m) - m);
}

Instruction decode_classical(uint32_t w, size_t offset) {
    Instruction out;
    uint32_t opcode = w & 0x7f;
    uint32_t rd = (w >> 7) & 31;
    uint32_t f3 = (w >> 12) & 7;
    uint32_t rs1 = (w >> 15) & 31;
    uint32_t rs2 = (w >> 20) & 31;
    uint32_t f7 = w >> 25;
    int32_t iimm = sext(w >> 20, 12);
    switch (opcode) {
        case 0x37:
            out.mnemonic = "lui";
            out.args = {rd, static_cast<int64_t>(w >> 12)};
            out.role = Role::DataLoad;
            return out;
        case 0x13: {
            static const char* names[8] = {"addi", "slli", "slti", "sltiu", "xori", "srli", "ori", "andi"};
            out.mnemonic = names[f3];
            if (f3 == 1 || f3 == 5) {
                if (f7 != 0) throw IsaError("unsupported shift encoding", offset);
                out.args = {rd, rs1, rs2};  // shamt sits in the rs2 field
            } else if (f3 == 2 || f3 == 3) {
                throw IsaError("unsupported OP-IMM instruction", offset);
            } else {
                out.args = {rd, rs1, iimm};
            }
            out.role = Role::DataLoad;
            return out;
        }
        case 0x33: {
            const char* name = nullptr;
            if (f3 == 0) name = f7 == 0x20 ? "sub" : (f7 == 0 ? "add" : nullptr);
            else if (f3 == 4 && f7 == 0) name = "xor";
            else if (f3 == 6 && f7 == 0) name = "or";
            else if (f3 == 7 && f7 == 0) name = "and";
            if (!name) throw IsaError("unsupported OP instruction", offset);
            out.mnemonic = name;
            out.args = {rd, rs1, rs2};
            out.role = Role::DataLoad;
            return out;
        }
        case 0x03:
            if (f3 != 2) throw IsaError("unsupported load width", offset);
            out.mnemonic = "lw";
            out.args = {rd, rs1, iimm};
            out.role = Role::MaskLoad;
            return out;
        case 0x63: {
            if (f3 > 1) throw IsaError("unsupported branch condition", offset);
            uint32_t u = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) | (((w >> 25) & 0x3f) << 5) |
                         (((w >> 8) & 0xf) << 1);
            out.mnemonic = f3 ? "bne" : "beq";
            out.args = {rs1, rs2, sext(u, 13)};
            out.role = Role::Branch;
            return out;
        }
        default:
            throw IsaError(fmt::format("word {:#010x} matches no known encoding", w), offset);
    }
}

Instruction decode_quantum(uint32_t w, size_t offset) {
    uint32_t opcode = (w >> 2) & 31;
    if (opcode == 0) throw IsaError(fmt::format("word {:#010x}: quantum opcode 0 is invalid", w), offset);
    const QDef& def = kQuantum[opcode - 1];
    Instruction out;
    out.mnemonic = def.name;
    out.role = Role::GateIssue;
    auto bits = [&](int lo, int n) { return static_cast<int64_t>((w >> lo) & ((1u << n) - 1)); };
    switch (def.form) {
        case Form::OneQImm: out.args = {bits(7, 9)}; break;
        case Form::OneQImmK: out.args = {bits(7, 9), bits(16, 7)}; break;
        case Form::OneQMask: out.args = {bits(7, 5), bits(12, 4)}; break;
        case Form::OneQMaskK: out.args = {bits(7, 5), bits(12, 4), bits(16, 7)}; break;
        case Form::TwoQImm: out.args = {bits(7, 9), bits(16, 9)}; break;
        case Form::TwoQMask: out.args = {bits(7, 5), bits(12, 4), bits(16, 5), bits(21, 4)}; break;
        case Form::MeasImm: out.args = {bits(7, 9), bits(16, 5)}; break;
        case Form::MeasMask: out.args = {bits(7, 5), bits(12, 4), bits(16, 5)}; break;
        case Form::AngleSet:
            out.args = {bits(7, 7), bits(14, 18)};
            out.role = Role::DataLoad;
            break;
        case Form::Fence:
            out.role = Role::DataLoad;
            break;
        case Form::Ts:
            out.args = {bits(7, 25)};
            out.role = Role::TimeAdvance;
            break;
        case Form::TsReg:
            out.args = {bits(7, 5)};
            out.role = Role::TimeAdvance;
            break;
        case Form::MoveMr:
            out.args = {bits(7, 5), bits(12, 4)};
            out.role = Role::DataLoad;
            break;
    }
    return out;
}

std::string render_operands(const Instruction& inst) {
    std::string out;
    for (size_t i = 0; i < inst.args.size(); ++i) {
        out += i ? ", " : " ";
        out += std::to_string(inst.args[i]);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& quasar_mnemonics() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const QDef& d : kQuantum) out.emplace_back(d.name);
        return out;
    }();
    return names;
}

bool is_quasar_mnemonic(const std::string& m) {
    return quantum_opcode_map().count(m) != 0;
}

bool is_classical_mnemonic(const std::string& m) {
    static const std::set<std::string> names = {"lui", "addi", "andi", "ori",  "xori", "slli", "srli", "add",
                                                "sub", "and",  "or",   "xor",  "lw",   "beq",  "bne"};
    return names.count(m) != 0;
}

std::string reg_name(uint32_t x) {
    static const char* names[32] = {"zero", "ra", "sp", "gp", "tp", "t0", "t1", "t2", "s0", "s1", "a0",
                                    "a1",   "a2", "a3", "a4", "a5", "a6", "a7", "s2", "s3", "s4", "s5",
                                    "s6",   "s7", "s8", "s9", "s10", "s11", "t3", "t4", "t5", "t6"};
    return x < 32 ? names[x] : fmt::format("x{}", x);
}

uint32_t assemble_word(const Instruction& inst) {
    auto it = quantum_opcode_map().find(inst.mnemonic);
    if (it != quantum_opcode_map().end()) return assemble_quantum(inst, it->second);
    if (is_classical_mnemonic(inst.mnemonic)) return assemble_classical(inst);
    throw IsaError(fmt::format("unknown mnemonic '{}'", inst.mnemonic));
}

std::vector<uint32_t> assemble_quasar(const InstructionStream& stream) {
    if (stream.isa.kind != IsaKind::Quasar) throw IsaError("assemble_quasar: stream is not QUASAR");
    std::vector<uint32_t> out;
    out.reserve(stream.instructions.size());
    for (const Instruction& inst : stream.instructions) {
        if (inst.words != 1) {
            throw IsaError(fmt::format("{}: multi-word lines cannot be assembled", inst.mnemonic));
        }
        out.push_back(assemble_word(inst));
    }
    return out;
}

InstructionStream disassemble_quasar(const std::vector<uint32_t>& words) {
    InstructionStream stream;
    stream.isa = Isa::quasar();
    uint32_t ts = 0;
    for (size_t i = 0; i < words.size(); ++i) {
        uint32_t w = words[i];
        Instruction inst;
        if ((w & 3u) == 0b10u) {
            inst = decode_quantum(w, i);
        } else if ((w & 3u) == 0b11u) {
            inst = decode_classical(w, i);
        } else {
            throw IsaError(fmt::format("word {:#010x}: neither quantum prefix '10' nor a base-ISA encoding", w), i);
        }
        inst.timestamp = ts;
        inst.text = inst.mnemonic + render_operands(inst);
        if (inst.mnemonic == "ts") ts += static_cast<uint32_t>(inst.args[0]);
        stream.instructions.push_back(std::move(inst));
    }
    return stream;
}

}  // namespace qcp
