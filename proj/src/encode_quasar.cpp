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

#include <algorithm>
#include <cmath>

#include "encode_util.hpp"
#include "qcp/encode.hpp"
#include "qcp/quasar_isa.hpp"

// QUASAR emission. Per kind group the encoder picks between the immediate
// form (one word per gate) and the mask form (one mask materialization plus
// one gate word per 32-qubit bank); Hybrid takes whichever is smaller per
// group, which is where the format combination pays off on unbalanced
// moments. RZ groups carry one angle-table setup word per distinct quantized
// angle per moment. Each moment closes with one relative ts advance.

namespace qcp {

namespace {

constexpr uint32_t kMaskReg0 = 5;   // t0/t1 rotate as mask holders
constexpr uint32_t kMeasReg = 2;    // measurement results accumulate in x2
constexpr int64_t kGp = 3;

struct BankGroup {
    uint32_t bank = 0;
    uint32_t mask = 0;
    std::vector<const GateOp*> gates;
};

std::vector<BankGroup> bank_split(const std::vector<const GateOp*>& gates) {
    std::map<uint32_t, BankGroup> banks;
    for (const GateOp* op : gates) {
        uint32_t q = op->qubits[0];
        BankGroup& b = banks[q / 32];
        b.bank = q / 32;
        b.mask |= 1u << (q % 32);
        b.gates.push_back(op);
    }
    std::vector<BankGroup> out;
    for (auto& [_, b] : banks) out.push_back(std::move(b));
    return out;
}

/// Splits cnots into maximal chains whose rank pairing (i-th set control bit
/// with i-th set target bit) reproduces the original pairs: controls and
/// targets must both be strictly ascending, stay within one bank each, and
/// no qubit may appear on both sides of one chain.
std::vector<std::vector<const GateOp*>> cnot_chains(std::vector<const GateOp*> gates) {
    std::sort(gates.begin(), gates.end(),
              [](const GateOp* a, const GateOp* b) { return a->qubits[0] < b->qubits[0]; });
    std::vector<std::vector<const GateOp*>> chains;
    for (const GateOp* op : gates) {
        bool extended = false;
        if (!chains.empty()) {
            auto& chain = chains.back();
            const GateOp* prev = chain.back();
            bool ascending = op->qubits[0] > prev->qubits[0] && op->qubits[1] > prev->qubits[1];
            bool same_banks = op->qubits[0] / 32 == prev->qubits[0] / 32 && op->qubits[1] / 32 == prev->qubits[1] / 32;
            bool disjoint_sides = true;
            for (const GateOp* g : chain) {
                if (g->qubits[0] == op->qubits[1] || g->qubits[1] == op->qubits[0]) disjoint_sides = false;
            }
            if (ascending && same_banks && disjoint_sides) {
                chain.push_back(op);
                extended = true;
            }
        }
        if (!extended) chains.push_back({op});
    }
    return chains;
}

using detail::quasar_imm_mnemonic;
using detail::quasar_mask_mnemonic;

struct QuasarEncoder {
    detail::Emitter em;
    const CostModelConfig& cfg;
    detail::KindIds ids;
    uint32_t next_mask_reg = kMaskReg0;

    int64_t kind_field(const KindKey& k) {
        if (k.type == GateType::RZ) return k.angle_index;
        if (k.type == GateType::CUSTOM) {
            uint32_t id = ids.id(k);
            // Canonical u<k> names sit at 16+k in the id space; the 7-bit
            // field carries the slot directly.
            return id >= 16 ? id - 16 : id;
        }
        return 0;
    }

    /// Mask materialization into a scratch register; returns the register.
    uint32_t load_mask(uint32_t mask) {
        uint32_t reg = next_mask_reg;
        next_mask_reg = next_mask_reg == 5 ? 6 : (next_mask_reg == 6 ? 7 : 5);
        if (cfg.quasar_mask_load == MaskLoad::LaPseudo) {
            auto off = static_cast<int64_t>(em.stream->pool.size() * 4);
            if (off > 2047) throw EncodeError("quasar: literal pool exceeds the gp window");
            em.stream->pool.push_back(mask);
            em.emit("lw", {reg, kGp, off}, fmt::format("lw {}, {}(gp)  # mask {:#010x}", reg_name(reg), off, mask),
                    Role::MaskLoad);
        } else {
            uint32_t hi = (mask + 0x800) >> 12;
            int32_t lo = static_cast<int32_t>(mask) - static_cast<int32_t>(hi << 12);
            em.emit("lui", {reg, hi & 0xfffff}, fmt::format("lui {}, {:#x}", reg_name(reg), hi & 0xfffff),
                    Role::MaskLoad);
            em.emit("addi", {reg, reg, lo}, fmt::format("addi {0}, {0}, {1}", reg_name(reg), lo), Role::MaskLoad);
        }
        em.stream->registers_used.insert(reg_name(reg));
        return reg;
    }

    uint32_t mask_cost() const {
        return cfg.quasar_mask_load_words() + 1;
    }

    void angle_setup(const KindKey& k) {
        auto fix18 = static_cast<int64_t>(std::llround(static_cast<double>(k.angle_index) / kAngleTableSize * 262144.0));
        em.emit("qangt", {k.angle_index, fix18}, fmt::format("qangt {}, {:#x}", k.angle_index, fix18), Role::DataLoad);
    }

    void emit_imm_gate(const KindKey& k, const GateOp& op) {
        Instruction* inst = nullptr;
        std::string mn = quasar_imm_mnemonic(k);
        switch (k.type) {
            case GateType::CNOT:
                inst = &em.emit(mn, {op.qubits[0], op.qubits[1]},
                                fmt::format("{} {}, {}", mn, op.qubits[0], op.qubits[1]), Role::GateIssue);
                break;
            case GateType::MEASURE:
                inst = &em.emit(mn, {op.qubits[0], kMeasReg}, fmt::format("{} {}, {}", mn, op.qubits[0],
                                                                          reg_name(kMeasReg)),
                                Role::GateIssue);
                em.stream->registers_used.insert(reg_name(kMeasReg));
                break;
            case GateType::RZ:
            case GateType::CUSTOM:
                inst = &em.emit(mn, {op.qubits[0], kind_field(k)},
                                fmt::format("{} {}, {}", mn, op.qubits[0], kind_field(k)), Role::GateIssue);
                break;
            default:
                inst = &em.emit(mn, {op.qubits[0]}, fmt::format("{} {}", mn, op.qubits[0]), Role::GateIssue);
                break;
        }
        inst->covers.push_back({k, op.qubits});
    }

    void emit_mask_1q(const KindKey& k, const BankGroup& bank) {
        uint32_t reg = load_mask(bank.mask);
        std::string mn = quasar_mask_mnemonic(k);
        Instruction* inst;
        if (k.type == GateType::MEASURE) {
            inst = &em.emit(mn, {reg, bank.bank, kMeasReg},
                            fmt::format("{} {}, {}, {}", mn, reg_name(reg), bank.bank, reg_name(kMeasReg)),
                            Role::GateIssue);
            em.stream->registers_used.insert(reg_name(kMeasReg));
        } else if (k.type == GateType::RZ || k.type == GateType::CUSTOM) {
            inst = &em.emit(mn, {reg, bank.bank, kind_field(k)},
                            fmt::format("{} {}, {}, {}", mn, reg_name(reg), bank.bank, kind_field(k)),
                            Role::GateIssue);
        } else {
            inst = &em.emit(mn, {reg, bank.bank}, fmt::format("{} {}, {}", mn, reg_name(reg), bank.bank),
                            Role::GateIssue);
        }
        for (const GateOp* op : bank.gates) inst->covers.push_back({k, op->qubits});
    }

    void emit_mask_cnot_chain(const KindKey& k, const std::vector<const GateOp*>& chain) {
        uint32_t cmask = 0, tmask = 0;
        uint32_t cbank = chain[0]->qubits[0] / 32, tbank = chain[0]->qubits[1] / 32;
        for (const GateOp* op : chain) {
            cmask |= 1u << (op->qubits[0] % 32);
            tmask |= 1u << (op->qubits[1] % 32);
        }
        uint32_t creg = load_mask(cmask);
        uint32_t treg = load_mask(tmask);
        Instruction& inst = em.emit("qcnotm", {creg, cbank, treg, tbank},
                                    fmt::format("qcnotm {}, {}, {}, {}", reg_name(creg), cbank, reg_name(treg), tbank),
                                    Role::GateIssue);
        for (const GateOp* op : chain) inst.covers.push_back({k, op->qubits});
    }
};

}  // namespace

InstructionStream encode_quasar(const Circuit& c, const CostModelConfig& cfg, Strategy strategy) {
    InstructionStream stream;
    stream.isa = Isa::quasar();
    stream.strategy = strategy;
    QuasarEncoder enc{{&stream}, cfg, {}, kMaskReg0};

    if (!c.moments.empty() && c.moments[0].timestamp > 0) {
        enc.em.timestamp = 0;
        enc.em.emit("ts", {c.moments[0].timestamp}, fmt::format("ts {}", c.moments[0].timestamp), Role::TimeAdvance);
    }
    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        enc.em.timestamp = m.timestamp;
        for (const auto& [kind, gates] : detail::kind_groups(m)) {
            if (kind.type == GateType::RZ) enc.angle_setup(kind);
            if (kind.type == GateType::CNOT) {
                auto chains = cnot_chains(gates);
                uint32_t imm_cost = static_cast<uint32_t>(gates.size());
                uint32_t mask_cost = static_cast<uint32_t>(chains.size()) * (2 * cfg.quasar_mask_load_words() + 1);
                bool use_mask = strategy == Strategy::MaskOnly ||
                                (strategy == Strategy::Hybrid && mask_cost < imm_cost);
                if (use_mask) {
                    for (const auto& chain : chains) enc.emit_mask_cnot_chain(kind, chain);
                } else {
                    for (const GateOp* op : gates) enc.emit_imm_gate(kind, *op);
                }
                continue;
            }
            auto banks = bank_split(gates);
            uint32_t imm_cost = static_cast<uint32_t>(gates.size());
            uint32_t mask_cost = static_cast<uint32_t>(banks.size()) * enc.mask_cost();
            bool use_mask =
                strategy == Strategy::MaskOnly || (strategy == Strategy::Hybrid && mask_cost < imm_cost);
            if (use_mask) {
                for (const BankGroup& b : banks) enc.emit_mask_1q(kind, b);
            } else {
                for (const GateOp* op : gates) enc.emit_imm_gate(kind, *op);
            }
        }
        uint32_t delta = detail::stamp_delta(c, mi);
        enc.em.emit("ts", {delta}, fmt::format("ts {}", delta), Role::TimeAdvance);
        enc.em.close_moment(m.timestamp);
    }
    return stream;
}

}  // namespace qcp
