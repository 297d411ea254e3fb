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

#include "encode_util.hpp"
#include "qcp/encode.hpp"

// eQASM cost model. Qubits partition into sections of eqasm_section_size for
// the single-qubit target registers; each (section, kind) pair needs one
// SMIS declaration. Two-qubit pairs go through SMIT declarations whose
// 16-bit coupling mask window slides over the directed complete-graph edge
// enumeration; each SMIT carries eqasm_twoq_extra_words of range-extension
// setup. Gate issues pack two per bundle word; one qwait closes each moment.
// Only word counts and assembly text are modeled here — the binary format
// belongs to the original toolchain.

namespace qcp {

namespace {

uint64_t coupling_id(uint32_t c, uint32_t t, uint32_t n) {
    return static_cast<uint64_t>(c) * (n - 1) + (t > c ? t - 1 : t);
}

}  // namespace

InstructionStream encode_eqasm(const Circuit& c, const CostModelConfig& cfg, Strategy strategy) {
    InstructionStream stream;
    stream.isa = Isa::eqasm();
    stream.strategy = strategy;
    detail::Emitter em{&stream};
    int64_t max_sreg = -1, max_treg = -1;

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        em.timestamp = m.timestamp;

        struct Slot {
            std::string label;       // rendered target register
            KindKey kind;
            std::vector<CoveredGate> gates;
        };
        std::vector<Slot> slots;

        // (section, kind) -> single-qubit targets
        std::map<std::pair<uint32_t, KindKey>, std::vector<const GateOp*>> smis;
        // coupling window -> (kind -> pairs); windows keep distinct kinds apart
        std::map<std::pair<uint64_t, KindKey>, std::vector<const GateOp*>> smit;
        for (const GateOp& op : m.ops) {
            if (is_two_qubit(op.type)) {
                uint64_t window = coupling_id(op.qubits[0], op.qubits[1], c.num_qubits) / cfg.eqasm_coupling_mask_bits;
                smit[{window, kind_key(op)}].push_back(&op);
            } else {
                smis[{op.qubits[0] / cfg.eqasm_section_size, kind_key(op)}].push_back(&op);
            }
        }

        uint32_t sreg = 0;
        for (const auto& [key, ops] : smis) {
            std::string list;
            for (const GateOp* op : ops) list += fmt::format("{}{}", list.empty() ? "" : ",", op->qubits[0]);
            em.emit("smis", {sreg}, fmt::format("smis s{}, {{{}}}", sreg, list), Role::TargetSetup);
            Slot slot;
            slot.label = fmt::format("s{}", sreg);
            slot.kind = key.second;
            for (const GateOp* op : ops) slot.gates.push_back({key.second, op->qubits});
            slots.push_back(std::move(slot));
            max_sreg = std::max<int64_t>(max_sreg, sreg++);
        }
        uint32_t treg = 0;
        for (const auto& [key, ops] : smit) {
            std::string list;
            for (const GateOp* op : ops) {
                list += fmt::format("{}({},{})", list.empty() ? "" : ",", op->qubits[0], op->qubits[1]);
            }
            em.emit("smit", {treg}, fmt::format("smit t{}, {{{}}}", treg, list), Role::TargetSetup,
                    1 + cfg.eqasm_twoq_extra_words);
            Slot slot;
            slot.label = fmt::format("t{}", treg);
            slot.kind = key.second;
            for (const GateOp* op : ops) slot.gates.push_back({key.second, op->qubits});
            slots.push_back(std::move(slot));
            max_treg = std::max<int64_t>(max_treg, treg++);
        }

        for (size_t i = 0; i < slots.size(); i += cfg.eqasm_bundle_slots) {
            size_t hi = std::min(slots.size(), i + cfg.eqasm_bundle_slots);
            std::string text = "bs 1";
            for (size_t j = i; j < hi; ++j) {
                text += fmt::format("{} {} {}", j > i ? " |" : "", kind_label(slots[j].kind), slots[j].label);
            }
            Instruction& bundle = em.emit("bs", {}, std::move(text), Role::GateIssue);
            for (size_t j = i; j < hi; ++j) {
                for (CoveredGate& g : slots[j].gates) bundle.covers.push_back(std::move(g));
            }
        }

        em.emit("qwait", {detail::stamp_delta(c, mi)}, fmt::format("qwait {}", detail::stamp_delta(c, mi)),
                Role::TimeAdvance);
        em.close_moment(m.timestamp);
    }
    for (int64_t s = 0; s <= max_sreg; ++s) stream.registers_used.insert(fmt::format("s{}", s));
    for (int64_t t = 0; t <= max_treg; ++t) stream.registers_used.insert(fmt::format("t{}", t));
    return stream;
}

}  // namespace qcp
