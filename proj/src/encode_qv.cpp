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

// Double-index quantum vector model. A uniform fixed-angle single-qubit
// moment is SIMD: vector-length setup, one index-vector load, a vqqi issue
// and the time control — four words. Anything else (two-qubit, mixed kinds,
// parameterized) is MIMD: two index vectors plus a gate-descriptor vector
// feed a vqqg issue — six words, with broadcast-immediate stand-ins for
// vectors a moment does not need.
//
// Data accounting (32-bit data words): qubit indices are 1-based so a zero
// slot is a nop. An index vector whose entries form one ascending stride-1
// run loads through a one-word base/length descriptor; scattered indices
// take ceil(n * ves / 32) words. The gate-descriptor vector (present when
// kinds are mixed or angles appear) takes ceil(n * 8 / 32) id words plus one
// 32-bit angle word per RZ entry.

namespace qcp {

namespace {

uint32_t ceil_div(uint32_t a, uint32_t b) { return (a + b - 1) / b; }

uint32_t index_vector_words(const std::vector<uint32_t>& entries, uint32_t ves) {
    bool run = true;
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i] != entries[i - 1] + 1) {
            run = false;
            break;
        }
    }
    if (run && !entries.empty() && entries[0] != 0) return 1;
    return ceil_div(static_cast<uint32_t>(entries.size()) * ves, 32);
}

}  // namespace

InstructionStream encode_qv(const Circuit& c, const Isa& isa, const CostModelConfig& cfg, Strategy strategy) {
    (void)cfg;
    InstructionStream stream;
    stream.isa = isa;
    stream.strategy = strategy;
    detail::Emitter em{&stream};
    detail::KindIds ids;

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        em.timestamp = m.timestamp;
        uint32_t delta = detail::stamp_delta(c, mi);
        if (m.ops.empty()) {
            em.emit("qts", {delta}, fmt::format("qts {}", delta), Role::TimeAdvance);
            em.close_moment(m.timestamp);
            continue;
        }

        auto groups = detail::kind_groups(m);
        bool any_2q = false, any_angle = false;
        for (const GateOp& op : m.ops) {
            any_2q |= is_two_qubit(op.type);
            any_angle |= op.angle.has_value();
        }
        bool simd = groups.size() == 1 && !any_2q && !any_angle;
        auto vl = static_cast<uint32_t>(m.ops.size());

        std::vector<uint32_t> primary, secondary;
        uint32_t rz_count = 0;
        for (const GateOp& op : m.ops) {
            primary.push_back(op.qubits[0] + 1);
            secondary.push_back(is_two_qubit(op.type) ? op.qubits[1] + 1 : 0);
            if (op.type == GateType::RZ) ++rz_count;
        }

        em.emit("vsetvli", {vl}, fmt::format("vsetvli t0, {}, e{}", vl, isa.ves), Role::DataLoad);
        uint32_t data = index_vector_words(primary, isa.ves);
        em.emit("vld", {1}, "vld v1, (a1)  # qubit indices", Role::TargetSetup);

        if (simd) {
            const KindKey& kind = groups.begin()->first;
            Instruction& issue = em.emit("vqqi", {ids.id(kind), 1},
                                         fmt::format("vqqi {}, v1, v1", kind_label(kind)), Role::GateIssue);
            for (const GateOp& op : m.ops) issue.covers.push_back({kind, op.qubits});
        } else {
            if (any_2q) {
                data += index_vector_words(secondary, isa.ves);
                em.emit("vld", {2}, "vld v2, (a2)  # pair targets", Role::TargetSetup);
            } else {
                em.emit("vbrd", {2, 0}, "vbrd v2, 0", Role::TargetSetup);
            }
            bool gate_vector = groups.size() > 1 || any_angle;
            if (gate_vector) {
                data += ceil_div(vl * 8, 32) + rz_count;
                em.emit("vld", {3}, "vld v3, (a3)  # gate descriptors", Role::TargetSetup);
            } else {
                const KindKey& kind = groups.begin()->first;
                em.emit("vbrd", {3, ids.id(kind)}, fmt::format("vbrd v3, {}  # {}", ids.id(kind), kind_label(kind)),
                        Role::TargetSetup);
            }
            Instruction& issue = em.emit("vqqg", {1, 2, 3}, "vqqg v1, v2, v3", Role::GateIssue);
            for (const GateOp& op : m.ops) issue.covers.push_back({kind_key(op), op.qubits});
        }
        em.emit("qts", {delta}, fmt::format("qts {}", delta), Role::TimeAdvance);
        em.moment_data = data;
        em.close_moment(m.timestamp);
    }
    stream.registers_used = {"t0", "a1", "a2", "a3", "v1", "v2", "v3"};
    return stream;
}

}  // namespace qcp
