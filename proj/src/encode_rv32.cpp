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

#include <cmath>

#include "encode_util.hpp"
#include "qcp/encode.hpp"
#include "qcp/quasar_isa.hpp"

// RV32I driving the quantum backend over MMIO. Device register map (word
// offsets from the base in a0):
//
//   0  TIME_STAMP   absolute stamp of the gate being described
//   4  GATE_TYPE    small integer kind id
//   8  QUBIT_ID     primary qubit; writing it latches the gate
//   12 TS_TICK      any store advances the device stamp by one
//   16 QUBIT_ID2    CNOT target
//   20 ANGLE        32-bit fixed-point turns
//   24 QSR          status/commit interface
//
// Each gate is described by a full load/store block (the baseline cost the
// comparison study measures). Runs of >= rv32_loop_threshold identical
// fixed-angle gates on consecutive qubits compress into a three-instruction
// store/decrement/branch loop whose qubit counter streams the ids; in loop
// mode the QUBIT_ID store doubles as the commit strobe.

namespace qcp {

namespace {

using detail::Emitter;

constexpr const char* kTimeOff = "0";
constexpr const char* kTypeOff = "4";
constexpr const char* kQubitOff = "8";
constexpr const char* kTickOff = "12";
constexpr const char* kQubit2Off = "16";
constexpr const char* kAngleOff = "20";
constexpr const char* kQsrOff = "24";

// a0 device base, t0 stamp, t1 gate type, t2 qubit id / loop counter,
// t3 second qubit / angle word.
constexpr uint32_t kA0 = 10, kT0 = 5, kT1 = 6, kT2 = 7, kT3 = 28;

uint32_t li_words(int64_t value) { return value >= -2048 && value <= 2047 ? 1 : 2; }

uint32_t angle_fix32(double radians) {
    double turns = radians / (2.0 * M_PI);
    turns -= std::floor(turns);
    return static_cast<uint32_t>(std::llround(turns * 4294967296.0)) /* wraps at 1.0 */;
}

struct Rv32Encoder {
    Emitter em;
    const CostModelConfig& cfg;
    detail::KindIds ids;
    bool stamp_stored_this_moment = false;

    void la_base() {
        em.emit("la", {kA0}, "la a0, QPU_BASE", Role::Mmio, cfg.rv32_la_words);
    }
    void li(uint32_t reg, int64_t value, const std::string& name, Role role = Role::DataLoad) {
        em.emit("li", {reg, value}, fmt::format("li {}, {}", reg_name(reg), value) + (name.empty() ? "" : "  # " + name),
                role, li_words(value));
    }
    void sw(uint32_t reg, const char* off, Role role) {
        em.emit("sw", {reg, kA0, std::stoll(off)}, fmt::format("sw {}, {}(a0)", reg_name(reg), off), role);
    }

    void stamp_pair(uint32_t ts) {
        li(kT0, ts, "time stamp");
        sw(kT0, kTimeOff, stamp_stored_this_moment ? Role::Mmio : Role::TimeAdvance);
        stamp_stored_this_moment = true;
    }

    // One full gate block: 8 words for a fixed 1q gate, 11 for rz, 10 for
    // cnot (plus QSR commits under the alternate calibration).
    void gate_block(const GateOp& op, uint32_t ts) {
        KindKey kind = kind_key(op);
        la_base();
        stamp_pair(ts);
        li(kT1, ids.id(kind), kind_label(kind));
        sw(kT1, kTypeOff, Role::Mmio);
        li(kT2, op.qubits[0], "qubit id");
        Instruction& issue = em.emit("sw", {kT2, kA0, 8}, fmt::format("sw {}, {}(a0)", reg_name(kT2), kQubitOff),
                                     Role::GateIssue);
        issue.covers.push_back({kind, op.qubits});
        if (cfg.rv32_qsr_commit) sw(kT1, kQsrOff, Role::Mmio);
        if (op.type == GateType::CNOT) {
            li(kT3, op.qubits[1], "target id");
            sw(kT3, kQubit2Off, Role::Mmio);
            if (cfg.rv32_qsr_commit) sw(kT1, kQsrOff, Role::Mmio);
        } else if (op.type == GateType::RZ) {
            uint32_t fix = angle_fix32(*op.angle);
            em.emit("li", {kT3, static_cast<int64_t>(fix)},
                    fmt::format("li {}, {:#010x}  # angle", reg_name(kT3), fix), Role::DataLoad, 2);
            sw(kT3, kAngleOff, Role::Mmio);
        }
    }

    // Setup plus the 3-instruction loop body: 9 words for any run length.
    void loop_block(const KindKey& kind, const std::vector<const GateOp*>& run, uint32_t ts) {
        la_base();
        stamp_pair(ts);
        li(kT1, ids.id(kind), kind_label(kind));
        sw(kT1, kTypeOff, Role::Mmio);
        Instruction& issue = em.emit("sw", {kT2, kA0, 8},
                                     fmt::format("1: sw {}, {}(a0)  # qubit countdown", reg_name(kT2), kQubitOff),
                                     Role::GateIssue);
        for (const GateOp* op : run) issue.covers.push_back({kind, op->qubits});
        em.emit("addi", {kT2, kT2, -1}, fmt::format("addi {0}, {0}, -1", reg_name(kT2)), Role::Mmio);
        em.emit("bne", {kT2, 0, -8}, fmt::format("bne {}, zero, 1b", reg_name(kT2)), Role::Branch);
    }

    // One mask-form block per kind: the device accepts a 32-bit qubit mask.
    void mask_block(const KindKey& kind, const std::vector<const GateOp*>& gates, uint32_t ts) {
        la_base();
        stamp_pair(ts);
        li(kT1, ids.id(kind), kind_label(kind));
        sw(kT1, kTypeOff, Role::Mmio);
        uint32_t mask = 0;
        for (const GateOp* op : gates) mask |= 1u << op->qubits[0];
        em.emit("li", {kT2, static_cast<int64_t>(mask)}, fmt::format("li {}, {:#010x}  # qubit mask", reg_name(kT2), mask),
                Role::MaskLoad, 2);
        Instruction& issue = em.emit("sw", {kT2, kA0, 8}, fmt::format("sw {}, {}(a0)  # mask", reg_name(kT2), kQubitOff),
                                     Role::GateIssue);
        for (const GateOp* op : gates) issue.covers.push_back({kind, op->qubits});
        if (cfg.rv32_qsr_commit) sw(kT1, kQsrOff, Role::Mmio);
    }
};

bool loop_compressible(GateType t) {
    switch (t) {
        case GateType::X90:
        case GateType::Y90:
        case GateType::X180:
        case GateType::Y180:
        case GateType::CUSTOM:
            return true;
        default:
            return false;
    }
}

}  // namespace

InstructionStream encode_rv32(const Circuit& c, const CostModelConfig& cfg, Strategy strategy) {
    if (strategy == Strategy::MaskOnly && c.num_qubits > 32) {
        throw EncodeError("rv32 mask strategy is limited by the register width to 32 qubits");
    }
    InstructionStream stream;
    stream.isa = Isa::rv32();
    stream.strategy = strategy;
    Rv32Encoder enc{{&stream}, cfg, {}, false};

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        enc.em.timestamp = m.timestamp;
        enc.stamp_stored_this_moment = false;
        if (m.ops.empty()) {
            enc.em.emit("sw", {0, kA0, 12}, fmt::format("sw zero, {}(a0)  # stamp tick", kTickOff), Role::TimeAdvance);
            enc.em.close_moment(m.timestamp);
            continue;
        }
        for (const auto& [kind, gates] : detail::kind_groups(m)) {
            if (strategy == Strategy::MaskOnly && !is_two_qubit(kind.type) && kind.type != GateType::RZ) {
                enc.mask_block(kind, gates, m.timestamp);
                continue;
            }
            if (strategy != Strategy::ImmediateOnly && loop_compressible(kind.type)) {
                std::vector<uint32_t> qubits;
                for (const GateOp* op : gates) qubits.push_back(op->qubits[0]);
                for (auto [lo, hi] : detail::ascending_runs(qubits)) {
                    std::vector<const GateOp*> run(gates.begin() + lo, gates.begin() + hi);
                    if (run.size() >= cfg.rv32_loop_threshold) {
                        enc.loop_block(kind, run, m.timestamp);
                    } else {
                        for (const GateOp* op : run) enc.gate_block(*op, m.timestamp);
                    }
                }
                continue;
            }
            for (const GateOp* op : gates) enc.gate_block(*op, m.timestamp);
        }
        enc.em.close_moment(m.timestamp);
    }
    stream.registers_used = {"a0", "t0", "t1", "t2", "t3"};
    return stream;
}

}  // namespace qcp
