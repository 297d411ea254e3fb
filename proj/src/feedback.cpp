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

#include "qcp/feedback.hpp"

#include <algorithm>
#include <cmath>

#include "encode_util.hpp"
#include "qcp/encode.hpp"
#include "qcp/error.hpp"
#include "qcp/quasar_isa.hpp"

// Measurement-dependent feedback. The Branch form tests each condition with
// shift/mask/branch around an immediate gate; the MaskPattern form turns the
// measurement word directly into a gate mask with plain logic instructions,
// so the same instructions run whatever was measured. eQASM gets no
// MaskPattern: without shift instructions the measured bits cannot be moved
// to the dependent-qubit positions.

namespace qcp {

namespace {

constexpr uint32_t kMeasReg = 2;   // x2 accumulates measurement outcomes
constexpr uint32_t kTestReg = 6;   // t1 scratch for Branch tests
constexpr uint32_t kMaskReg = 7;   // t2 holds the computed gate mask
constexpr uint32_t kConstReg = 5;  // t0 holds the position constant
constexpr uint32_t kInvReg = 28;   // t3 holds the inverted measurement word
constexpr int64_t kGp = 3;

struct PatternKey {
    uint64_t abs_offset;
    std::vector<KindKey> kinds;
    friend bool operator<(const PatternKey& a, const PatternKey& b) {
        if (a.abs_offset != b.abs_offset) return a.abs_offset < b.abs_offset;
        return a.kinds < b.kinds;
    }
};

int64_t signed_offset(const GateOp& op) {
    return static_cast<int64_t>(op.qubits[0]) - static_cast<int64_t>(op.cond->measured_qubit);
}

}  // namespace

std::vector<FeedbackPattern> detect_patterns(const Circuit& c) {
    c.validate();
    // First bucket conditional ops by (measure ts, apply ts, |offset|), then
    // merge buckets that agree on offset magnitude and kind set.
    struct Bucket {
        std::vector<const GateOp*> ops;
        int64_t first_signed = 0;
    };
    std::map<std::tuple<uint32_t, uint32_t, uint64_t>, Bucket> buckets;
    for (const Moment& m : c.moments) {
        for (const GateOp& op : m.ops) {
            if (!op.cond) continue;
            uint64_t mag = static_cast<uint64_t>(std::llabs(signed_offset(op)));
            auto key = std::make_tuple(op.cond->source_timestamp, m.timestamp, mag);
            Bucket& b = buckets[key];
            if (b.ops.empty()) b.first_signed = signed_offset(op);
            b.ops.push_back(&op);
        }
    }
    std::map<PatternKey, FeedbackPattern> merged;
    for (const auto& [key, bucket] : buckets) {
        std::vector<KindKey> kinds;
        for (const GateOp* op : bucket.ops) kinds.push_back(kind_key(*op));
        std::sort(kinds.begin(), kinds.end());
        kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
        PatternKey pk{std::get<2>(key), kinds};
        FeedbackPattern& p = merged.try_emplace(pk).first->second;
        if (p.instances.empty()) {
            p.qubit_offset = bucket.first_signed;
            p.kinds = kinds;
        }
        for (const GateOp* op : bucket.ops) {
            FeedbackPattern::Instance inst{std::get<0>(key), std::get<1>(key), op->cond->measured_qubit};
            if (std::find(p.instances.begin(), p.instances.end(), inst) == p.instances.end()) {
                p.instances.push_back(inst);
            }
        }
    }
    std::vector<FeedbackPattern> out;
    for (auto& [_, p] : merged) out.push_back(std::move(p));
    return out;
}

namespace {

struct QuasarFeedback {
    detail::Emitter em;
    const CostModelConfig& cfg;
    uint32_t feedback_words = 0;
    uint32_t skippable = 0;  // gate words a taken branch jumps over

    void measure(const GateOp& op) {
        Instruction& inst = em.emit("qmeasi", {op.qubits[0], kMeasReg},
                                    fmt::format("qmeasi {}, {}", op.qubits[0], reg_name(kMeasReg)), Role::GateIssue);
        inst.covers.push_back({kind_key(op), op.qubits});
    }

    void angle_setup(const KindKey& k, bool counted) {
        auto fix = static_cast<int64_t>(std::llround(static_cast<double>(k.angle_index) / kAngleTableSize * 262144.0));
        em.emit("qangt", {k.angle_index, fix}, fmt::format("qangt {}, {:#x}", k.angle_index, fix), Role::DataLoad);
        if (counted) feedback_words += 1;
    }

    void imm_gate(const GateOp& op, bool counted, bool with_angle_setup = true) {
        KindKey k = kind_key(op);
        if (k.type == GateType::RZ && with_angle_setup) angle_setup(k, counted);
        std::string mn = detail::quasar_imm_mnemonic(k);
        Instruction* inst;
        if (k.type == GateType::CNOT) {
            inst = &em.emit(mn, {op.qubits[0], op.qubits[1]}, fmt::format("{} {}, {}", mn, op.qubits[0], op.qubits[1]),
                            Role::GateIssue);
        } else if (k.type == GateType::RZ || k.type == GateType::CUSTOM) {
            int64_t fieldv = k.type == GateType::RZ ? k.angle_index : 0;
            if (k.type == GateType::CUSTOM) {
                detail::KindIds ids;
                fieldv = ids.id(k) - 16;
            }
            inst = &em.emit(mn, {op.qubits[0], fieldv}, fmt::format("{} {}, {}", mn, op.qubits[0], fieldv),
                            Role::GateIssue);
        } else {
            inst = &em.emit(mn, {op.qubits[0]}, fmt::format("{} {}", mn, op.qubits[0]), Role::GateIssue);
        }
        inst->covers.push_back({k, op.qubits});
        if (counted) feedback_words += 1;
    }

    void branch_gate(const GateOp& op) {
        const ConditionRef& c = *op.cond;
        // Angle setup is unconditional; only the gate word sits behind the
        // branch.
        if (op.type == GateType::RZ) angle_setup(kind_key(op), true);
        em.emit("srli", {kTestReg, kMeasReg, c.measured_qubit},
                fmt::format("srli {}, {}, {}", reg_name(kTestReg), reg_name(kMeasReg), c.measured_qubit),
                Role::DataLoad);
        em.emit("andi", {kTestReg, kTestReg, 1}, fmt::format("andi {0}, {0}, 1", reg_name(kTestReg)), Role::DataLoad);
        // Skip the gate word when the outcome does not match.
        const char* br = c.expected_value == 1 ? "beq" : "bne";
        em.emit(br, {kTestReg, 0, 8}, fmt::format("{} {}, zero, +8", br, reg_name(kTestReg)), Role::Branch);
        feedback_words += 3;
        imm_gate(op, true, /*with_angle_setup=*/false);
        skippable += 1;
    }

    void mask_group(const KindKey& kind, int64_t offset, uint8_t expected, const std::vector<const GateOp*>& ops) {
        uint32_t positions = 0;
        for (const GateOp* op : ops) positions |= 1u << op->cond->measured_qubit;
        if (cfg.quasar_mask_load == MaskLoad::LaPseudo) {
            auto off = static_cast<int64_t>(em.stream->pool.size() * 4);
            em.stream->pool.push_back(positions);
            em.emit("lw", {kConstReg, kGp, off},
                    fmt::format("lw {}, {}(gp)  # positions {:#010x}", reg_name(kConstReg), off, positions),
                    Role::MaskLoad);
            feedback_words += 1;
        } else {
            uint32_t hi = (positions + 0x800) >> 12;
            int32_t lo = static_cast<int32_t>(positions) - static_cast<int32_t>(hi << 12);
            em.emit("lui", {kConstReg, hi & 0xfffff}, fmt::format("lui {}, {:#x}", reg_name(kConstReg), hi & 0xfffff),
                    Role::MaskLoad);
            em.emit("addi", {kConstReg, kConstReg, lo}, fmt::format("addi {0}, {0}, {1}", reg_name(kConstReg), lo),
                    Role::MaskLoad);
            feedback_words += 2;
        }
        uint32_t source = kMeasReg;
        if (expected == 0) {
            em.emit("xori", {kInvReg, kMeasReg, -1},
                    fmt::format("xori {}, {}, -1", reg_name(kInvReg), reg_name(kMeasReg)), Role::DataLoad);
            feedback_words += 1;
            source = kInvReg;
        }
        em.emit("and", {kMaskReg, source, kConstReg},
                fmt::format("and {}, {}, {}", reg_name(kMaskReg), reg_name(source), reg_name(kConstReg)),
                Role::DataLoad);
        feedback_words += 1;
        if (offset != 0) {
            const char* sh = offset > 0 ? "slli" : "srli";
            em.emit(sh, {kMaskReg, kMaskReg, std::llabs(offset)},
                    fmt::format("{} {}, {}, {}", sh, reg_name(kMaskReg), reg_name(kMaskReg), std::llabs(offset)),
                    Role::DataLoad);
            feedback_words += 1;
        }
        if (kind.type == GateType::RZ) {
            auto fix = static_cast<int64_t>(std::llround(static_cast<double>(kind.angle_index) / kAngleTableSize * 262144.0));
            em.emit("qangt", {kind.angle_index, fix}, fmt::format("qangt {}, {:#x}", kind.angle_index, fix),
                    Role::DataLoad);
            feedback_words += 1;
        }
        std::string mn = detail::quasar_mask_mnemonic(kind);
        Instruction* inst;
        if (kind.type == GateType::RZ) {
            inst = &em.emit(mn, {kMaskReg, 0, kind.angle_index},
                            fmt::format("{} {}, 0, {}", mn, reg_name(kMaskReg), kind.angle_index), Role::GateIssue);
        } else if (kind.type == GateType::CUSTOM) {
            detail::KindIds ids;
            int64_t fieldv = ids.id(kind) - 16;
            inst = &em.emit(mn, {kMaskReg, 0, fieldv}, fmt::format("{} {}, 0, {}", mn, reg_name(kMaskReg), fieldv),
                            Role::GateIssue);
        } else {
            inst = &em.emit(mn, {kMaskReg, 0}, fmt::format("{} {}, 0", mn, reg_name(kMaskReg)), Role::GateIssue);
        }
        for (const GateOp* op : ops) inst->covers.push_back({kind, op->qubits});
        feedback_words += 1;
    }
};

FeedbackEncoding encode_feedback_quasar(const Circuit& c, FeedbackStrategy strategy, const CostModelConfig& cfg) {
    FeedbackEncoding enc;
    enc.strategy = strategy;
    enc.stream.isa = Isa::quasar();
    QuasarFeedback fb{{&enc.stream}, cfg, 0, 0};

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        fb.em.timestamp = m.timestamp;
        std::map<std::tuple<KindKey, int64_t, uint8_t>, std::vector<const GateOp*>> groups;
        for (const GateOp& op : m.ops) {
            if (!op.cond) {
                if (op.type == GateType::MEASURE) {
                    fb.measure(op);
                } else {
                    fb.imm_gate(op, false);
                }
                continue;
            }
            if (strategy == FeedbackStrategy::Branch) {
                fb.branch_gate(op);
            } else {
                groups[{kind_key(op), signed_offset(op), op.cond->expected_value}].push_back(&op);
            }
        }
        for (const auto& [key, ops] : groups) {
            fb.mask_group(std::get<0>(key), std::get<1>(key), std::get<2>(key), ops);
        }
        uint32_t delta = detail::stamp_delta(c, mi);
        fb.em.emit("ts", {delta}, fmt::format("ts {}", delta), Role::TimeAdvance);
        fb.em.close_moment(m.timestamp);
    }
    enc.stream.registers_used = {reg_name(kMeasReg), reg_name(kTestReg), reg_name(kMaskReg), reg_name(kConstReg)};
    enc.feedback_words = fb.feedback_words;
    auto total = static_cast<uint32_t>(enc.stream.instructions.size());
    enc.max_executed = total;
    enc.min_executed = total - fb.skippable;
    return enc;
}

FeedbackEncoding encode_feedback_eqasm(const Circuit& c, const CostModelConfig& cfg) {
    FeedbackEncoding enc;
    enc.strategy = FeedbackStrategy::Branch;
    enc.stream.isa = Isa::eqasm();
    detail::Emitter em{&enc.stream};
    uint32_t skippable = 0;

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        em.timestamp = m.timestamp;
        // Measured data reaches the general registers through one move per
        // 7-qubit section referenced by this moment's conditions.
        std::set<uint32_t> sections;
        for (const GateOp& op : m.ops) {
            if (op.cond) sections.insert(op.cond->measured_qubit / cfg.eqasm_section_size);
        }
        for (uint32_t s : sections) {
            em.emit("fmr", {s}, fmt::format("fmr r1, q{}", s), Role::DataLoad);
            enc.feedback_words += 1;
        }
        uint32_t sreg = 0;
        for (const GateOp& op : m.ops) {
            if (op.type == GateType::MEASURE && !op.cond) {
                em.emit("smis", {sreg}, fmt::format("smis s{}, {{{}}}", sreg, op.qubits[0]), Role::TargetSetup);
                Instruction& bs = em.emit("bs", {}, fmt::format("bs 1 measure s{}", sreg), Role::GateIssue);
                bs.covers.push_back({kind_key(op), op.qubits});
                ++sreg;
                continue;
            }
            if (!op.cond) {
                em.emit("smis", {sreg}, fmt::format("smis s{}, {{{}}}", sreg, op.qubits[0]), Role::TargetSetup);
                Instruction& bs = em.emit("bs", {}, fmt::format("bs 1 {} s{}", kind_label(kind_key(op)), sreg),
                                          Role::GateIssue);
                bs.covers.push_back({kind_key(op), op.qubits});
                ++sreg;
                continue;
            }
            // eQASM has no shifts: the test works on pre-masked comparisons,
            // still three classical words ahead of the gate.
            em.emit("andi", {1, 1, 1 << (op.cond->measured_qubit % 32)},
                    fmt::format("and r2, r1, {:#x}", 1 << (op.cond->measured_qubit % 32)), Role::DataLoad);
            em.emit("addi", {2, 0, op.cond->expected_value},
                    fmt::format("ldi r3, {}", op.cond->expected_value), Role::DataLoad);
            em.emit("beq", {1, 2, 12}, "br.ne skip", Role::Branch);
            em.emit("smis", {sreg}, fmt::format("smis s{}, {{{}}}", sreg, op.qubits[0]), Role::TargetSetup);
            Instruction& bs = em.emit("bs", {}, fmt::format("bs 1 {} s{}", kind_label(kind_key(op)), sreg),
                                      Role::GateIssue);
            bs.covers.push_back({kind_key(op), op.qubits});
            ++sreg;
            enc.feedback_words += 5;
            skippable += 2;  // the branch jumps the smis and the bundle
        }
        em.emit("qwait", {detail::stamp_delta(c, mi)}, fmt::format("qwait {}", detail::stamp_delta(c, mi)),
                Role::TimeAdvance);
        em.close_moment(m.timestamp);
    }
    auto total = static_cast<uint32_t>(enc.stream.instructions.size());
    enc.max_executed = total;
    enc.min_executed = total - skippable;
    return enc;
}

FeedbackEncoding encode_feedback_rv32(const Circuit& c, const CostModelConfig& cfg) {
    // Branch tests wrap the plain MMIO gate blocks; reuse the MMIO encoder
    // for the unconditional scaffolding by emitting per-op here.
    FeedbackEncoding enc;
    enc.strategy = FeedbackStrategy::Branch;
    enc.stream.isa = Isa::rv32();
    detail::Emitter em{&enc.stream};
    detail::KindIds ids;
    uint32_t skippable = 0;

    for (size_t mi = 0; mi < c.moments.size(); ++mi) {
        const Moment& m = c.moments[mi];
        em.timestamp = m.timestamp;
        bool stamped = false;
        auto gate_block = [&](const GateOp& op) {
            KindKey k = kind_key(op);
            em.emit("la", {10}, "la a0, QPU_BASE", Role::Mmio, cfg.rv32_la_words);
            em.emit("li", {5, m.timestamp}, fmt::format("li t0, {}", m.timestamp), Role::DataLoad);
            em.emit("sw", {5, 10, 0}, "sw t0, 0(a0)", stamped ? Role::Mmio : Role::TimeAdvance);
            stamped = true;
            em.emit("li", {6, ids.id(k)}, fmt::format("li t1, {}  # {}", ids.id(k), kind_label(k)), Role::DataLoad);
            em.emit("sw", {6, 10, 4}, "sw t1, 4(a0)", Role::Mmio);
            em.emit("li", {7, op.qubits[0]}, fmt::format("li t2, {}", op.qubits[0]), Role::DataLoad);
            Instruction& issue = em.emit("sw", {7, 10, 8}, "sw t2, 8(a0)", Role::GateIssue);
            issue.covers.push_back({k, op.qubits});
            return 8u;
        };
        for (const GateOp& op : m.ops) {
            if (!op.cond) {
                gate_block(op);
                continue;
            }
            em.emit("srli", {6, 2, op.cond->measured_qubit},
                    fmt::format("srli t1, x2, {}", op.cond->measured_qubit), Role::DataLoad);
            em.emit("andi", {6, 6, 1}, "andi t1, t1, 1", Role::DataLoad);
            const char* br = op.cond->expected_value == 1 ? "beq" : "bne";
            em.emit(br, {6, 0, 36}, fmt::format("{} t1, zero, skip", br), Role::Branch);
            uint32_t block_words = gate_block(op);
            enc.feedback_words += 3 + block_words;
            skippable += 7;  // the gate block instruction count
        }
        if (!stamped) {
            // Moment held no gate blocks (all-conditional with every branch
            // taken still stores the stamp once in this static model).
            em.emit("sw", {0, 10, 12}, "sw zero, 12(a0)  # stamp tick", Role::TimeAdvance);
        }
        em.close_moment(m.timestamp);
    }
    auto total = static_cast<uint32_t>(enc.stream.instructions.size());
    enc.max_executed = total;
    enc.min_executed = total - skippable;
    return enc;
}

}  // namespace

FeedbackEncoding encode_feedback(const Circuit& c, const Isa& isa, FeedbackStrategy strategy,
                                 const CostModelConfig& cfg) {
    c.validate();
    if (c.num_qubits > 32) {
        throw EncodeError("feedback encoding works on the 32-qubit measurement window");
    }
    if (strategy == FeedbackStrategy::MaskPattern) {
        if (isa.kind == IsaKind::Eqasm) {
            throw EncodeError("eqasm cannot host the mask pattern: no shift instructions");
        }
        if (isa.kind != IsaKind::Quasar) {
            throw EncodeError("mask-pattern feedback is a quasar encoding");
        }
        if (detect_patterns(c).empty()) {
            throw EncodeError("mask-pattern feedback requires a detected pattern");
        }
    }
    switch (isa.kind) {
        case IsaKind::Quasar:
            return encode_feedback_quasar(c, strategy, cfg);
        case IsaKind::Eqasm:
            return encode_feedback_eqasm(c, cfg);
        case IsaKind::Rv32Mmio:
            return encode_feedback_rv32(c, cfg);
        default:
            throw EncodeError("feedback encoding supports quasar, eqasm and rv32");
    }
}

double dynamic_path_length(const FeedbackEncoding& enc, double fraction_true) {
    if (fraction_true < 0.0 || fraction_true > 1.0) throw EncodeError("fraction must be in [0,1]");
    return fraction_true * enc.min_executed + (1.0 - fraction_true) * enc.max_executed;
}

std::string feedback_comparison_csv(const Circuit& c, const CostModelConfig& cfg) {
    std::string out = "isa,strategy,static_words,static_bytes,min_executed,max_executed,reduction_vs_branch\n";
    FeedbackEncoding branch = encode_feedback(c, Isa::quasar(), FeedbackStrategy::Branch, cfg);
    auto row = [&](const char* isa, const FeedbackEncoding& e) {
        double reduction = e.feedback_words > 0
                               ? static_cast<double>(branch.feedback_words) / e.feedback_words
                               : 0.0;
        out += fmt::format("{},{},{},{},{},{},{:.3g}\n", isa,
                           e.strategy == FeedbackStrategy::Branch ? "branch" : "maskpattern", e.feedback_words,
                           e.feedback_words * 4, e.min_executed, e.max_executed, reduction);
    };
    row("quasar", branch);
    if (!detect_patterns(c).empty()) {
        row("quasar", encode_feedback(c, Isa::quasar(), FeedbackStrategy::MaskPattern, cfg));
    }
    row("eqasm", encode_feedback(c, Isa::eqasm(), FeedbackStrategy::Branch, cfg));
    row("rv32", encode_feedback(c, Isa::rv32(), FeedbackStrategy::Branch, cfg));
    return out;
}

}  // namespace qcp
