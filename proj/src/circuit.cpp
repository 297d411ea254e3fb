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

#include "qcp/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

bool is_native(GateType t) {
    switch (t) {
        case GateType::H:
        case GateType::CPHASE:
            return false;
        default:
            return true;
    }
}

bool is_two_qubit(GateType t) {
    return t == GateType::CNOT || t == GateType::CPHASE;
}

bool carries_angle(GateType t) {
    return t == GateType::RZ || t == GateType::CPHASE;
}

const char* mnemonic(GateType t) {
    switch (t) {
        case GateType::X90: return "x90";
        case GateType::Y90: return "y90";
        case GateType::X180: return "x180";
        case GateType::Y180: return "y180";
        case GateType::RZ: return "rz";
        case GateType::CNOT: return "cnot";
        case GateType::MEASURE: return "measure";
        case GateType::H: return "h";
        case GateType::CPHASE: return "cphase";
        case GateType::CUSTOM: return "custom";
    }
    return "?";
}

GateOp make_1q(GateType t, uint32_t qubit) {
    GateOp op;
    op.type = t;
    op.qubits = {qubit};
    return op;
}

GateOp make_custom(std::string name, uint32_t qubit) {
    GateOp op;
    op.type = GateType::CUSTOM;
    op.qubits = {qubit};
    op.custom = std::move(name);
    return op;
}

GateOp make_rz(uint32_t qubit, double angle) {
    GateOp op;
    op.type = GateType::RZ;
    op.qubits = {qubit};
    op.angle = angle;
    return op;
}

GateOp make_cnot(uint32_t control, uint32_t target) {
    GateOp op;
    op.type = GateType::CNOT;
    op.qubits = {control, target};
    return op;
}

GateOp make_measure(uint32_t qubit) {
    GateOp op;
    op.type = GateType::MEASURE;
    op.qubits = {qubit};
    return op;
}

Moment::Moment(uint32_t ts, std::vector<GateOp> moment_ops) : timestamp(ts), ops(std::move(moment_ops)) {
    std::stable_sort(ops.begin(), ops.end(), [](const GateOp& a, const GateOp& b) {
        return a.qubits.front() < b.qubits.front();
    });
}

static void validate_op(const GateOp& op, uint32_t num_qubits, size_t moment_index) {
    size_t want = is_two_qubit(op.type) ? 2 : 1;
    if (op.qubits.size() != want) {
        throw ValidationError(
            fmt::format("moment {}: {} expects {} qubit operand(s), got {}", moment_index, mnemonic(op.type), want,
                        op.qubits.size()),
            moment_index);
    }
    if (want == 2 && op.qubits[0] == op.qubits[1]) {
        throw ValidationError(fmt::format("moment {}: duplicate qubit in two-qubit gate", moment_index), moment_index);
    }
    for (uint32_t q : op.qubits) {
        if (q >= num_qubits) {
            throw ValidationError(fmt::format("moment {}: qubit q{} out of range (circuit has {})", moment_index, q,
                                              num_qubits),
                                  moment_index);
        }
    }
    if (carries_angle(op.type) != op.angle.has_value()) {
        throw ValidationError(fmt::format("moment {}: {} angle operand mismatch", moment_index, mnemonic(op.type)),
                              moment_index);
    }
    if ((op.type == GateType::CUSTOM) != !op.custom.empty()) {
        throw ValidationError(fmt::format("moment {}: custom-kind name mismatch", moment_index), moment_index);
    }
}

void Circuit::validate() const {
    if (num_qubits == 0) {
        throw ValidationError("circuit must have at least one qubit");
    }
    // (source_timestamp, qubit) pairs holding a MEASURE, for condition checks.
    std::set<std::pair<uint32_t, uint32_t>> measures;
    int64_t prev_ts = -1;
    for (size_t m = 0; m < moments.size(); ++m) {
        const Moment& moment = moments[m];
        if (static_cast<int64_t>(moment.timestamp) <= prev_ts) {
            throw ValidationError(fmt::format("moment {}: timestamp {} not strictly increasing", m, moment.timestamp),
                                  m);
        }
        prev_ts = moment.timestamp;
        std::set<uint32_t> used;
        for (const GateOp& op : moment.ops) {
            validate_op(op, num_qubits, m);
            for (uint32_t q : op.qubits) {
                if (!used.insert(q).second) {
                    throw ValidationError(fmt::format("moment {}: qubit q{} used twice at ts {}", m, q,
                                                      moment.timestamp),
                                          m);
                }
            }
            if (op.type == GateType::MEASURE) {
                measures.insert({moment.timestamp, op.qubits[0]});
            }
        }
    }
    for (size_t m = 0; m < moments.size(); ++m) {
        for (const GateOp& op : moments[m].ops) {
            if (!op.cond) continue;
            const ConditionRef& c = *op.cond;
            if (c.expected_value > 1) {
                throw ValidationError(fmt::format("moment {}: condition expects a bit, got {}", m, c.expected_value),
                                      m);
            }
            if (c.source_timestamp >= moments[m].timestamp) {
                throw ValidationError(
                    fmt::format("moment {}: condition source ts {} does not precede ts {}", m, c.source_timestamp,
                                moments[m].timestamp),
                    m);
            }
            if (!measures.count({c.source_timestamp, c.measured_qubit})) {
                throw ValidationError(fmt::format("moment {}: dangling condition on q{}@{}", m, c.measured_qubit,
                                                  c.source_timestamp),
                                      m);
            }
        }
    }
}

size_t Circuit::total_gates() const {
    size_t n = 0;
    for (const Moment& m : moments) n += m.ops.size();
    return n;
}

int32_t quantize_angle(double radians) {
    const double step = 2.0 * M_PI / kAngleTableSize;
    auto idx = static_cast<int64_t>(std::llround(radians / step));
    idx %= kAngleTableSize;
    if (idx < 0) idx += kAngleTableSize;
    return static_cast<int32_t>(idx);
}

double angle_from_index(int32_t index) {
    return 2.0 * M_PI * static_cast<double>(index) / kAngleTableSize;
}

KindKey kind_key(const GateOp& op, bool angle_sensitive) {
    KindKey k;
    k.type = op.type;
    k.custom = op.custom;
    k.angle_index = (angle_sensitive && op.angle) ? quantize_angle(*op.angle) : -1;
    return k;
}

std::string kind_label(const KindKey& k) {
    if (k.type == GateType::CUSTOM) return k.custom;
    if (k.angle_index >= 0) return fmt::format("{}[{}]", mnemonic(k.type), k.angle_index);
    return mnemonic(k.type);
}

}  // namespace qcp
