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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcp {

/// Gate kinds. X90..Y180, RZ, CNOT and MEASURE form the native set a control
/// processor is expected to trigger directly. H and CPHASE are logical kinds
/// accepted by the builders/parser and removed by decompose_to_native().
/// CUSTOM carries a named single-qubit kind so circuits can exercise wide
/// gate-diversity without inventing physics for each entry.
enum class GateType : uint8_t {
    X90,
    Y90,
    X180,
    Y180,
    RZ,
    CNOT,
    MEASURE,
    H,
    CPHASE,
    CUSTOM,
};

bool is_native(GateType t);
bool is_two_qubit(GateType t);       // CNOT or CPHASE
bool carries_angle(GateType t);      // RZ or CPHASE
const char* mnemonic(GateType t);    // lowercase text-format name

/// Reference to an earlier measurement outcome gating a conditional op.
struct ConditionRef {
    uint32_t measured_qubit = 0;
    uint8_t expected_value = 1;   // gate applies when outcome == expected_value
    uint32_t source_timestamp = 0;

    friend bool operator==(const ConditionRef&, const ConditionRef&) = default;
};

/// One gate application. `qubits` holds [target] for single-qubit kinds and
/// [control, target] for two-qubit kinds.
struct GateOp {
    GateType type = GateType::X90;
    std::vector<uint32_t> qubits;
    std::optional<double> angle;          // radians; present iff carries_angle(type)
    std::optional<ConditionRef> cond;
    std::string custom;                   // name, CUSTOM only

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

GateOp make_1q(GateType t, uint32_t qubit);
GateOp make_custom(std::string name, uint32_t qubit);
GateOp make_rz(uint32_t qubit, double angle);
GateOp make_cnot(uint32_t control, uint32_t target);
GateOp make_measure(uint32_t qubit);

/// Ops applied at one time stamp. Ops are stored sorted by first qubit,
/// which is a total order because gates at one stamp act on disjoint qubits;
/// equality of moments is therefore plain field equality.
struct Moment {
    uint32_t timestamp = 0;
    std::vector<GateOp> ops;

    Moment() = default;
    Moment(uint32_t ts, std::vector<GateOp> ops);

    friend bool operator==(const Moment&, const Moment&) = default;
};

/// A time-stamped circuit: the unit every other module consumes.
struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Moment> moments;

    /// Throws ValidationError on: non-increasing timestamps, out-of-range
    /// qubits, a qubit used twice within a moment, malformed ops (arity or
    /// angle mismatch), or a ConditionRef that does not resolve to a MEASURE
    /// at an earlier stamp.
    void validate() const;

    size_t total_gates() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Distinct-kind identity used by metrics and encoders. Two RZ ops count as
/// the same kind only when their quantized angle indices match (the encoders
/// cannot tell them apart below that resolution, so neither do we).
struct KindKey {
    GateType type;
    std::string custom;     // CUSTOM only
    int32_t angle_index;    // RZ/CPHASE only, -1 otherwise

    friend bool operator==(const KindKey&, const KindKey&) = default;
    friend bool operator<(const KindKey& a, const KindKey& b) {
        if (a.type != b.type) return a.type < b.type;
        if (a.custom != b.custom) return a.custom < b.custom;
        return a.angle_index < b.angle_index;
    }
};

/// RZ angles are quantized to a 128-entry table (angle = 2*pi*k/128). This is
/// the resolution the QUASAR immediate form can carry next to a 9-bit qubit
/// index; eQASM similarly predeclares gates at compile time.
inline constexpr int kAngleTableSize = 128;
int32_t quantize_angle(double radians);
double angle_from_index(int32_t index);

KindKey kind_key(const GateOp& op, bool angle_sensitive = true);
std::string kind_label(const KindKey& k);

}  // namespace qcp
