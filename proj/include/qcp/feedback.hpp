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

#include <set>

#include "qcp/circuit.hpp"
#include "qcp/config.hpp"
#include "qcp/instruction.hpp"

namespace qcp {

/// A repeated measurement-dependence shape: instances agree on the distance
/// between measured and dependent qubit (compared by magnitude; the signed
/// value of the first instance is kept for reporting) and on the kind set of
/// the conditionally applied gates.
struct FeedbackPattern {
    int64_t qubit_offset = 0;
    std::vector<KindKey> kinds;  // sorted, deduplicated
    struct Instance {
        uint32_t measure_ts = 0;
        uint32_t apply_ts = 0;
        uint32_t measured_qubit = 0;
        friend bool operator==(const Instance&, const Instance&) = default;
    };
    std::vector<Instance> instances;
};

/// Partitions all conditional ops into maximal patterns; ops that fit no
/// multi-instance pattern come back as singletons.
std::vector<FeedbackPattern> detect_patterns(const Circuit& c);

enum class FeedbackStrategy : uint8_t { Branch, MaskPattern };

struct FeedbackEncoding {
    FeedbackStrategy strategy = FeedbackStrategy::Branch;
    InstructionStream stream;
    /// Static words attributable to the feedback itself (test/branch/apply
    /// sequences and mask prologues; measurement scaffolding and stamp
    /// control excluded so strategies compare like for like).
    uint32_t feedback_words = 0;
    /// Dynamic executed-instruction bounds across measurement outcomes.
    uint32_t min_executed = 0;
    uint32_t max_executed = 0;
};

/// Encodes a feedback circuit under one strategy.
///
/// Branch: per conditional gate, a three-word test sequence (shift, mask,
/// conditional branch) in front of the gate word. eQASM additionally pays
/// one move-from-special-register word per 7-qubit section of referenced
/// measurement results.
///
/// MaskPattern (QUASAR only): per pattern kind, a bit-manipulation prologue
/// on the measurement result register (constant, and, shift — plus a
/// bitwise-not word when the expected value is 0) feeding one mask-form gate
/// word; no branches, so the executed path is outcome independent.
///
/// Throws EncodeError for MaskPattern on eQASM (no shift instructions) or
/// RV32-MMIO, and for MaskPattern when no pattern exists.
FeedbackEncoding encode_feedback(const Circuit& c, const Isa& isa, FeedbackStrategy strategy,
                                 const CostModelConfig& cfg = {});

/// Expected executed instructions when `fraction_true` of the branch
/// conditions are true (true = branch taken = gate skipped): linear between
/// max (all gates applied) and min. MaskPattern encodings are constant.
double dynamic_path_length(const FeedbackEncoding& enc, double fraction_true);

/// strategy,static_words,static_bytes,min_executed,max_executed,reduction_vs_branch
std::string feedback_comparison_csv(const Circuit& c, const CostModelConfig& cfg = {});

}  // namespace qcp
