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

#include <functional>
#include <optional>

#include "qcp/circuit.hpp"
#include "qcp/config.hpp"
#include "qcp/instruction.hpp"

namespace qcp {

/// Code image plus the literal pool the mask loads read through gp.
struct QuasarProgram {
    std::vector<uint32_t> text;
    std::vector<uint32_t> data;
};

/// Measurement outcome oracle: bit for (timestamp, qubit). The replay model
/// never simulates quantum state; outcomes come from outside.
using OutcomeOracle = std::function<int(uint32_t timestamp, uint32_t qubit)>;

OutcomeOracle outcomes_fixed(int bit);
OutcomeOracle outcomes_seeded(uint64_t seed);

/// One gate handed to the backend queue, stamped with the time-stamp
/// register value at issue.
struct GateEvent {
    uint32_t timestamp = 0;
    KindKey kind;
    std::vector<uint32_t> qubits;
    uint64_t issue_cycle = 0;
};

/// Cycle accounting between consecutive TimeAdvance instructions.
struct TimestampTiming {
    uint32_t timestamp = 0;
    uint32_t instructions_executed = 0;
    uint64_t cycles = 0;

    double nanoseconds(double frequency_hz) const { return static_cast<double>(cycles) * 1e9 / frequency_hz; }
    bool meets_threshold(double frequency_hz, double threshold_ns = 20.0) const {
        return nanoseconds(frequency_hz) < threshold_ns;
    }
};

struct TraceLine {
    uint64_t cycle = 0;
    uint32_t pc = 0;          // word index
    std::string mnemonic;
    uint32_t stall_cycles = 0;
};

struct ReplayResult {
    std::vector<GateEvent> events;
    std::vector<TimestampTiming> timings;
    std::vector<TraceLine> trace;
    uint64_t total_cycles = 0;
    uint64_t total_instructions = 0;
};

/// Executes a QUASAR+RV32I word image on the 5-stage in-order core model:
/// one cycle per instruction, plus memory_load_stall per data-memory access,
/// load_use_bubbles when a load feeds the next instruction,
/// branch_taken_bubbles per taken branch; without forwarding any value used
/// within two instructions of its producer stalls (2 then 1 bubbles).
/// Throws ReplayError on undecodable words, out-of-range loads, or a
/// time-stamp regression.
ReplayResult replay(const QuasarProgram& program, const CoreConfig& core, const OutcomeOracle& outcomes);

/// Convenience: assemble a QUASAR stream and replay it.
ReplayResult replay(const InstructionStream& stream, const CoreConfig& core, const OutcomeOracle& outcomes);

/// Groups gate events back into a circuit (conditions are not
/// reconstructed). Throws on disjointness violations within a stamp.
Circuit events_to_circuit(const std::vector<GateEvent>& events, uint32_t num_qubits);

/// Per (moment, core) pass/fail of the gate-delivery deadline.
struct TimingCell {
    uint32_t timestamp = 0;
    uint64_t cycles = 0;
    double nanoseconds = 0.0;
    bool pass = false;
};

struct TimingMatrix {
    std::vector<CoreConfig> cores;
    std::vector<std::vector<TimingCell>> rows;  // [moment][core]
    double threshold_ns = 20.0;

    /// Worst moment latency per core, and whether every moment passes.
    bool all_pass(size_t core_index) const;
};

TimingMatrix timing_satisfaction(const Circuit& c, const Isa& isa, Strategy strategy,
                                 const std::vector<CoreConfig>& cores, const CostModelConfig& cfg = {},
                                 double threshold_ns = 20.0);

std::string timing_matrix_csv(const TimingMatrix& m);
std::string trace_text(const ReplayResult& r);
std::string gate_event_csv(const ReplayResult& r, double frequency_hz);

}  // namespace qcp
