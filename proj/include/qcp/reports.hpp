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

#include <string>
#include <vector>

#include "qcp/builders.hpp"
#include "qcp/circuit.hpp"
#include "qcp/config.hpp"
#include "qcp/encode.hpp"

namespace qcp {

/// Program-size bands. The three named classes are bounded at 2 KiB, the
/// 16-32 KiB L1 window and the 512-2048 KiB L2 window; the gaps are labeled
/// explicitly instead of being forced into a named class.
enum class MemoryClass : uint8_t { Low, BetweenLowL1, L1, BetweenL1L2, L2, AboveL2 };

const char* memory_class_name(MemoryClass m);
MemoryClass classify_bytes(uint64_t bytes);

/// Whether classification uses instruction bytes only or instructions plus
/// the qV data image.
enum class ClassifyBy : uint8_t { Total, InstructionsOnly };

struct SizeEstimate {
    Isa isa;
    Strategy strategy = Strategy::Hybrid;
    uint64_t instruction_bytes = 0;
    uint64_t data_bytes = 0;
    uint64_t total_bytes = 0;
    MemoryClass memory_class = MemoryClass::Low;
};

SizeEstimate program_size(const Circuit& c, const Isa& isa, Strategy strategy = Strategy::Hybrid,
                          const CostModelConfig& cfg = {}, ClassifyBy basis = ClassifyBy::Total);

/// Circuit depth that fits a qubit lifetime: 100 us / 20 ns = 5000 moments
/// by default.
struct DepthModel {
    double qubit_lifetime_us = 100.0;
    double gate_time_ns = 20.0;
    uint32_t depth() const { return static_cast<uint32_t>(qubit_lifetime_us * 1000.0 / gate_time_ns); }
};

struct SweepCell {
    double density = 0.0;
    Isa isa;
    SizeEstimate size;
};

/// Synthetic lifetime-depth circuits at the reference densities (3%, 10%,
/// 50%, 75%, 100%), high gate diversity, encoded under every ISA given.
std::vector<SweepCell> density_sweep(uint32_t qubits, const DepthModel& depth, const std::vector<double>& densities,
                                     const std::vector<Isa>& isas, const CostModelConfig& cfg = {}, uint64_t seed = 1,
                                     ClassifyBy basis = ClassifyBy::Total);

std::string density_sweep_csv(const std::vector<SweepCell>& sweep);

/// Fig-style ISA capability summary: instruction words per 1q/2q gate,
/// register use, addressable qubits per mode, distinct gate operations.
struct IsaSummaryRow {
    std::string isa;
    uint32_t words_1q = 0;
    uint32_t words_2q = 0;
    std::string register_use;
    std::string max_qubits_index;
    std::string max_qubits_mask;
    std::string max_gate_ops;
};

std::vector<IsaSummaryRow> comparison_summary(const CostModelConfig& cfg = {});
std::string comparison_summary_csv(const std::vector<IsaSummaryRow>& rows);

}  // namespace qcp
