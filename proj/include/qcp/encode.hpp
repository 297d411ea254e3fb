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

#include "qcp/circuit.hpp"
#include "qcp/config.hpp"
#include "qcp/instruction.hpp"

namespace qcp {

/// Translates a circuit into one ISA's instruction stream. Every gate is
/// covered exactly once; each moment ends in exactly one TimeAdvance
/// instruction (QUASAR ts / eQASM qwait / MMIO stamp store / qV qts); the
/// per-moment word costs land in stream.moments. Strategy selects the qubit
/// addressing for QUASAR and RV32 (eQASM and qV accept Hybrid only).
/// Throws EncodeError on addressing-limit or strategy violations.
InstructionStream encode(const Circuit& c, const Isa& isa, const CostModelConfig& cfg = {},
                         Strategy strategy = Strategy::Hybrid);

/// Directed coupling bits a complete graph on n qubits needs: n*(n-1).
uint64_t eqasm_coupling_bits(uint32_t n);

/// Sequential coupling-mask instructions needed to cover those bits.
uint64_t eqasm_coupling_instructions(uint32_t n, const CostModelConfig& cfg = {});

struct IsaReport {
    Isa isa;
    Strategy strategy = Strategy::Hybrid;
    std::vector<MomentCost> moments;
    uint64_t instruction_words = 0;
    uint64_t instruction_bytes = 0;
    uint64_t data_words = 0;   // qV
    uint64_t data_bytes = 0;
    uint64_t data_bytes_packed = 0;  // qV vectors at their element width
    std::vector<std::string> registers_used;
};

struct EncodingReport {
    uint32_t num_qubits = 0;
    std::vector<IsaReport> per_isa;
};

EncodingReport encoding_report(const Circuit& c, const std::vector<Isa>& isas, const CostModelConfig& cfg = {},
                               Strategy strategy = Strategy::Hybrid);

/// Long-format CSV: isa,strategy,ts,words,data_words + per-ISA total rows.
std::string encoding_report_csv(const EncodingReport& r);
std::string encoding_report_json(const EncodingReport& r);

// Backend entry points (dispatched by encode; exposed for tests).
InstructionStream encode_rv32(const Circuit& c, const CostModelConfig& cfg, Strategy strategy);
InstructionStream encode_eqasm(const Circuit& c, const CostModelConfig& cfg, Strategy strategy);
InstructionStream encode_quasar(const Circuit& c, const CostModelConfig& cfg, Strategy strategy);
InstructionStream encode_qv(const Circuit& c, const Isa& isa, const CostModelConfig& cfg, Strategy strategy);

}  // namespace qcp
