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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

enum class IsaKind : uint8_t { Rv32Mmio, Eqasm, Quasar, Qv };

/// ISA selector. The qV fields matter only when kind == Qv: `ves` is the
/// vector element size in bits (8/16/32, addressing 255/64Ki/4Gi qubits with
/// qubits enumerated from 1 so index 0 can mean nop), `mvl` the maximum
/// vector length.
struct Isa {
    IsaKind kind = IsaKind::Quasar;
    uint32_t ves = 8;
    uint32_t mvl = 32;

    static Isa rv32() { return {IsaKind::Rv32Mmio}; }
    static Isa eqasm() { return {IsaKind::Eqasm}; }
    static Isa quasar() { return {IsaKind::Quasar}; }
    static Isa qv(uint32_t ves = 8, uint32_t mvl = 32) { return {IsaKind::Qv, ves, mvl}; }

    /// Largest addressable qubit count under this ISA (and strategy caveats
    /// documented per backend).
    uint64_t max_qubits() const;
    friend bool operator==(const Isa&, const Isa&) = default;
};

const char* isa_name(IsaKind k);

enum class Strategy : uint8_t { ImmediateOnly, MaskOnly, Hybrid };
const char* strategy_name(Strategy s);

enum class Role : uint8_t { GateIssue, TargetSetup, TimeAdvance, MaskLoad, DataLoad, Branch, Mmio };

/// One gate delivered by a GateIssue instruction (mask and vector forms
/// deliver several).
struct CoveredGate {
    KindKey kind;
    std::vector<uint32_t> qubits;
    friend bool operator==(const CoveredGate&, const CoveredGate&) = default;
};

/// One assembly line. `args` are the semantic operand values (register
/// numbers, immediates, qubit indices) in the per-mnemonic order the
/// assembler expects; `text` is the rendered operand string. `words` is the
/// number of 32-bit words the line occupies (pseudo-ops may take two).
struct Instruction {
    std::string mnemonic;
    std::vector<int64_t> args;
    std::string text;
    uint32_t words = 1;
    uint32_t timestamp = 0;
    Role role = Role::GateIssue;
    std::vector<CoveredGate> covers;
};

/// Equality used by assemble/disassemble round trips: the semantic content,
/// not annotations (covers / rendered text are encoder-side analysis).
bool same_instruction(const Instruction& a, const Instruction& b);

/// Static word cost of one moment, aligned with the source circuit.
struct MomentCost {
    uint32_t timestamp = 0;
    uint32_t words = 0;
    uint32_t data_words = 0;  // qV only
};

struct InstructionStream {
    Isa isa;
    Strategy strategy = Strategy::Hybrid;
    std::vector<Instruction> instructions;
    std::vector<MomentCost> moments;
    uint32_t data_words = 0;               // qV index/gate/angle vectors
    std::vector<uint32_t> pool;            // QUASAR literal pool (mask constants)
    std::set<std::string> registers_used;

    size_t total_words() const;
    size_t total_instructions() const { return instructions.size(); }

    /// Gate multiset carried by GateIssue instructions, as (ts, kind, qubits)
    /// tuples sorted canonically; the coverage oracle compares this against
    /// the source circuit.
    std::vector<std::string> covered_gate_multiset() const;

    std::string to_asm() const;  // one instruction per line, '#' comments
};

/// Canonical (ts, kind, qubits) multiset of a circuit, comparable with
/// InstructionStream::covered_gate_multiset.
std::vector<std::string> circuit_gate_multiset(const Circuit& c, bool angle_sensitive = true);

}  // namespace qcp
