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
#include <string>
#include <vector>

#include "qcp/instruction.hpp"

namespace qcp {

// QUASAR: a greenfield RISC-V extension in the '10' opcode-prefix space
// (which the compressed 'C' extension would otherwise occupy). Every
// instruction is one 32-bit word:
//
//   [1:0]  = 0b10 quantum space        [6:2] = opcode (1..31)
//
//   1q immediate   qubit[15:7] (9 bits, 512 qubits)  kind/angle[22:16]
//   1q mask        rs1[11:7]  bank[15:12]            kind/angle[22:16]
//   2q immediate   control[15:7]  target[24:16]
//   2q mask        rs1[11:7] bank1[15:12] rs2[20:16] bank2[24:21]
//   measure imm    qubit[15:7]  rd[20:16]
//   measure mask   rs1[11:7] bank[15:12] rd[20:16]
//   ts             delta[31:7] (relative advance of the time-stamp register)
//   tsr            rs1[11:7]
//   qmvmr          rd[11:7] bank[15:12] (measurement status file -> GPR)
//
// A mask register names qubits [32*bank, 32*bank+31]; 16 banks cover the
// same 512 qubits as the immediate form. RZ carries a 7-bit index into the
// 128-entry angle table of circuit.hpp. The two-qubit mask form pairs set
// bits of rs1 and rs2 by rank (i-th set control bit with i-th set target
// bit).

/// The 31 quantum mnemonics, in opcode order (opcode = index + 1).
const std::vector<std::string>& quasar_mnemonics();

bool is_quasar_mnemonic(const std::string& m);

/// Packs one instruction (quantum, or one of the supported RV32I classical
/// lines) into its 32-bit word. Throws IsaError on field overflow (e.g.
/// qubit index 512) or an unknown mnemonic.
uint32_t assemble_word(const Instruction& inst);

/// Little-endian word image of a QUASAR stream. `words(i)` corresponds to
/// `stream.instructions(i)` one-to-one: multi-word pseudo-ops never appear in
/// QUASAR streams (mask materialization is emitted as separate lui/addi or
/// load lines).
std::vector<uint32_t> assemble_quasar(const InstructionStream& stream);

/// Inverse of assemble_quasar on its image. Timestamps are reconstructed by
/// accumulating ts deltas from zero. Unknown words raise IsaError with the
/// word offset. Coverage annotations are not reconstructed (mask contents
/// are a run-time property).
InstructionStream disassemble_quasar(const std::vector<uint32_t>& words);

/// Classical RV32I subset used around the quantum extension:
/// lui addi andi ori xori slli srli add sub and or xor lw beq bne.
bool is_classical_mnemonic(const std::string& m);

/// Registers x0..x31 rendered with ABI names (zero, ra, sp, gp, tp, t0..).
std::string reg_name(uint32_t x);

}  // namespace qcp
