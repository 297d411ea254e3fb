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

namespace qcp {

/// How a 32-bit mask constant is materialized in QUASAR streams:
/// LaPseudo is a single pc/gp-relative load word (one word of encoding, one
/// data-memory access at run time); LuiAddi is the two-immediate sequence
/// (two words, no memory access).
enum class MaskLoad : uint8_t { LaPseudo, LuiAddi };

/// Knobs of the per-ISA static cost models. Defaults reproduce the golden
/// QFT-32 per-moment costs exactly (see tests/acceptance.cpp).
struct CostModelConfig {
    // eQASM: qubits partition into sections of `eqasm_section_size` for SMIS
    // target declarations; two-qubit pair declarations (SMIT) cover directed
    // couplings through a sliding window of `eqasm_coupling_mask_bits`; gate
    // issues pack `eqasm_bundle_slots` per bundle word; each SMIT group
    // carries `eqasm_twoq_extra_words` of extra setup (golden-table value).
    uint32_t eqasm_section_size = 7;
    uint32_t eqasm_bundle_slots = 2;
    uint32_t eqasm_coupling_mask_bits = 16;
    uint32_t eqasm_twoq_extra_words = 1;

    // RV32-MMIO: device-base materialization words per gate block, and the
    // run length at which identical gates on consecutive qubits compress
    // into a 3-instruction store/increment/branch loop.
    uint32_t rv32_la_words = 2;
    uint32_t rv32_loop_threshold = 4;
    // Alternate calibration: append a QSR commit store per gate issue (and
    // per qubit-id block for CNOT). Off by default; grover_calibration()
    // turns it on to reproduce the golden Grover cost row.
    bool rv32_qsr_commit = false;

    MaskLoad quasar_mask_load = MaskLoad::LaPseudo;
    uint32_t quasar_mask_load_words() const { return quasar_mask_load == MaskLoad::LaPseudo ? 1 : 2; }

    static CostModelConfig defaults() { return {}; }
    static CostModelConfig grover_calibration() {
        CostModelConfig c;
        c.rv32_qsr_commit = true;
        return c;
    }
};

/// ICE core timing knobs. The canonical 5-stage in-order values: one bubble
/// when a load feeds the next instruction, one extra cycle per data-memory
/// access, two bubbles per taken branch, full operand forwarding.
struct CoreConfig {
    double frequency_hz = 2.0e9;
    uint32_t load_use_bubbles = 1;
    uint32_t memory_load_stall = 1;
    uint32_t branch_taken_bubbles = 2;
    bool forwarding = true;

    std::string label() const;

    /// The five frequencies of the reference study: 200/500 MHz (FPGA),
    /// 1/1.5/2 GHz (ASIC).
    static std::vector<CoreConfig> reference_sweep();
};

}  // namespace qcp
