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

// Internal helpers shared by the encoder backends.

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcp/circuit.hpp"
#include "qcp/error.hpp"
#include "qcp/instruction.hpp"

namespace qcp::detail {

/// Stamp delta emitted at the end of moment `i` (advance to the next stamp;
/// the final moment closes with +1).
inline uint32_t stamp_delta(const Circuit& c, size_t i) {
    if (i + 1 < c.moments.size()) return c.moments[i + 1].timestamp - c.moments[i].timestamp;
    return 1;
}

inline std::map<KindKey, std::vector<const GateOp*>> kind_groups(const Moment& m) {
    std::map<KindKey, std::vector<const GateOp*>> groups;
    for (const GateOp& op : m.ops) groups[kind_key(op)].push_back(&op);
    return groups;
}

/// Stable small integer for a gate kind within one circuit: fixed ids for
/// the base kinds, then custom kinds. Canonical names u00..u27 map straight
/// to their slot so streams stay comparable across circuits.
class KindIds {
  public:
    uint32_t id(const KindKey& k) {
        switch (k.type) {
            case GateType::X90: return 1;
            case GateType::Y90: return 2;
            case GateType::X180: return 3;
            case GateType::Y180: return 4;
            case GateType::RZ: return 5;
            case GateType::CNOT: return 6;
            case GateType::MEASURE: return 7;
            default: break;
        }
        if (k.custom.size() >= 2 && k.custom[0] == 'u') {
            uint32_t v = 0;
            bool digits = true;
            for (size_t i = 1; i < k.custom.size(); ++i) {
                if (!isdigit(static_cast<unsigned char>(k.custom[i]))) {
                    digits = false;
                    break;
                }
                v = v * 10 + (k.custom[i] - '0');
            }
            if (digits && v < 100) return 16 + v;
        }
        auto [it, inserted] = assigned_.try_emplace(k.custom, next_);
        if (inserted) ++next_;
        return it->second;
    }

  private:
    std::map<std::string, uint32_t> assigned_;
    uint32_t next_ = 116;
};

inline const char* quasar_imm_mnemonic(const KindKey& k) {
    switch (k.type) {
        case GateType::X90: return "qx90i";
        case GateType::Y90: return "qy90i";
        case GateType::X180: return "qx180i";
        case GateType::Y180: return "qy180i";
        case GateType::RZ: return "qrzi";
        case GateType::CNOT: return "qcnoti";
        case GateType::MEASURE: return "qmeasi";
        case GateType::CUSTOM: return "qgi";
        default: throw EncodeError(fmt::format("quasar: unencodable kind '{}'", kind_label(k)));
    }
}

inline const char* quasar_mask_mnemonic(const KindKey& k) {
    switch (k.type) {
        case GateType::X90: return "qx90m";
        case GateType::Y90: return "qy90m";
        case GateType::X180: return "qx180m";
        case GateType::Y180: return "qy180m";
        case GateType::RZ: return "qrzm";
        case GateType::CNOT: return "qcnotm";
        case GateType::MEASURE: return "qmeasm";
        case GateType::CUSTOM: return "qgm";
        default: throw EncodeError(fmt::format("quasar: unencodable kind '{}'", kind_label(k)));
    }
}

/// Maximal runs of consecutive ascending qubits (used by the RV32 loop
/// compression and the qV run descriptors).
inline std::vector<std::pair<size_t, size_t>> ascending_runs(const std::vector<uint32_t>& sorted_qubits) {
    std::vector<std::pair<size_t, size_t>> runs;  // [begin, end)
    size_t i = 0;
    while (i < sorted_qubits.size()) {
        size_t j = i + 1;
        while (j < sorted_qubits.size() && sorted_qubits[j] == sorted_qubits[j - 1] + 1) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    return runs;
}

struct Emitter {
    InstructionStream* stream;
    uint32_t timestamp = 0;
    uint32_t moment_words = 0;
    uint32_t moment_data = 0;

    Instruction& emit(std::string mnemonic, std::vector<int64_t> args, std::string text, Role role,
                      uint32_t words = 1) {
        Instruction inst;
        inst.mnemonic = std::move(mnemonic);
        inst.args = std::move(args);
        inst.text = std::move(text);
        inst.words = words;
        inst.role = role;
        inst.timestamp = timestamp;
        moment_words += words;
        stream->instructions.push_back(std::move(inst));
        return stream->instructions.back();
    }

    void close_moment(uint32_t ts) {
        stream->moments.push_back({ts, moment_words, moment_data});
        stream->data_words += moment_data;
        moment_words = 0;
        moment_data = 0;
    }
};

}  // namespace qcp::detail
