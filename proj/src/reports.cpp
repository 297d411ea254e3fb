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

#include "qcp/reports.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

const char* memory_class_name(MemoryClass m) {
    switch (m) {
        case MemoryClass::Low: return "low";
        case MemoryClass::BetweenLowL1: return "between-low-l1";
        case MemoryClass::L1: return "l1";
        case MemoryClass::BetweenL1L2: return "between-l1-l2";
        case MemoryClass::L2: return "l2";
        case MemoryClass::AboveL2: return "above-l2";
    }
    return "?";
}

MemoryClass classify_bytes(uint64_t bytes) {
    constexpr uint64_t kKi = 1024;
    if (bytes < 2 * kKi) return MemoryClass::Low;
    if (bytes < 16 * kKi) return MemoryClass::BetweenLowL1;
    if (bytes <= 32 * kKi) return MemoryClass::L1;
    if (bytes < 512 * kKi) return MemoryClass::BetweenL1L2;
    if (bytes <= 2048 * kKi) return MemoryClass::L2;
    return MemoryClass::AboveL2;
}

SizeEstimate program_size(const Circuit& c, const Isa& isa, Strategy strategy, const CostModelConfig& cfg,
                          ClassifyBy basis) {
    EncodingReport report = encoding_report(c, {isa}, cfg, strategy);
    const IsaReport& ir = report.per_isa.at(0);
    SizeEstimate est;
    est.isa = isa;
    est.strategy = strategy;
    est.instruction_bytes = ir.instruction_bytes;
    est.data_bytes = ir.data_bytes;
    est.total_bytes = ir.instruction_bytes + ir.data_bytes;
    est.memory_class =
        classify_bytes(basis == ClassifyBy::Total ? est.total_bytes : est.instruction_bytes);
    return est;
}

std::vector<SweepCell> density_sweep(uint32_t qubits, const DepthModel& depth, const std::vector<double>& densities,
                                     const std::vector<Isa>& isas, const CostModelConfig& cfg, uint64_t seed,
                                     ClassifyBy basis) {
    std::vector<SweepCell> out;
    for (double d : densities) {
        SyntheticSpec spec;
        spec.num_qubits = qubits;
        spec.depth = depth.depth();
        spec.density = d;
        auto gates = static_cast<uint32_t>(std::llround(d * qubits));
        if (gates == 0) gates = 1;
        spec.diversity = std::min<uint32_t>(gates, 32);
        spec.balance = Balance::Balanced;
        spec.seed = seed;
        Circuit c = build_synthetic(spec);
        for (const Isa& isa : isas) {
            SweepCell cell;
            cell.density = d;
            cell.isa = isa;
            cell.size = program_size(c, isa, Strategy::Hybrid, cfg, basis);
            out.push_back(cell);
        }
    }
    return out;
}

std::string density_sweep_csv(const std::vector<SweepCell>& sweep) {
    std::string out = "density,isa,instruction_bytes,data_bytes,total_bytes,memory_class\n";
    for (const SweepCell& cell : sweep) {
        out += fmt::format("{:.4g},{},{},{},{},{}\n", cell.density, isa_name(cell.isa.kind),
                           cell.size.instruction_bytes, cell.size.data_bytes, cell.size.total_bytes,
                           memory_class_name(cell.size.memory_class));
    }
    return out;
}

std::vector<IsaSummaryRow> comparison_summary(const CostModelConfig& cfg) {
    // 1q/2q words measured on one-gate moments, time control included (a
    // single gate plus its stamp advance is the minimal dispatch unit).
    Circuit one_q;
    one_q.num_qubits = 2;
    one_q.moments.emplace_back(0, std::vector<GateOp>{make_1q(GateType::Y90, 0)});
    Circuit two_q;
    two_q.num_qubits = 2;
    two_q.moments.emplace_back(0, std::vector<GateOp>{make_cnot(0, 1)});

    auto words_for = [&](const Circuit& c, const Isa& isa) {
        return static_cast<uint32_t>(encode(c, isa, cfg, Strategy::Hybrid).total_words());
    };

    std::vector<IsaSummaryRow> rows;
    {
        IsaSummaryRow r;
        r.isa = "rv32";
        r.words_1q = words_for(one_q, Isa::rv32());
        r.words_2q = words_for(two_q, Isa::rv32());
        r.register_use = "<=6 scratch";
        r.max_qubits_index = fmt::format("{}", 1ull << 32);
        r.max_qubits_mask = "32";
        r.max_gate_ops = "2^32 type word";
        rows.push_back(r);
    }
    {
        IsaSummaryRow r;
        r.isa = "eqasm";
        r.words_1q = words_for(one_q, Isa::eqasm());
        r.words_2q = words_for(two_q, Isa::eqasm());
        r.register_use = "1 target reg/group";
        r.max_qubits_index = "7 per section";
        r.max_qubits_mask = fmt::format("{} couplings/mask", cfg.eqasm_coupling_mask_bits);
        r.max_gate_ops = "compile-time table";
        rows.push_back(r);
    }
    {
        IsaSummaryRow r;
        r.isa = "quasar";
        r.words_1q = words_for(one_q, Isa::quasar());
        r.words_2q = words_for(two_q, Isa::quasar());
        r.register_use = "1/mask + 1 meas rd";
        r.max_qubits_index = "512";
        r.max_qubits_mask = "512";
        r.max_gate_ops = "31 mnemonics, 128 kind ids";
        rows.push_back(r);
    }
    for (uint32_t ves : {8u, 16u, 32u}) {
        IsaSummaryRow r;
        r.isa = fmt::format("qv/e{}", ves);
        r.words_1q = words_for(one_q, Isa::qv(ves));
        r.words_2q = words_for(two_q, Isa::qv(ves));
        r.register_use = "1 addr reg/vreg";
        r.max_qubits_index = fmt::format("{}", Isa::qv(ves).max_qubits());
        r.max_qubits_mask = "-";
        r.max_gate_ops = "256 id byte";
        rows.push_back(r);
    }
    return rows;
}

std::string comparison_summary_csv(const std::vector<IsaSummaryRow>& rows) {
    std::string out = "isa,words_1q,words_2q,register_use,max_qn_index,max_qn_mask,max_gate_ops\n";
    for (const IsaSummaryRow& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.isa, r.words_1q, r.words_2q, r.register_use,
                           r.max_qubits_index, r.max_qubits_mask, r.max_gate_ops);
    }
    return out;
}

}  // namespace qcp
