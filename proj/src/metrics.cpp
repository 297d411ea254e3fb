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

#include "qcp/metrics.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

MomentMetrics moment_metrics(const Moment& m, uint32_t num_qubits, bool angle_sensitive) {
    if (m.ops.empty()) throw ValidationError("moment_metrics: empty moment");
    MomentMetrics out;
    out.timestamp = m.timestamp;
    out.qubit_count = num_qubits;
    for (const GateOp& op : m.ops) {
        out.gate_count += 1;
        if (is_two_qubit(op.type)) out.two_qubit_count += 1;
        out.per_kind_counts[kind_key(op, angle_sensitive)] += 1;
    }
    out.diversity = static_cast<uint32_t>(out.per_kind_counts.size());
    out.max_per_kind = 0;
    out.min_per_kind = out.gate_count;
    for (const auto& [kind, count] : out.per_kind_counts) {
        out.max_per_kind = std::max(out.max_per_kind, count);
        out.min_per_kind = std::min(out.min_per_kind, count);
    }
    out.balanced = out.max_per_kind == out.min_per_kind;
    return out;
}

CircuitProfile profile(const Circuit& c, bool angle_sensitive) {
    CircuitProfile p;
    for (const Moment& m : c.moments) {
        if (m.ops.empty()) continue;
        p.per_moment.push_back(moment_metrics(m, c.num_qubits, angle_sensitive));
        const MomentMetrics& mm = p.per_moment.back();
        for (const auto& [kind, count] : mm.per_kind_counts) p.kind_histogram[kind] += count;
        p.max_diversity = std::max(p.max_diversity, mm.diversity);
    }
    if (!p.per_moment.empty()) {
        double sum = 0.0;
        for (const MomentMetrics& mm : p.per_moment) sum += mm.density();
        p.mean_density = sum / static_cast<double>(p.per_moment.size());
    }
    return p;
}

std::string metrics_csv(const CircuitProfile& p) {
    std::string out = "ts,gates,density,diversity,balance,max_per_kind,min_per_kind\n";
    for (const MomentMetrics& m : p.per_moment) {
        out += fmt::format("{},{},{:.6g},{},{},{},{}\n", m.timestamp, m.gate_count, m.density(), m.diversity,
                           m.balanced ? "balanced" : "unbalanced", m.max_per_kind, m.min_per_kind);
    }
    return out;
}

}  // namespace qcp
