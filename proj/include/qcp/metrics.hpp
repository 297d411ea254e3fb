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

#include <map>
#include <string>

#include "qcp/circuit.hpp"

namespace qcp {

/// The three characterization parameters for one time stamp. Density divides
/// by the full circuit width; the two-qubit presentation (gates per half of
/// the qubits) is exposed separately via two_qubit_density().
struct MomentMetrics {
    uint32_t timestamp = 0;
    uint32_t gate_count = 0;          // two-qubit gates count once
    uint32_t two_qubit_count = 0;
    uint32_t qubit_count = 0;         // circuit width
    uint32_t diversity = 0;           // distinct kinds with nonzero count
    bool balanced = true;             // all nonzero per-kind counts equal
    uint32_t max_per_kind = 0;
    uint32_t min_per_kind = 0;
    std::map<KindKey, uint32_t> per_kind_counts;

    double density() const { return static_cast<double>(gate_count) / qubit_count; }
    double two_qubit_density() const { return static_cast<double>(two_qubit_count) / (qubit_count / 2.0); }
};

struct CircuitProfile {
    std::vector<MomentMetrics> per_moment;
    double mean_density = 0.0;
    uint32_t max_diversity = 0;
    std::map<KindKey, uint32_t> kind_histogram;  // totals across moments
};

/// Metrics for one moment. When angle_sensitive is set (the default), RZ ops
/// with distinct quantized angle indices count as distinct kinds. Throws on
/// an empty moment.
MomentMetrics moment_metrics(const Moment& m, uint32_t num_qubits, bool angle_sensitive = true);

/// Per-moment metrics plus aggregates; an empty circuit gives an empty
/// profile.
CircuitProfile profile(const Circuit& c, bool angle_sensitive = true);

/// One row per moment: ts,gates,density,diversity,balance,max_per_kind,min_per_kind
std::string metrics_csv(const CircuitProfile& p);

}  // namespace qcp
