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

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "qcp/builders.hpp"
#include "qcp/error.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {

void check_spec(const SyntheticSpec& s) {
    if (s.num_qubits == 0) throw ValidationError("synthetic: num_qubits must be positive");
    if (!(s.density > 0.0 && s.density <= 1.0)) throw ValidationError("synthetic: density must be in (0,1]");
    if (s.diversity == 0) throw ValidationError("synthetic: diversity must be >= 1");
    if (s.balance == Balance::Unbalanced && !(s.skew > 0.0 && s.skew < 1.0)) {
        throw ValidationError("synthetic: unbalanced skew must be in (0,1)");
    }
    if (s.two_qubit_fraction < 0.0 || s.two_qubit_fraction > 1.0) {
        throw ValidationError("synthetic: two_qubit_fraction must be in [0,1]");
    }
}

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.below(i)]);
    }
}

}  // namespace

Circuit build_synthetic(const SyntheticSpec& spec) {
    check_spec(spec);
    SplitMix64 rng(spec.seed);

    const uint32_t n = spec.num_qubits;
    uint32_t budget = static_cast<uint32_t>(std::llround(spec.density * n));
    if (budget == 0) budget = 1;
    if (budget > n) budget = n;

    // Each CNOT occupies two qubits, so budget + cnots must fit the register.
    uint32_t cnots = static_cast<uint32_t>(std::llround(spec.two_qubit_fraction * budget));
    while (cnots > 0 && budget + cnots > n) --cnots;

    const bool has_cnot_kind = cnots > 0;
    const uint32_t oneq_kinds = spec.diversity - (has_cnot_kind ? 1 : 0);
    const uint32_t oneq_gates = budget - cnots;
    if (has_cnot_kind && spec.diversity == 0) throw ValidationError("synthetic: unsatisfiable diversity");
    if (oneq_kinds > oneq_gates) {
        throw ValidationError(fmt::format("synthetic: diversity {} exceeds the gate budget ({} single-qubit gates)",
                                          spec.diversity, oneq_gates));
    }
    const size_t pool_size = synthetic_kind_pool(0).size();
    if (oneq_kinds > pool_size) {
        throw ValidationError(fmt::format("synthetic: diversity {} exceeds the {}-kind pool", spec.diversity,
                                          pool_size));
    }

    // Per-kind counts for the single-qubit portion.
    std::vector<uint32_t> counts(oneq_kinds, 0);
    if (oneq_kinds > 0) {
        if (spec.balance == Balance::Balanced) {
            uint32_t base = oneq_gates / oneq_kinds;
            uint32_t rem = oneq_gates % oneq_kinds;
            for (uint32_t k = 0; k < oneq_kinds; ++k) counts[k] = base + (k < rem ? 1 : 0);
        } else {
            auto dominant = static_cast<uint32_t>(std::ceil(spec.skew * budget));
            if (dominant < 1) dominant = 1;
            if (dominant + (oneq_kinds - 1) > oneq_gates) {
                throw ValidationError(fmt::format(
                    "synthetic: skew {} leaves no room for {} nonempty kinds in {} gates", spec.skew, oneq_kinds,
                    oneq_gates));
            }
            counts[0] = dominant;
            uint32_t rest = oneq_gates - dominant;
            if (oneq_kinds > 1) {
                uint32_t base = rest / (oneq_kinds - 1);
                uint32_t rem = rest % (oneq_kinds - 1);
                for (uint32_t k = 1; k < oneq_kinds; ++k) counts[k] = base + (k - 1 < rem ? 1 : 0);
            }
        }
    }

    Circuit c;
    c.num_qubits = n;
    for (uint32_t t = 0; t < spec.depth; ++t) {
        // Draw this moment's kind selection and qubit placement.
        std::vector<uint32_t> pool_idx(pool_size);
        std::iota(pool_idx.begin(), pool_idx.end(), 0u);
        shuffle(pool_idx, rng);

        std::vector<uint32_t> qubits(n);
        std::iota(qubits.begin(), qubits.end(), 0u);
        shuffle(qubits, rng);

        std::vector<GateOp> ops;
        size_t next_qubit = 0;
        for (uint32_t i = 0; i < cnots; ++i) {
            ops.push_back(make_cnot(qubits[next_qubit], qubits[next_qubit + 1]));
            next_qubit += 2;
        }
        for (uint32_t k = 0; k < oneq_kinds; ++k) {
            for (uint32_t g = 0; g < counts[k]; ++g) {
                uint32_t q = qubits[next_qubit++];
                std::vector<GateOp> pool = synthetic_kind_pool(q);
                ops.push_back(pool[pool_idx[k]]);
            }
        }
        c.moments.emplace_back(t, std::move(ops));
    }
    c.validate();
    return c;
}

}  // namespace qcp
