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
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

/// Quantum Fourier transform on n >= 2 qubits, already decomposed to the
/// native set and fully serialized (one gate per moment, matching the
/// reference per-moment gate multisets for n = 32):
///
///   for target i = 0..n-1:
///     H(q_i)                          -> y90 q_i | x180 q_i
///     for control j = i+1..n-1:
///       CPHASE(pi/2^(j-i), q_j, q_i)  -> rz | cnot | rz | cnot | rz
///
/// The trailing qubit-reversal swaps are omitted (the encoding study cares
/// about the gate stream, not the output ordering).
Circuit build_qft(uint32_t n);

/// One Grover diffusion-operator iteration on n >= 2 qubits:
/// H on all, X on all, then the conditional phase flip with q_{n-1} as the
/// target: H(q_{n-1}), a CNOT staircase down the register, rz(pi) at the
/// bottom, the mirrored staircase, and the mirrored H/X/H layers. The
/// multi-controlled phase core is realized as a parity-phase ladder, the
/// standard CNOT-staircase construction over the native set.
Circuit build_grover(uint32_t n);

enum class Balance : uint8_t { Balanced, Unbalanced };

/// Parameters for the synthetic generator. Output is a pure function of this
/// struct; the RNG is SplitMix64 seeded with `seed` (see rng.hpp).
struct SyntheticSpec {
    uint32_t num_qubits = 32;
    uint32_t depth = 1;
    double density = 1.0;             // (0, 1]: gates per moment / num_qubits
    uint32_t diversity = 1;           // distinct kinds per moment
    Balance balance = Balance::Balanced;
    double skew = 0.0;                // Unbalanced: dominant-kind fraction in (0,1)
    double two_qubit_fraction = 0.0;  // fraction of the gate budget issued as CNOT
    uint64_t seed = 0;
};

/// Deterministic synthetic circuit over the density/diversity/balance space.
/// Per moment: budget = round(density * num_qubits) gates, exactly
/// `diversity` kinds when satisfiable. Balanced splits the budget evenly
/// (counts differ by at most 1); Unbalanced(skew) gives one kind
/// ceil(skew * budget) gates and spreads the rest so every kind stays
/// nonempty. Single-qubit kinds are drawn from the 32-entry pool
/// {x90, y90, x180, y180, u00..u27}; a nonzero two_qubit_fraction adds CNOT
/// as one of the kinds on uniformly drawn disjoint pairs. Qubit placement is
/// a Fisher-Yates shuffle. Throws EncodeError-free ValidationError on an
/// unsatisfiable spec (diversity above the gate budget, or skew leaving some
/// kind empty).
Circuit build_synthetic(const SyntheticSpec& spec);

/// Rewrites logical H and CPHASE gates into the native set:
///   H          -> y90 then x180 on the same qubit, two moments
///   CPHASE(t)  -> rz(t/2) target | cnot | rz(-t/2) target | cnot | rz(t/2) control
/// Native gates pass through unchanged; expansions that would collide within
/// a moment are serialized into successive moments. Timestamps are
/// renumbered 0..k-1. Throws on kinds outside {native, H, CPHASE}.
Circuit decompose_to_native(const Circuit& c);

/// Measurement-feedback fragment used by the feedback study: `instances`
/// repetitions of [measure the low half on even qubits at ts 2k, then apply
/// gates on the odd qubits (offset +1, expected outcome 1) at ts 2k+1].
/// The conditional gates cycle through `kinds` distinct fixed-angle kinds.
Circuit build_feedback_fragment(uint32_t num_qubits, uint32_t kinds, uint32_t instances);

/// The 32 single-qubit kinds the synthetic generator draws from.
std::vector<GateOp> synthetic_kind_pool(uint32_t qubit);

}  // namespace qcp
