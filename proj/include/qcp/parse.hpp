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
#include <string_view>

#include "qcp/circuit.hpp"

namespace qcp {

// Line-oriented circuit text:
//
//   qubits <n>
//   ts <k>                      # strictly increasing per moment
//   <kind> q<i>                 # x90 y90 x180 y180 measure h, or a custom name
//   rz q<i> <angle-radians>
//   cnot q<i> q<j>              # control first
//   cphase q<i> q<j> <angle>
//   y90 q<i> if q<m>@<ts>==<0|1>
//
// '#' starts a comment, mnemonics are case-insensitive. parse and format are
// exact inverses on valid circuits (angles print with 17 significant digits).

Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit& c);

// JSON mirror of the same schema:
// {"qubits": n, "moments": [{"ts": k, "ops": [{"kind": "...", "qubits": [..],
//  "angle"?: x, "cond"?: {"qubit": m, "ts": t, "value": 0|1}}]}]}
Circuit parse_circuit_json(std::string_view text);
std::string format_circuit_json(const Circuit& c);

}  // namespace qcp
