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

#include <json.hpp>

#include "qcp/error.hpp"
#include "qcp/parse.hpp"

namespace qcp {

using nlohmann::json;

namespace {

GateType kind_from_string(const std::string& s, std::string* custom) {
    for (GateType t : {GateType::X90, GateType::Y90, GateType::X180, GateType::Y180, GateType::RZ, GateType::CNOT,
                       GateType::MEASURE, GateType::H, GateType::CPHASE}) {
        if (s == mnemonic(t)) return t;
    }
    *custom = s;
    return GateType::CUSTOM;
}

}  // namespace

Circuit parse_circuit_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 1, 1);
    }
    Circuit c;
    try {
        c.num_qubits = doc.at("qubits").get<uint32_t>();
        for (const json& jm : doc.at("moments")) {
            std::vector<GateOp> ops;
            for (const json& jo : jm.at("ops")) {
                GateOp op;
                op.type = kind_from_string(jo.at("kind").get<std::string>(), &op.custom);
                op.qubits = jo.at("qubits").get<std::vector<uint32_t>>();
                if (jo.contains("angle")) op.angle = jo["angle"].get<double>();
                if (jo.contains("cond")) {
                    ConditionRef cond;
                    cond.measured_qubit = jo["cond"].at("qubit").get<uint32_t>();
                    cond.source_timestamp = jo["cond"].at("ts").get<uint32_t>();
                    cond.expected_value = jo["cond"].at("value").get<uint8_t>();
                    op.cond = cond;
                }
                ops.push_back(std::move(op));
            }
            c.moments.emplace_back(jm.at("ts").get<uint32_t>(), std::move(ops));
        }
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 1, 1);
    }
    c.validate();
    return c;
}

std::string format_circuit_json(const Circuit& c) {
    json doc;
    doc["qubits"] = c.num_qubits;
    doc["moments"] = json::array();
    for (const Moment& m : c.moments) {
        json jm;
        jm["ts"] = m.timestamp;
        jm["ops"] = json::array();
        for (const GateOp& op : m.ops) {
            json jo;
            jo["kind"] = op.type == GateType::CUSTOM ? op.custom : mnemonic(op.type);
            jo["qubits"] = op.qubits;
            if (op.angle) jo["angle"] = *op.angle;
            if (op.cond) {
                jo["cond"] = {{"qubit", op.cond->measured_qubit},
                              {"ts", op.cond->source_timestamp},
                              {"value", op.cond->expected_value}};
            }
            jm["ops"].push_back(std::move(jo));
        }
        doc["moments"].push_back(std::move(jm));
    }
    return doc.dump(2) + "\n";
}

}  // namespace qcp
