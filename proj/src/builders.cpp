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

#include "qcp/builders.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "qcp/error.hpp"

namespace qcp {

namespace {

class MomentSink {
  public:
    void one(GateOp op) { moments_.push_back({std::move(op)}); }
    void layer(std::vector<GateOp> ops) { moments_.push_back(std::move(ops)); }

    Circuit finish(uint32_t num_qubits) {
        Circuit c;
        c.num_qubits = num_qubits;
        for (size_t i = 0; i < moments_.size(); ++i) {
            c.moments.emplace_back(static_cast<uint32_t>(i), std::move(moments_[i]));
        }
        c.validate();
        return c;
    }

  private:
    std::vector<std::vector<GateOp>> moments_;
};

void emit_h(MomentSink& sink, uint32_t q) {
    sink.one(make_1q(GateType::Y90, q));
    sink.one(make_1q(GateType::X180, q));
}

void emit_cphase(MomentSink& sink, uint32_t control, uint32_t target, double theta) {
    sink.one(make_rz(target, theta / 2));
    sink.one(make_cnot(control, target));
    sink.one(make_rz(target, -theta / 2));
    sink.one(make_cnot(control, target));
    sink.one(make_rz(control, theta / 2));
}

}  // namespace

Circuit build_qft(uint32_t n) {
    if (n < 2) throw ValidationError("qft needs at least 2 qubits");
    MomentSink sink;
    for (uint32_t i = 0; i < n; ++i) {
        emit_h(sink, i);
        for (uint32_t j = i + 1; j < n; ++j) {
            emit_cphase(sink, j, i, M_PI / std::pow(2.0, j - i));
        }
    }
    return sink.finish(n);
}

Circuit build_grover(uint32_t n) {
    if (n < 2) throw ValidationError("grover needs at least 2 qubits");
    MomentSink sink;
    auto all = [&](GateType t) {
        std::vector<GateOp> layer;
        for (uint32_t q = 0; q < n; ++q) layer.push_back(make_1q(t, q));
        return layer;
    };
    // H on all qubits, then X on all (x180 up to phase).
    sink.layer(all(GateType::Y90));
    sink.layer(all(GateType::X180));
    sink.layer(all(GateType::X180));
    // Conditional phase flip, target last qubit.
    uint32_t target = n - 1;
    emit_h(sink, target);
    for (uint32_t q = 0; q + 1 < n; ++q) sink.one(make_cnot(q, q + 1));
    sink.one(make_rz(target, M_PI));
    for (uint32_t q = n - 1; q-- > 0;) sink.one(make_cnot(q, q + 1));
    emit_h(sink, target);
    // Mirror X / H layers.
    sink.layer(all(GateType::X180));
    sink.layer(all(GateType::X180));
    sink.layer(all(GateType::Y90));
    return sink.finish(n);
}

Circuit decompose_to_native(const Circuit& c) {
    c.validate();
    MomentSink sink;
    for (const Moment& m : c.moments) {
        // Native ops of the moment stay together; each logical expansion is
        // serialized afterwards so its internal ordering survives.
        std::vector<GateOp> native;
        std::vector<const GateOp*> logical;
        for (const GateOp& op : m.ops) {
            if (!is_native(op.type)) {
                logical.push_back(&op);
            } else {
                native.push_back(op);
            }
        }
        if (!native.empty()) sink.layer(std::move(native));
        for (const GateOp* op : logical) {
            if (op->cond) {
                throw ValidationError("conditional logical gates are not decomposable");
            }
            if (op->type == GateType::H) {
                emit_h(sink, op->qubits[0]);
            } else if (op->type == GateType::CPHASE) {
                emit_cphase(sink, op->qubits[0], op->qubits[1], *op->angle);
            } else {
                throw ValidationError(fmt::format("unknown logical kind '{}'", mnemonic(op->type)));
            }
        }
        if (m.ops.empty()) sink.layer({});
    }
    return sink.finish(c.num_qubits);
}

Circuit build_feedback_fragment(uint32_t num_qubits, uint32_t kinds, uint32_t instances) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw ValidationError("feedback fragment needs an even qubit count >= 2");
    }
    static const GateType pool[] = {GateType::X90, GateType::Y90, GateType::X180, GateType::Y180};
    if (kinds == 0 || kinds > 4) throw ValidationError("feedback fragment supports 1..4 kinds");
    Circuit c;
    c.num_qubits = num_qubits;
    for (uint32_t inst = 0; inst < instances; ++inst) {
        uint32_t measure_ts = 2 * inst;
        std::vector<GateOp> measures;
        for (uint32_t q = 0; q < num_qubits; q += 2) measures.push_back(make_measure(q));
        c.moments.emplace_back(measure_ts, std::move(measures));

        std::vector<GateOp> feedback;
        uint32_t slot = 0;
        for (uint32_t q = 0; q < num_qubits; q += 2, ++slot) {
            GateOp op = make_1q(pool[slot % kinds], q + 1);
            op.cond = ConditionRef{q, 1, measure_ts};
            feedback.push_back(std::move(op));
        }
        c.moments.emplace_back(measure_ts + 1, std::move(feedback));
    }
    c.validate();
    return c;
}

std::vector<GateOp> synthetic_kind_pool(uint32_t qubit) {
    std::vector<GateOp> pool;
    pool.push_back(make_1q(GateType::X90, qubit));
    pool.push_back(make_1q(GateType::Y90, qubit));
    pool.push_back(make_1q(GateType::X180, qubit));
    pool.push_back(make_1q(GateType::Y180, qubit));
    for (int i = 0; i < 28; ++i) pool.push_back(make_custom(fmt::format("u{:02}", i), qubit));
    return pool;
}

}  // namespace qcp
