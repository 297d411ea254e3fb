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

#include "qcp/ice.hpp"

#include <array>
#include <map>

#include <fmt/format.h>

#include "qcp/encode.hpp"
#include "qcp/error.hpp"
#include "qcp/quasar_isa.hpp"
#include "qcp/rng.hpp"

namespace qcp {

OutcomeOracle outcomes_fixed(int bit) {
    return [bit](uint32_t, uint32_t) { return bit; };
}

OutcomeOracle outcomes_seeded(uint64_t seed) {
    // Hash (seed, ts, qubit) through SplitMix64 so the oracle is a pure
    // function (replay order independent).
    return [seed](uint32_t ts, uint32_t qubit) {
        SplitMix64 rng(seed ^ (static_cast<uint64_t>(ts) << 32) ^ qubit);
        return static_cast<int>(rng.next() & 1);
    };
}

std::string CoreConfig::label() const {
    if (frequency_hz >= 1e9) return fmt::format("{:g}GHz", frequency_hz / 1e9);
    return fmt::format("{:g}MHz", frequency_hz / 1e6);
}

std::vector<CoreConfig> CoreConfig::reference_sweep() {
    std::vector<CoreConfig> cores;
    for (double f : {200e6, 500e6, 1e9, 1.5e9, 2e9}) {
        CoreConfig c;
        c.frequency_hz = f;
        cores.push_back(c);
    }
    return cores;
}

namespace {

constexpr uint32_t kGpBase = 0x20000000;

struct Machine {
    std::array<uint32_t, 32> regs{};
    std::array<uint32_t, 16> msr{};  // measurement status file, one word per bank
    uint32_t ts_reg = 0;
    std::array<double, kAngleTableSize> angle_table{};

    Machine() {
        regs[3] = kGpBase;  // gp anchors the literal pool
        for (int i = 0; i < kAngleTableSize; ++i) angle_table[i] = angle_from_index(i);
    }
};

KindKey kind_from_opcode(const std::string& mnemonic, int64_t field) {
    KindKey k;
    k.angle_index = -1;
    if (mnemonic.starts_with("qx90")) k.type = GateType::X90;
    else if (mnemonic.starts_with("qy90")) k.type = GateType::Y90;
    else if (mnemonic.starts_with("qx180")) k.type = GateType::X180;
    else if (mnemonic.starts_with("qy180")) k.type = GateType::Y180;
    else if (mnemonic.starts_with("qz90")) {
        k.type = GateType::RZ;
        k.angle_index = kAngleTableSize / 4;
    } else if (mnemonic.starts_with("qz180")) {
        k.type = GateType::RZ;
        k.angle_index = kAngleTableSize / 2;
    } else if (mnemonic.starts_with("qrz")) {
        k.type = GateType::RZ;
        k.angle_index = static_cast<int32_t>(field);
    } else if (mnemonic.starts_with("qrx")) {
        k.type = GateType::CUSTOM;
        k.custom = fmt::format("rx[{}]", field);
    } else if (mnemonic.starts_with("qry")) {
        k.type = GateType::CUSTOM;
        k.custom = fmt::format("ry[{}]", field);
    } else if (mnemonic.starts_with("qcnot")) k.type = GateType::CNOT;
    else if (mnemonic.starts_with("qmeas")) k.type = GateType::MEASURE;
    else if (mnemonic.starts_with("qg")) {
        k.type = GateType::CUSTOM;
        k.custom = fmt::format("u{:02}", field);
    } else {
        // qcz has a defined encoding but no gate-event semantics in the
        // modeled native set (CNOT is the only two-qubit kind).
        throw ReplayError(fmt::format("replay: no gate semantics for '{}'", mnemonic));
    }
    return k;
}

}  // namespace

ReplayResult replay(const QuasarProgram& program, const CoreConfig& core, const OutcomeOracle& outcomes) {
    ReplayResult result;
    Machine m;
    uint64_t cycle = 0;
    uint32_t window_instructions = 0;
    uint64_t window_start_cycle = 0;

    // Pipeline hazard bookkeeping: destination of the previous instructions
    // and whether the most recent writer was a load.
    int prev_rd = -1, prev2_rd = -1;
    bool prev_was_load = false;

    auto close_window = [&](uint32_t label) {
        TimestampTiming t;
        t.timestamp = label;
        t.instructions_executed = window_instructions;
        t.cycles = cycle - window_start_cycle;
        result.timings.push_back(t);
        window_instructions = 0;
        window_start_cycle = cycle;
    };

    size_t pc = 0;
    uint64_t executed = 0;
    const uint64_t kInstructionCap = 100'000'000;
    while (pc < program.text.size()) {
        if (++executed > kInstructionCap) throw ReplayError("replay: instruction cap exceeded", pc);
        uint32_t word = program.text[pc];
        Instruction inst;
        try {
            inst = disassemble_quasar({word}).instructions.at(0);
        } catch (const IsaError& e) {
            throw ReplayError(fmt::format("undecodable word at pc {}: {}", pc, e.what()), pc);
        }

        uint32_t stall = 0;
        auto reads = [&](std::initializer_list<int64_t> regs_read) {
            for (int64_t r : regs_read) {
                if (r == 0) continue;
                if (core.forwarding) {
                    if (prev_was_load && prev_rd == r) stall = std::max(stall, core.load_use_bubbles);
                } else {
                    if (prev_rd == r) stall = std::max(stall, 2u);
                    else if (prev2_rd == r) stall = std::max(stall, 1u);
                }
            }
        };

        bool is_load = inst.mnemonic == "lw";
        bool taken_branch = false;
        int64_t next_pc = static_cast<int64_t>(pc) + 1;
        int rd_written = -1;

        auto reg = [&](size_t i) { return static_cast<uint32_t>(inst.args[i]); };
        auto rv = [&](size_t i) { return m.regs[reg(i)]; };

        if (is_quasar_mnemonic(inst.mnemonic)) {
            const std::string& mn = inst.mnemonic;
            if (mn == "ts") {
                uint32_t label = m.ts_reg;
                m.ts_reg += static_cast<uint32_t>(inst.args[0]);
                ++window_instructions;
                cycle += 1;
                // The advance itself belongs to the window it closes.
                close_window(label);
            } else if (mn == "tsr") {
                reads({inst.args[0]});
                uint32_t v = rv(0);
                if (v < m.ts_reg) throw ReplayError(fmt::format("replay: time-stamp regression to {}", v), pc);
                uint32_t label = m.ts_reg;
                m.ts_reg = v;
                ++window_instructions;
                cycle += 1 + stall;
                close_window(label);
            } else if (mn == "qangt") {
                m.angle_table[inst.args[0]] = 2.0 * M_PI * static_cast<double>(inst.args[1]) / 262144.0;
                ++window_instructions;
                cycle += 1;
            } else if (mn == "qmvmr") {
                uint32_t bank = reg(1);
                m.regs[reg(0)] = m.msr[bank];
                rd_written = static_cast<int>(reg(0));
                ++window_instructions;
                cycle += 1;
            } else if (mn == "qfence") {
                ++window_instructions;
                cycle += 1;
            } else {
                // Gate issue forms.
                bool mask_form = mn.ends_with("m") && mn != "qmvmr";
                std::vector<std::pair<KindKey, std::vector<uint32_t>>> gates;
                if (mn == "qcnoti") {
                    gates.push_back({kind_from_opcode(mn, 0), {reg(0), reg(1)}});
                } else if (mn == "qcnotm") {
                    reads({inst.args[0], inst.args[2]});
                    uint32_t cmask = rv(0), tmask = rv(2);
                    uint32_t cbank = reg(1), tbank = reg(3);
                    std::vector<uint32_t> controls, targets;
                    for (uint32_t b = 0; b < 32; ++b) {
                        if (cmask & (1u << b)) controls.push_back(cbank * 32 + b);
                        if (tmask & (1u << b)) targets.push_back(tbank * 32 + b);
                    }
                    if (controls.size() != targets.size()) {
                        throw ReplayError("replay: cnot mask rank mismatch", pc);
                    }
                    for (size_t i = 0; i < controls.size(); ++i) {
                        gates.push_back({kind_from_opcode(mn, 0), {controls[i], targets[i]}});
                    }
                } else if (mask_form) {
                    reads({inst.args[0]});
                    uint32_t mask = rv(0);
                    uint32_t bank = reg(1);
                    int64_t field = mn == "qmeasm" ? 0 : (inst.args.size() > 2 ? inst.args.back() : 0);
                    KindKey kind = kind_from_opcode(mn, field);
                    for (uint32_t b = 0; b < 32; ++b) {
                        if (mask & (1u << b)) gates.push_back({kind, {bank * 32 + b}});
                    }
                } else {
                    int64_t field = inst.args.size() > 1 && mn != "qmeasi" ? inst.args[1] : 0;
                    gates.push_back({kind_from_opcode(mn, field), {reg(0)}});
                }
                for (auto& [kind, qubits] : gates) {
                    if (kind.type == GateType::MEASURE) {
                        uint32_t q = qubits[0];
                        int bit = outcomes(m.ts_reg, q);
                        uint32_t bank = q / 32;
                        m.msr[bank] = (m.msr[bank] & ~(1u << (q % 32))) | (static_cast<uint32_t>(bit) << (q % 32));
                    }
                    GateEvent ev;
                    ev.timestamp = m.ts_reg;
                    ev.kind = kind;
                    ev.qubits = qubits;
                    ev.issue_cycle = cycle;
                    result.events.push_back(std::move(ev));
                }
                if (mn == "qmeasi" || mn == "qmeasm") {
                    uint32_t rd = mn == "qmeasi" ? reg(1) : reg(2);
                    uint32_t bank = mn == "qmeasi" ? reg(0) / 32 : reg(1);
                    if (rd != 0) m.regs[rd] = m.msr[bank];
                    rd_written = static_cast<int>(rd);
                }
                ++window_instructions;
                cycle += 1 + stall;
            }
        } else {
            const std::string& mn = inst.mnemonic;
            if (mn == "lui") {
                m.regs[reg(0)] = static_cast<uint32_t>(inst.args[1]) << 12;
                rd_written = static_cast<int>(reg(0));
            } else if (mn == "addi" || mn == "andi" || mn == "ori" || mn == "xori") {
                reads({inst.args[1]});
                uint32_t a = rv(1);
                auto imm = static_cast<uint32_t>(static_cast<int32_t>(inst.args[2]));
                uint32_t v = mn == "addi" ? a + imm : mn == "andi" ? (a & imm) : mn == "ori" ? (a | imm) : (a ^ imm);
                m.regs[reg(0)] = v;
                rd_written = static_cast<int>(reg(0));
            } else if (mn == "slli" || mn == "srli") {
                reads({inst.args[1]});
                uint32_t a = rv(1);
                auto sh = static_cast<uint32_t>(inst.args[2]) & 31;
                m.regs[reg(0)] = mn == "slli" ? (a << sh) : (a >> sh);
                rd_written = static_cast<int>(reg(0));
            } else if (mn == "add" || mn == "sub" || mn == "and" || mn == "or" || mn == "xor") {
                reads({inst.args[1], inst.args[2]});
                uint32_t a = rv(1), b = rv(2);
                uint32_t v = mn == "add" ? a + b : mn == "sub" ? a - b : mn == "and" ? (a & b) : mn == "or" ? (a | b)
                                                                                                           : (a ^ b);
                m.regs[reg(0)] = v;
                rd_written = static_cast<int>(reg(0));
            } else if (mn == "lw") {
                reads({inst.args[1]});
                uint32_t addr = rv(1) + static_cast<uint32_t>(static_cast<int32_t>(inst.args[2]));
                if (addr < kGpBase || (addr - kGpBase) % 4 != 0 ||
                    (addr - kGpBase) / 4 >= program.data.size()) {
                    throw ReplayError(fmt::format("replay: load outside the data image at {:#x}", addr), pc);
                }
                m.regs[reg(0)] = program.data[(addr - kGpBase) / 4];
                rd_written = static_cast<int>(reg(0));
            } else if (mn == "beq" || mn == "bne") {
                reads({inst.args[0], inst.args[1]});
                bool eq = rv(0) == rv(1);
                bool take = mn == "beq" ? eq : !eq;
                if (take) {
                    int64_t off = inst.args[2];
                    if (off % 4 != 0) throw ReplayError("replay: branch offset not word aligned", pc);
                    next_pc = static_cast<int64_t>(pc) + off / 4;
                    taken_branch = true;
                }
            } else {
                throw ReplayError(fmt::format("replay: unsupported instruction '{}'", mn), pc);
            }
            ++window_instructions;
            cycle += 1 + stall;
            if (is_load) cycle += core.memory_load_stall;
            if (taken_branch) cycle += core.branch_taken_bubbles;
        }
        m.regs[0] = 0;

        result.trace.push_back({cycle, static_cast<uint32_t>(pc), inst.mnemonic, stall});
        prev2_rd = prev_rd;
        prev_rd = rd_written;
        prev_was_load = is_load;
        if (next_pc < 0 || next_pc > static_cast<int64_t>(program.text.size())) {
            throw ReplayError("replay: branch target outside the program", pc);
        }
        pc = static_cast<size_t>(next_pc);
    }
    if (window_instructions > 0) close_window(m.ts_reg);
    result.total_cycles = cycle;
    result.total_instructions = executed;
    return result;
}

ReplayResult replay(const InstructionStream& stream, const CoreConfig& core, const OutcomeOracle& outcomes) {
    QuasarProgram prog;
    prog.text = assemble_quasar(stream);
    prog.data = stream.pool;
    return replay(prog, core, outcomes);
}

Circuit events_to_circuit(const std::vector<GateEvent>& events, uint32_t num_qubits) {
    std::map<uint32_t, std::vector<GateOp>> by_ts;
    for (const GateEvent& ev : events) {
        GateOp op;
        op.type = ev.kind.type;
        op.qubits = ev.qubits;
        op.custom = ev.kind.custom;
        if (ev.kind.type == GateType::RZ) op.angle = angle_from_index(ev.kind.angle_index);
        by_ts[ev.timestamp].push_back(std::move(op));
    }
    Circuit c;
    c.num_qubits = num_qubits;
    for (auto& [ts, ops] : by_ts) c.moments.emplace_back(ts, std::move(ops));
    c.validate();
    return c;
}

bool TimingMatrix::all_pass(size_t core_index) const {
    for (const auto& row : rows) {
        if (!row[core_index].pass) return false;
    }
    return !rows.empty();
}

TimingMatrix timing_satisfaction(const Circuit& c, const Isa& isa, Strategy strategy,
                                 const std::vector<CoreConfig>& cores, const CostModelConfig& cfg,
                                 double threshold_ns) {
    if (isa.kind != IsaKind::Quasar) {
        throw ReplayError("timing_satisfaction: replay models the QUASAR/ICE pair only");
    }
    InstructionStream stream = encode(c, isa, cfg, strategy);
    // Condition-free streams never consult the oracle, so a fixed one
    // suffices. Each core replays separately in case its stall model differs.
    TimingMatrix matrix;
    matrix.cores = cores;
    matrix.threshold_ns = threshold_ns;
    std::vector<ReplayResult> per_core;
    per_core.reserve(cores.size());
    for (const CoreConfig& core : cores) per_core.push_back(replay(stream, core, outcomes_fixed(0)));
    if (cores.empty()) return matrix;
    size_t nrows = per_core[0].timings.size();
    for (size_t r = 0; r < nrows; ++r) {
        std::vector<TimingCell> row;
        for (size_t ci = 0; ci < cores.size(); ++ci) {
            const TimestampTiming& t = per_core[ci].timings[r];
            TimingCell cell;
            cell.timestamp = t.timestamp;
            cell.cycles = t.cycles;
            cell.nanoseconds = t.nanoseconds(cores[ci].frequency_hz);
            cell.pass = cell.nanoseconds < threshold_ns;
            row.push_back(cell);
        }
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

std::string timing_matrix_csv(const TimingMatrix& m) {
    std::string out = "ts,cycles";
    for (const CoreConfig& core : m.cores) out += fmt::format(",ns@{0},pass@{0}", core.label());
    out += "\n";
    for (const auto& row : m.rows) {
        out += fmt::format("{},{}", row.empty() ? 0 : row[0].timestamp, row.empty() ? 0 : row[0].cycles);
        for (const TimingCell& cell : row) out += fmt::format(",{:.6g},{}", cell.nanoseconds, cell.pass ? "PASS" : "FAIL");
        out += "\n";
    }
    return out;
}

std::string trace_text(const ReplayResult& r) {
    std::string out;
    for (const TraceLine& t : r.trace) {
        out += fmt::format("{:>8}  pc={:<6} {:<10} stalls={}\n", t.cycle, t.pc, t.mnemonic, t.stall_cycles);
    }
    return out;
}

std::string gate_event_csv(const ReplayResult& r, double frequency_hz) {
    std::string out = "ts,kind,qubits,issue_cycle,ns\n";
    for (const GateEvent& ev : r.events) {
        std::string q;
        for (uint32_t x : ev.qubits) q += fmt::format("{}{}", q.empty() ? "" : " ", x);
        out += fmt::format("{},{},{},{},{:.6g}\n", ev.timestamp, kind_label(ev.kind), q, ev.issue_cycle,
                           static_cast<double>(ev.issue_cycle) * 1e9 / frequency_hz);
    }
    return out;
}

}  // namespace qcp
