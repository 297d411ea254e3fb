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
#include <stdexcept>
#include <string>

namespace qcp {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error in circuit text, with 1-based location.
struct ParseError : Error {
    ParseError(std::string msg, size_t line, size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
    size_t line;
    size_t column;
};

/// Constraint violation in an otherwise well-formed circuit. `moment_index`
/// is the offending moment position, or SIZE_MAX when not moment-local.
struct ValidationError : Error {
    explicit ValidationError(std::string msg, size_t moment_index = SIZE_MAX)
        : Error(std::move(msg)), moment_index(moment_index) {}
    size_t moment_index;
};

struct EncodeError : Error {
    using Error::Error;
};

/// Raised by assemble/disassemble on malformed words or field overflow.
struct IsaError : Error {
    explicit IsaError(std::string msg, size_t word_offset = SIZE_MAX)
        : Error(std::move(msg)), word_offset(word_offset) {}
    size_t word_offset;
};

struct ReplayError : Error {
    explicit ReplayError(std::string msg, size_t pc = SIZE_MAX) : Error(std::move(msg)), pc(pc) {}
    size_t pc;
};

}  // namespace qcp
