/*
 * Copyright 2026 The desdist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DESDIST_ERROR_HPP
#define DESDIST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace desdist {

enum class ErrorKind {
    InvalidLabel,
    DuplicateLabel,
    UnknownLabel,
    InvalidState,
    Nondeterminism,
    ControllabilityMismatch,
    AlphabetMismatch,
    LabelCollision,
    NotContained,
    NotControllable,
    ContainmentViolated,
    CoverViolation,
    BadBlockIndex,
    InvalidPartition,
    ArityMismatch,
    HypothesisUnmet,
    SyntaxError,
    SemanticError,
    IoError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::Nondeterminism: return "Nondeterminism";
    case ErrorKind::ControllabilityMismatch: return "ControllabilityMismatch";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::LabelCollision: return "LabelCollision";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotControllable: return "NotControllable";
    case ErrorKind::ContainmentViolated: return "ContainmentViolated";
    case ErrorKind::CoverViolation: return "CoverViolation";
    case ErrorKind::BadBlockIndex: return "BadBlockIndex";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures additionally remember the offending line (1-based, 0 if unknown).
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t line, const std::string& what)
        : Error(kind, line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace desdist

#endif
