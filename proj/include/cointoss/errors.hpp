// Copyright 2026 The cointoss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cointoss {

enum class ErrorKind {
    DimensionMismatch,
    ZeroNorm,
    NotNormalized,
    LabelCollision,
    UnknownLabel,
    InvalidCut,
    InvalidOperation,
    StrategyRegisterMismatch,
    DegenerateBranch,
    ParseError,
    UnknownStrategy,
    InvariantViolation,
};

constexpr std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ZeroNorm: return "ZeroNorm";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::LabelCollision: return "LabelCollision";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::InvalidCut: return "InvalidCut";
        case ErrorKind::InvalidOperation: return "InvalidOperation";
        case ErrorKind::StrategyRegisterMismatch: return "StrategyRegisterMismatch";
        case ErrorKind::DegenerateBranch: return "DegenerateBranch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownStrategy: return "UnknownStrategy";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

/// Base class of every error raised by the library. Catch this to handle all of them.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

template <ErrorKind K>
class ErrorOf : public Error {
   public:
    explicit ErrorOf(const std::string &what) : Error(K, what) {
    }
};

using DimensionMismatch = ErrorOf<ErrorKind::DimensionMismatch>;
using ZeroNorm = ErrorOf<ErrorKind::ZeroNorm>;
using NotNormalized = ErrorOf<ErrorKind::NotNormalized>;
using LabelCollision = ErrorOf<ErrorKind::LabelCollision>;
using UnknownLabel = ErrorOf<ErrorKind::UnknownLabel>;
using InvalidCut = ErrorOf<ErrorKind::InvalidCut>;
using InvalidOperation = ErrorOf<ErrorKind::InvalidOperation>;
using StrategyRegisterMismatch = ErrorOf<ErrorKind::StrategyRegisterMismatch>;
using DegenerateBranch = ErrorOf<ErrorKind::DegenerateBranch>;
using ParseError = ErrorOf<ErrorKind::ParseError>;
using UnknownStrategy = ErrorOf<ErrorKind::UnknownStrategy>;
using InvariantViolation = ErrorOf<ErrorKind::InvariantViolation>;

}  // namespace cointoss
