// Copyright 2026 The hyperlinear Authors
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

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperlinear {

enum class ErrorCode {
  NonSquare,
  NonFinite,
  DimensionMismatch,
  OverflowGuard,
  NotUnitary,
  NotProjection,
  RankMismatch,
  ZeroRank,
  PreconditionViolated,
  OrthogonalityViolated,
  DimensionTooSmall,
  DimensionTooLarge,
  UnknownFunction,
  Exhausted,
  EmptyE,
  ModeUnavailable,
  UnknownGenerator,
  UnknownFixture,
  BadParams,
  GammaOutOfRange,
  DefectBudgetExceeded,
  NotPSD,
  NotUnital,
  InvalidGroup,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the ONB search when every try failed. Carries the fraction of
/// columns that satisfied the predicate on each try.
class ExhaustedError : public Error {
 public:
  ExhaustedError(const std::string& what, std::vector<double> pass_rates)
      : Error(ErrorCode::Exhausted, what), pass_rates_(std::move(pass_rates)) {}

  const std::vector<double>& pass_rates() const noexcept { return pass_rates_; }

 private:
  std::vector<double> pass_rates_;
};

/// Raised when some element of E has normalized trace 1 after doubling, so
/// tensor powers cannot drive it towards zero.
class GammaOutOfRangeError : public Error {
 public:
  GammaOutOfRangeError(const std::string& what, std::string element)
      : Error(ErrorCode::GammaOutOfRange, what), element_(std::move(element)) {}

  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

}  // namespace hyperlinear
