// Copyright 2026 The jjal Authors
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

namespace jjal {

// Error categories surfaced to callers and mapped to CLI exit codes.
// The numeric values are part of the CLI contract; append only.
enum class ErrorCode : int {
  InvalidArgument = 1,
  FrustrationSingularity = 2,
  NotPositiveDefinite = 3,
  OddModeCount = 4,
  IndexOutOfRange = 5,
  EmptyGrid = 6,
  NoResonanceFound = 7,
  SingularJacobian = 8,
  GridMismatch = 9,
  NoLobeFound = 10,
  ZeroKappa = 11,
  CutoffTooSmall = 12,
  InvertedPopulation = 13,
  NoInBandSample = 14,
  OverlappingBands = 15,
  SchemaMismatch = 16,
  UnitError = 17,
  EmptyFile = 18,
  InsufficientData = 19,
  ConfigError = 20,
  IoError = 21,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jjal
