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

#include "jjal/errors.hpp"

namespace jjal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FrustrationSingularity: return "FrustrationSingularity";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::OddModeCount: return "OddModeCount";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NoResonanceFound: return "NoResonanceFound";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoLobeFound: return "NoLobeFound";
    case ErrorCode::ZeroKappa: return "ZeroKappa";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::InvertedPopulation: return "InvertedPopulation";
    case ErrorCode::NoInBandSample: return "NoInBandSample";
    case ErrorCode::OverlappingBands: return "OverlappingBands";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::UnitError: return "UnitError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace jjal
