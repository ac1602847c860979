/**
 * Copyright 2026 The PerceptForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "perceptforge/error.hpp"

namespace perceptforge {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kResolutionZero: return "ResolutionZero";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kColorSpaceExhausted: return "ColorSpaceExhausted";
    case ErrorCode::kDegenerateCurve: return "DegenerateCurve";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownDefinition: return "UnknownDefinition";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kValidationFailure: return "ValidationFailure";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kScenario: return "ScenarioError";
  }
  return "Unknown";
}

}  // namespace perceptforge
