// Copyright 2026 The gqpt Authors
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

#include "gqpt/types.hpp"

namespace gqpt {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::ModeMismatch:
            return "ModeMismatch";
        case ErrorCode::NotNormalizable:
            return "NotNormalizable";
        case ErrorCode::SingularCovariance:
            return "SingularCovariance";
        case ErrorCode::NonPhysical:
            return "NonPhysical";
        case ErrorCode::CutoffTooSmall:
            return "CutoffTooSmall";
        case ErrorCode::UnnormalizedState:
            return "UnnormalizedState";
        case ErrorCode::TooFewSamples:
            return "TooFewSamples";
        case ErrorCode::DegenerateCovariance:
            return "DegenerateCovariance";
        case ErrorCode::SingularK:
            return "SingularK";
        case ErrorCode::SingularJ:
            return "SingularJ";
        case ErrorCode::ConjugateInconsistency:
            return "ConjugateInconsistency";
        case ErrorCode::InconsistentQuadraticPart:
            return "InconsistentQuadraticPart";
        case ErrorCode::DivergentIntegral:
            return "DivergentIntegral";
        case ErrorCode::Format:
            return "Format";
    }
    return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotNormalizable:
        case ErrorCode::SingularCovariance:
        case ErrorCode::DegenerateCovariance:
        case ErrorCode::SingularK:
        case ErrorCode::SingularJ:
        case ErrorCode::DivergentIntegral:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace gqpt
