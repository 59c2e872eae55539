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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gqpt {

using cplx = std::complex<double>;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

enum class ErrorCode {
    InvalidArgument,
    ModeMismatch,
    NotNormalizable,
    SingularCovariance,
    NonPhysical,
    CutoffTooSmall,
    UnnormalizedState,
    TooFewSamples,
    DegenerateCovariance,
    SingularK,
    SingularJ,
    ConjugateInconsistency,
    InconsistentQuadraticPart,
    DivergentIntegral,
    Format,
};

const char *error_code_name(ErrorCode code);

/// True for failures of the numerics (singular or divergent systems), as
/// opposed to bad or inconsistent input data.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace gqpt
