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

#include <span>
#include <vector>

#include "gqpt/gaussian_forms.hpp"

namespace gqpt {

/// A complex-valued quadratic exponent over n complex variables, stored in the
/// real coordinates u = (Re z1, Im z1, ..., Re zn, Im zn):
///
///     E(u) = u^T m u + v^T u + c,   m complex symmetric 2n x 2n.
///
/// Integrating exp(E) over a subset of the variables with measure d²z/π per
/// variable is again of this form.
struct GaussianExponent {
    CMatrix m;
    CVector v;
    cplx c{0.0, 0.0};

    int variables() const { return static_cast<int>(v.size() / 2); }

    /// Exponent given in the holomorphic coordinates w = (z1..zn, z1*..zn*):
    /// c + l^T w + ½ w^T q w.
    static GaussianExponent from_holomorphic(cplx c, const CVector &l, const CMatrix &q);
    static GaussianExponent from_qform(const QForm &f);

    cplx evaluate(const CVector &z) const;
};

/// ∫ Π_{j in vars} d²z_j/π exp(E). Throws DivergentIntegral unless the real
/// part of the integrated block is negative definite. The result is over the
/// remaining variables in their original order.
GaussianExponent integrate_out(const GaussianExponent &e, std::span<const int> vars);

/// Reads a real-valued exponent back as a Q-form. Throws InvalidArgument if the
/// coefficients carry an imaginary part above `imag_tolerance` (relative).
QForm to_qform(const GaussianExponent &e, double imag_tolerance = 1e-9);

}  // namespace gqpt
