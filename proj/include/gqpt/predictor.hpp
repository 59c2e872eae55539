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

#include "gqpt/gaussian_forms.hpp"
#include "gqpt/gaussian_integral.hpp"

namespace gqpt {

/// Π_j S_j(r_j, phi_j) D_j(Z_j) |0>, with
/// S(r, phi) = exp[(r/2)(e^{-i phi} b² - e^{i phi} b†²)].
struct PureGaussianInput {
    RVector squeeze_r;
    RVector squeeze_phase;
    CVector displacement;

    int modes() const { return static_cast<int>(displacement.size()); }
    static PureGaussianInput coherent(const CVector &z);
    /// Throws InvalidArgument on shape mismatch, non-finite values or r < 0.
    void check() const;
};

/// Output Q-form for the coherent input |u>.
QForm predict_coherent(const ProcessState &p, const CVector &u);

/// Output Q-form for a pure Gaussian input, from the coherent-basis expansion
/// of <psi*, Z_b| rho_process |psi*, Z_b>. Throws DivergentIntegral when the
/// expansion does not converge.
QForm predict_gaussian(const ProcessState &p, const PureGaussianInput &input);

/// The full exponent of <psi*|alpha><alpha|:Q(a†, b†, a, b):|beta><beta|psi*>
/// at Z_b, over the variables (alpha, beta, Z_b), each k long. Integrating out
/// alpha and beta gives predict_gaussian.
GaussianExponent prediction_integrand(const ProcessState &p, const PureGaussianInput &input);

/// <alpha|S(r, phi) D(z)|0> = exp(k0 + eta alpha* - |alpha|²/2 - t alpha*²/2).
struct OverlapExponent {
    cplx k0;
    cplx eta;
    cplx t;
};
OverlapExponent squeezed_overlap(double r, double phi, cplx z);

/// Output of the attenuating beam splitter (transmission cos θ) for the input
/// S(r, 0) D(Z) |0>, in closed form, normalized to unit trace.
QForm bs_squeezed_closed_form(double theta, double r, cplx z);

/// Process state of the attenuating beam splitter.
ProcessState beam_splitter_process(double theta);

}  // namespace gqpt
