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

#include "gqpt/predictor.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace gqpt {

PureGaussianInput PureGaussianInput::coherent(const CVector &z) {
    return PureGaussianInput{RVector::Zero(z.size()), RVector::Zero(z.size()), z};
}

void PureGaussianInput::check() const {
    const auto k = displacement.size();
    if (k < 1 || squeeze_r.size() != k || squeeze_phase.size() != k) {
        throw Error(ErrorCode::InvalidArgument, "pure Gaussian input has inconsistent shapes");
    }
    if (!displacement.array().isFinite().all() || !squeeze_r.array().isFinite().all() ||
        !squeeze_phase.array().isFinite().all()) {
        throw Error(ErrorCode::InvalidArgument, "pure Gaussian input must be finite");
    }
    if ((squeeze_r.array() < 0.0).any()) {
        throw Error(ErrorCode::InvalidArgument, "squeezing parameters must be >= 0");
    }
}

QForm predict_coherent(const ProcessState &p, const CVector &u) {
    return QForm(p.output_constant(u), p.output_linear(u), p.x_bb, p.y_bb);
}

// S D(z)|0> = D(delta) S|0> with delta = z cosh r - z* e^{i phi} sinh r, and
// S|0> = (cosh r)^{-1/2} exp(-t b†²/2)|0> with t = e^{i phi} tanh r.
OverlapExponent squeezed_overlap(double r, double phi, cplx z) {
    const double ch = std::cosh(r);
    const cplx rot = std::polar(1.0, phi);
    const cplx delta = z * ch - std::conj(z) * rot * std::sinh(r);
    const cplx t = rot * std::tanh(r);
    const cplx dc = std::conj(delta);
    return OverlapExponent{-0.5 * std::log(ch) - 0.5 * std::norm(delta) - 0.5 * t * dc * dc,
                           delta + t * dc, t};
}

GaussianExponent prediction_integrand(const ProcessState &p, const PureGaussianInput &input) {
    input.check();
    const int k = input.modes();
    if (p.modes != k) {
        throw Error(ErrorCode::ModeMismatch, "input and process differ in mode count");
    }
    // Holomorphic coordinates (alpha, beta, Z_b, alpha*, beta*, Z_b*).
    const int n = 3 * k;
    auto alpha = [&](int j) { return j; };
    auto beta = [&](int j) { return k + j; };
    auto zb = [&](int j) { return 2 * k + j; };
    auto conj_of = [&](int idx) { return n + idx; };

    cplx c = 0.0;
    CVector l = CVector::Zero(2 * n);
    CMatrix q = CMatrix::Zero(2 * n, 2 * n);
    // adds coef * w_a * w_b to the exponent
    auto add = [&](int a, int b, cplx coef) {
        if (a == b) {
            q(a, a) += 2.0 * coef;
        } else {
            q(a, b) += coef;
            q(b, a) += coef;
        }
    };

    for (int j = 0; j < k; ++j) {
        // |psi*> conjugates the displacement and the squeezing phase.
        const OverlapExponent ov =
            squeezed_overlap(input.squeeze_r(j), -input.squeeze_phase(j),
                             std::conj(input.displacement(j)));
        // <psi*|alpha>
        c += std::conj(ov.k0);
        l(alpha(j)) += std::conj(ov.eta);
        add(alpha(j), conj_of(alpha(j)), -0.5);
        add(alpha(j), alpha(j), -0.5 * std::conj(ov.t));
        // <beta|psi*>
        c += ov.k0;
        l(conj_of(beta(j))) += ov.eta;
        add(beta(j), conj_of(beta(j)), -0.5);
        add(conj_of(beta(j)), conj_of(beta(j)), -0.5 * ov.t);
        // <alpha|beta>
        add(alpha(j), conj_of(alpha(j)), -0.5);
        add(beta(j), conj_of(beta(j)), -0.5);
        add(conj_of(alpha(j)), beta(j), 1.0);
    }

    // Normally ordered process operator between <alpha| and |beta>:
    // Z_a -> beta, Z_a* -> alpha*.
    std::vector<int> holo(2 * k), anti(2 * k);
    for (int j = 0; j < k; ++j) {
        holo[j] = beta(j);
        holo[k + j] = zb(j);
        anti[j] = conj_of(alpha(j));
        anti[k + j] = conj_of(zb(j));
    }
    const QForm f = p.to_qform();
    c += f.c();
    for (int i = 0; i < 2 * k; ++i) {
        l(holo[i]) += f.gamma()(i);
        l(anti[i]) += std::conj(f.gamma()(i));
        for (int j = 0; j < 2 * k; ++j) {
            q(holo[i], holo[j]) += f.x()(i, j);
            q(anti[i], anti[j]) += std::conj(f.x()(i, j));
            q(anti[i], holo[j]) += f.y()(i, j);
            q(holo[j], anti[i]) += f.y()(i, j);
        }
    }
    return GaussianExponent::from_holomorphic(c, l, q);
}

QForm predict_gaussian(const ProcessState &p, const PureGaussianInput &input) {
    const GaussianExponent e = prediction_integrand(p, input);
    std::vector<int> vars(2 * static_cast<std::size_t>(input.modes()));
    std::iota(vars.begin(), vars.end(), 0);
    return to_qform(integrate_out(e, vars));
}

QForm bs_squeezed_closed_form(double theta, double r, cplx z) {
    const double th = std::tanh(r);
    const double cs = std::cos(theta), sn2 = std::sin(theta) * std::sin(theta);
    const double g = 1.0 - th * th * sn2 * sn2;
    CMatrix y(1, 1), x(1, 1);
    y(0, 0) = (th * th * sn2 - 1.0) / g;
    x(0, 0) = -th * cs * cs / g;
    CVector gamma(1);
    gamma(0) = cs * (std::conj(z) - z * th * sn2) / (g * std::cosh(r));
    const QForm unnormalized(0.0, gamma, x, y);
    return unnormalized.with_c(-qform_log_normalization(unnormalized));
}

ProcessState beam_splitter_process(double theta) {
    ProcessState p = ProcessState::zeros(1);
    const double cs = std::cos(theta);
    p.x_ab(0, 0) = cs;
    p.y_aa(0, 0) = -cs * cs;
    p.y_bb(0, 0) = -1.0;
    return p;
}

}  // namespace gqpt
