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

#include "gqpt/gaussian_forms.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/fock_states.hpp"
#include "oracles/quadrature.hpp"
#include "support.hpp"

using namespace gqpt;
using gqpt::fixtures::max_abs;

namespace {

// The defining expression, evaluated term by term.
double direct_exponent(const QForm &f, const CVector &z) {
    cplx lin = 0.0, hol = 0.0, herm = 0.0;
    for (int i = 0; i < f.modes(); ++i) {
        lin += f.gamma()(i) * z(i);
        for (int j = 0; j < f.modes(); ++j) {
            hol += z(i) * f.x()(i, j) * z(j);
            herm += std::conj(z(i)) * f.y()(i, j) * z(j);
        }
    }
    return f.c() + 2.0 * lin.real() + hol.real() + herm.real();
}

double quadrature_normalization(const QForm &f, double half_width, int points) {
    const int k = f.modes();
    const RealQuadratic q = to_real_quadratic(f);
    const RVector center = -0.5 * q.m.ldlt().solve(q.v);
    std::vector<double> c(center.data(), center.data() + center.size());
    const double pik = std::pow(M_PI, k);
    return oracle::trapezoid<double>(
        [&](const std::vector<double> &u) {
            CVector z(k);
            for (int j = 0; j < k; ++j) {
                z(j) = cplx(u[2 * j], u[2 * j + 1]);
            }
            return std::exp(direct_exponent(f, z)) / pik;
        },
        c, half_width, points);
}

}  // namespace

TEST(qform, storage_mirrors_triangles) {
    CMatrix x(2, 2), y(2, 2);
    x << 1.0, cplx(2, 1), 7.0, 3.0;
    y << cplx(-2, 5), 9.0, cplx(0.5, 0.25), -3.0;
    const QForm f(0.0, CVector::Zero(2), x, y);
    EXPECT_EQ(f.x()(1, 0), cplx(2, 1));
    EXPECT_EQ(f.y()(0, 1), cplx(0.5, -0.25));
    EXPECT_EQ(f.y()(0, 0), cplx(-2, 0));
    EXPECT_EQ(f.x(), f.x().transpose());
    EXPECT_EQ(f.y(), f.y().adjoint());
}

TEST(qform, rejects_bad_shapes_and_values) {
    EXPECT_THROW(QForm(0.0, CVector::Zero(0), CMatrix(0, 0), CMatrix(0, 0)), Error);
    EXPECT_THROW(QForm(0.0, CVector::Zero(2), CMatrix::Zero(1, 1), CMatrix::Zero(2, 2)), Error);
    EXPECT_THROW(QForm(NAN, CVector::Zero(1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)), Error);
}

TEST(qform_eval, vacuum_and_coherent) {
    const QForm vac = QForm::vacuum(1);
    EXPECT_DOUBLE_EQ(qform_eval(vac, CVector::Zero(1)), 1.0);
    EXPECT_NEAR(qform_eval(vac, CVector::Constant(1, 1.0)), std::exp(-1.0), 1e-15);
    CVector beta(1);
    beta << cplx(0.7, -1.3);
    EXPECT_NEAR(qform_eval(QForm::coherent(beta), beta), 1.0, 1e-14);
}

TEST(qform_eval, matches_defining_expression) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 3;
        const QForm f = fixtures::random_normalizable_qform(rng, k);
        const CVector z = fixtures::random_amplitudes(rng, k, 1.5);
        EXPECT_NEAR(qform_log_eval(f, z), direct_exponent(f, z), 1e-12);
        EXPECT_GT(qform_eval(f, z), 0.0);
        EXPECT_NEAR(qform_eval(f, CVector::Zero(k)), std::exp(f.c()), 1e-12 * std::exp(f.c()));
    }
}

TEST(normalization, closed_form_examples) {
    CVector beta(1);
    for (const cplx b : {cplx(0, 0), cplx(1, 0), cplx(-0.3, 2.1)}) {
        beta(0) = b;
        EXPECT_NEAR(qform_normalization_integral(QForm::coherent(beta)), 1.0, 1e-13);
    }
    EXPECT_NEAR(qform_normalization_integral(QForm::vacuum(1).with_c(std::log(2.0))), 2.0, 1e-13);
    const QForm narrow(0.0, CVector::Zero(1), CMatrix::Zero(1, 1), -2.0 * CMatrix::Identity(1, 1));
    EXPECT_NEAR(qform_normalization_integral(narrow), 0.5, 1e-14);
}

TEST(normalization, narrow_form_oracle) {
    // Frozen value 0.5 above, from adaptive quadrature of ∫ dx dy / π exp(-2(x² + y²)).
    const double v = oracle::adaptive_simpson_2d(
        [](double x, double y) { return std::exp(-2.0 * (x * x + y * y)) / M_PI; }, -7.0, 7.0,
        -7.0, 7.0, 1e-12);
    EXPECT_NEAR(v, 0.5, 1e-9);
}

TEST(normalization, matches_quadrature_single_mode) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const QForm f = fixtures::random_normalizable_qform(rng, 1);
        const double exact = qform_normalization_integral(f);
        const double quad = quadrature_normalization(f, 9.0, 121);
        EXPECT_NEAR(quad / exact, 1.0, 1e-6) << "trial " << trial;
    }
}

TEST(normalization, matches_quadrature_two_modes) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const QForm f = fixtures::random_normalizable_qform(rng, 2, 0.6);
        const double exact = qform_normalization_integral(f);
        const double quad = quadrature_normalization(f, 6.5, 37);
        EXPECT_NEAR(quad / exact, 1.0, 1e-6) << "trial " << trial;
    }
}

TEST(normalization, invariant_under_unitary_relabeling) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const QForm f = fixtures::random_normalizable_qform(rng, 2);
        CMatrix g(2, 2);
        g << fixtures::random_complex(rng, 1.0), fixtures::random_complex(rng, 1.0),
            fixtures::random_complex(rng, 1.0), fixtures::random_complex(rng, 1.0);
        const CMatrix u = g.householderQr().householderQ();
        // Z = U W: the same function over the rotated variables.
        const QForm h(f.c(), u.transpose() * f.gamma(), u.transpose() * f.x() * u,
                      u.adjoint() * f.y() * u);
        EXPECT_NEAR(qform_log_normalization(h), qform_log_normalization(f), 1e-12);
        CMatrix swap(2, 2);
        swap << 0, 1, 1, 0;
        const QForm s(f.c(), swap * f.gamma(), swap * f.x() * swap, swap * f.y() * swap);
        EXPECT_NEAR(qform_log_normalization(s), qform_log_normalization(f), 1e-12);
    }
}

TEST(normalization, rejects_non_normalizable) {
    const QForm flat(0.0, CVector::Zero(1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1));
    EXPECT_FALSE(flat.normalizable());
    try {
        qform_normalization_integral(flat);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotNormalizable);
    }
    // |x| > |y| makes one real direction grow.
    const QForm saddle(0.0, CVector::Zero(1), CMatrix::Constant(1, 1, 1.5),
                       -CMatrix::Identity(1, 1));
    EXPECT_FALSE(saddle.normalizable());
    EXPECT_TRUE(QForm::vacuum(3).normalizable());
}

TEST(state_to_qform, vacuum_and_coherent) {
    const QForm v = state_to_qform(GaussianState::vacuum(1));
    EXPECT_LT(max_parameter_deviation(v, QForm::vacuum(1)), 1e-15);
    CVector beta(2);
    beta << cplx(1.0, -0.5), cplx(-0.25, 2.0);
    const GaussianState s = GaussianState::coherent(beta);
    EXPECT_NEAR(s.mean()(0), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.mean()(1), -0.5 * std::sqrt(2.0), 1e-15);
    EXPECT_LT(max_parameter_deviation(state_to_qform(s), QForm::coherent(beta)), 1e-14);
}

TEST(state_to_qform, squeezed_vacuum_matches_fock) {
    const double r = 0.5;
    // Squeezing along x: cov = diag(e^{-2r}, e^{2r}) / 2, i.e. S(r, 0).
    RMatrix cov(2, 2);
    cov << 0.5 * std::exp(-2 * r), 0.0, 0.0, 0.5 * std::exp(2 * r);
    const QForm f = state_to_qform(GaussianState(RVector::Zero(2), cov));
    const CVector psi = oracle::squeezed_coherent_amplitudes(r, 0.0, 0.0, 61);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const cplx z = fixtures::random_complex(rng, 1.5);
        const double q = std::norm(oracle::coherent_overlap(psi, z));
        EXPECT_NEAR(qform_eval(f, CVector::Constant(1, z)), q, 1e-8);
    }
}

TEST(state_to_qform, log_weight_sets_normalization) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const GaussianState s = fixtures::random_physical_state(rng, 1 + trial % 2);
        const GaussianState w(s.mean(), s.cov(), -0.37);
        EXPECT_NEAR(qform_log_normalization(state_to_qform(s)), 0.0, 1e-12);
        EXPECT_NEAR(qform_log_normalization(state_to_qform(w)), -0.37, 1e-12);
    }
}

TEST(state_to_qform, singular_covariance) {
    const GaussianState s(RVector::Zero(2), -0.5 * RMatrix::Identity(2, 2));
    try {
        state_to_qform(s);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularCovariance);
    }
}

TEST(qform_to_state, examples) {
    const StateConversion v = qform_to_state(QForm::vacuum(1));
    EXPECT_LT((v.state.mean()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((v.state.cov() - 0.5 * RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_FALSE(v.non_physical);
    CVector beta(1);
    beta << cplx(1, 1);
    const StateConversion c = qform_to_state(QForm::coherent(beta));
    EXPECT_NEAR(c.state.mean()(0), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(c.state.mean()(1), std::sqrt(2.0), 1e-14);
    EXPECT_LT((c.state.cov() - 0.5 * RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(c.state.log_weight(), 0.0, 1e-14);
}

TEST(qform_to_state, flags_non_physical) {
    // A Q-function narrower than the vacuum's.
    const QForm f(0.0, CVector::Zero(1), CMatrix::Zero(1, 1), -2.0 * CMatrix::Identity(1, 1));
    const StateConversion s = qform_to_state(f);
    EXPECT_TRUE(s.non_physical);
    EXPECT_LT(s.uncertainty_margin, 0.0);
}

TEST(qform_to_state, round_trip) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const QForm f = fixtures::random_normalizable_qform(rng, 1 + trial % 3);
        const QForm g = state_to_qform(qform_to_state(f).state);
        EXPECT_LT(max_parameter_deviation(f, g), 1e-12) << "trial " << trial;
    }
    for (int trial = 0; trial < 50; ++trial) {
        const GaussianState s = fixtures::random_physical_state(rng, 1 + trial % 2);
        const GaussianState t = qform_to_state(state_to_qform(s)).state;
        EXPECT_LT((s.mean() - t.mean()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((s.cov() - t.cov()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(s.log_weight(), t.log_weight(), 1e-12);
    }
}

TEST(gaussian_state, uncertainty) {
    EXPECT_NEAR(GaussianState::vacuum(2).uncertainty_margin(), 0.0, 1e-15);
    EXPECT_TRUE(GaussianState::vacuum(2).physical());
    const GaussianState tight(RVector::Zero(2), 0.1 * RMatrix::Identity(2, 2));
    EXPECT_FALSE(tight.physical());
    RMatrix asym(2, 2);
    asym << 1.0, 0.2, 0.0, 1.0;
    EXPECT_THROW(GaussianState(RVector::Zero(2), asym), Error);
    EXPECT_THROW(GaussianState(RVector::Zero(3), RMatrix::Identity(3, 3)), Error);
}

TEST(process_state, qform_round_trip_is_exact) {
    std::mt19937_64 rng(4);
    for (int k = 1; k <= 3; ++k) {
        const QForm f = fixtures::random_normalizable_qform(rng, 2 * k);
        const ProcessState p = ProcessState::from_qform(f);
        EXPECT_EQ(p.modes, k);
        const QForm g = p.to_qform();
        EXPECT_EQ(max_parameter_deviation(f, g), 0.0);
        EXPECT_EQ(max_parameter_deviation(p, ProcessState::from_qform(g)), 0.0);
    }
}

TEST(process_state, output_terms) {
    ProcessState p = ProcessState::zeros(1);
    p.c0 = 0.1;
    p.gamma_a(0) = cplx(0.2, -0.3);
    p.gamma_b(0) = cplx(0.5, 0.25);
    p.x_aa(0, 0) = cplx(0.1, 0.4);
    p.x_ab(0, 0) = cplx(0.7, 0.1);
    p.y_aa(0, 0) = -0.6;
    p.y_ab(0, 0) = cplx(-0.2, 0.3);
    const cplx u(0.9, -1.1);
    const CVector uv = CVector::Constant(1, u);
    const cplx lin = p.gamma_b(0) + p.x_ab(0, 0) * std::conj(u) + p.y_ab(0, 0) * u;
    EXPECT_LT(std::abs(p.output_linear(uv)(0) - lin), 1e-15);
    const double c = p.c0 + (2.0 * p.gamma_a(0) * std::conj(u) +
                             std::conj(u) * p.x_aa(0, 0) * std::conj(u) +
                             u * p.y_aa(0, 0) * std::conj(u))
                                .real();
    EXPECT_NEAR(p.output_constant(uv), c, 1e-15);
}
