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

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace gqpt {

namespace {

// Z = W u for the interleaved real coordinates u = (Re Z1, Im Z1, ...).
CMatrix coordinate_map(int modes) {
    CMatrix w = CMatrix::Zero(modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        w(j, 2 * j) = 1.0;
        w(j, 2 * j + 1) = kI;
    }
    return w;
}

bool all_finite(const CMatrix &m) {
    return m.array().isFinite().all();
}

void require(bool ok, ErrorCode code, const std::string &message) {
    if (!ok) {
        throw Error(code, message);
    }
}

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

QForm::QForm(double c, CVector gamma, CMatrix x, CMatrix y)
    : c_(c), gamma_(std::move(gamma)), x_(std::move(x)), y_(std::move(y)) {
    const auto k = gamma_.size();
    require(k >= 1, ErrorCode::InvalidArgument, "QForm needs at least one mode");
    require(x_.rows() == k && x_.cols() == k && y_.rows() == k && y_.cols() == k,
            ErrorCode::InvalidArgument, "QForm block shapes disagree with the mode count");
    require(std::isfinite(c_) && all_finite(gamma_) && all_finite(x_) && all_finite(y_),
            ErrorCode::InvalidArgument, "QForm parameters must be finite");
    for (Eigen::Index i = 0; i < k; ++i) {
        y_(i, i) = y_(i, i).real();
        for (Eigen::Index j = i + 1; j < k; ++j) {
            x_(j, i) = x_(i, j);
            y_(i, j) = std::conj(y_(j, i));
        }
    }
}

QForm QForm::vacuum(int modes) {
    return QForm(0.0, CVector::Zero(modes), CMatrix::Zero(modes, modes),
                 -CMatrix::Identity(modes, modes));
}

QForm QForm::coherent(const CVector &beta) {
    const auto k = static_cast<int>(beta.size());
    return QForm(-beta.squaredNorm(), beta.conjugate(), CMatrix::Zero(k, k),
                 -CMatrix::Identity(k, k));
}

bool QForm::normalizable() const {
    const RealQuadratic q = to_real_quadratic(*this);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(q.m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff() < -kNormalizableTolerance;
}

RealQuadratic to_real_quadratic(const QForm &f) {
    const CMatrix w = coordinate_map(f.modes());
    RealQuadratic q;
    const CMatrix m = w.transpose() * f.x() * w + w.adjoint() * f.y() * w;
    q.m = m.real();
    q.m = 0.5 * (q.m + q.m.transpose()).eval();
    q.v = 2.0 * (w.transpose() * f.gamma()).real();
    q.c = f.c();
    return q;
}

QForm from_real_quadratic(const RealQuadratic &q) {
    require(q.m.rows() == q.m.cols() && q.m.rows() % 2 == 0 && q.v.size() == q.m.rows(),
            ErrorCode::InvalidArgument, "real quadratic form has inconsistent shapes");
    const int k = static_cast<int>(q.m.rows() / 2);
    const CMatrix w = coordinate_map(k);
    const CMatrix m = q.m.cast<cplx>();
    const CVector v = q.v.cast<cplx>();
    CMatrix x = 0.5 * w.conjugate() * m * w.adjoint();
    CMatrix y = 0.5 * w * m * w.adjoint();
    CVector gamma = 0.5 * w.conjugate() * v;
    return QForm(q.c, std::move(gamma), std::move(x), std::move(y));
}

GaussianState::GaussianState(RVector mean, RMatrix cov, double log_weight)
    : mean_(std::move(mean)), cov_(std::move(cov)), log_weight_(log_weight) {
    const auto n = mean_.size();
    require(n >= 2 && n % 2 == 0, ErrorCode::InvalidArgument,
            "state mean must hold an (x, p) pair per mode");
    require(cov_.rows() == n && cov_.cols() == n, ErrorCode::InvalidArgument,
            "state covariance shape disagrees with the mean");
    require(mean_.array().isFinite().all() && cov_.array().isFinite().all() &&
                std::isfinite(log_weight_),
            ErrorCode::InvalidArgument, "state parameters must be finite");
    const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    require(asym <= 1e-9 * std::max(1.0, cov_.cwiseAbs().maxCoeff()), ErrorCode::InvalidArgument,
            "state covariance must be symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

GaussianState GaussianState::vacuum(int modes) {
    return GaussianState(RVector::Zero(2 * modes), 0.5 * RMatrix::Identity(2 * modes, 2 * modes));
}

GaussianState GaussianState::coherent(const CVector &alpha) {
    const auto k = static_cast<int>(alpha.size());
    RVector mean(2 * k);
    for (int j = 0; j < k; ++j) {
        mean(2 * j) = std::sqrt(2.0) * alpha(j).real();
        mean(2 * j + 1) = std::sqrt(2.0) * alpha(j).imag();
    }
    return GaussianState(std::move(mean), 0.5 * RMatrix::Identity(2 * k, 2 * k));
}

CVector GaussianState::amplitude() const {
    CVector a(modes());
    for (int j = 0; j < modes(); ++j) {
        a(j) = cplx(mean_(2 * j), mean_(2 * j + 1)) / std::sqrt(2.0);
    }
    return a;
}

RMatrix symplectic_form(int modes) {
    RMatrix omega = RMatrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

double GaussianState::uncertainty_margin() const {
    const CMatrix h = cov_.cast<cplx>() + 0.5 * kI * symplectic_form(modes()).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

ProcessState ProcessState::zeros(int modes) {
    ProcessState p;
    p.modes = modes;
    p.gamma_a = p.gamma_b = CVector::Zero(modes);
    p.x_aa = p.x_ab = p.x_bb = CMatrix::Zero(modes, modes);
    p.y_aa = p.y_ab = p.y_bb = CMatrix::Zero(modes, modes);
    return p;
}

CVector ProcessState::output_linear(const CVector &u) const {
    require(u.size() == modes, ErrorCode::ModeMismatch, "input amplitude has the wrong length");
    return gamma_b + x_ab.transpose() * u.conjugate() + y_ab.transpose() * u;
}

double ProcessState::output_constant(const CVector &u) const {
    require(u.size() == modes, ErrorCode::ModeMismatch, "input amplitude has the wrong length");
    const CVector uc = u.conjugate();
    const cplx linear = gamma_a.transpose() * uc;
    const cplx holo = uc.transpose() * x_aa * uc;
    const cplx herm = u.transpose() * y_aa * uc;
    return c0 + (2.0 * linear + holo + herm).real();
}

QForm ProcessState::to_qform() const {
    const int k = modes;
    CVector gamma(2 * k);
    gamma << gamma_a, gamma_b;
    CMatrix x(2 * k, 2 * k), y(2 * k, 2 * k);
    x << x_aa, x_ab, x_ab.transpose(), x_bb;
    y << y_aa, y_ab, y_ab.adjoint(), y_bb;
    return QForm(c0, std::move(gamma), std::move(x), std::move(y));
}

ProcessState ProcessState::from_qform(const QForm &f) {
    require(f.modes() % 2 == 0, ErrorCode::InvalidArgument,
            "a process Q-form spans an even number of modes");
    const int k = f.modes() / 2;
    ProcessState p;
    p.modes = k;
    p.c0 = f.c();
    p.gamma_a = f.gamma().head(k);
    p.gamma_b = f.gamma().tail(k);
    p.x_aa = f.x().topLeftCorner(k, k);
    p.x_ab = f.x().topRightCorner(k, k);
    p.x_bb = f.x().bottomRightCorner(k, k);
    p.y_aa = f.y().topLeftCorner(k, k);
    p.y_ab = f.y().topRightCorner(k, k);
    p.y_bb = f.y().bottomRightCorner(k, k);
    return p;
}

double qform_log_eval(const QForm &f, const CVector &z) {
    require(z.size() == f.modes(), ErrorCode::ModeMismatch, "evaluation point has the wrong length");
    const cplx linear = f.gamma().transpose() * z;
    const cplx holo = z.transpose() * f.x() * z;
    const cplx herm = z.adjoint() * f.y() * z;
    return f.c() + 2.0 * linear.real() + holo.real() + herm.real();
}

double qform_eval(const QForm &f, const CVector &z) {
    return std::exp(qform_log_eval(f, z));
}

double qform_log_normalization(const QForm &f) {
    const RealQuadratic q = to_real_quadratic(f);
    const RMatrix b = -q.m;
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(b);
    if (eig.eigenvalues().minCoeff() <= kNormalizableTolerance) {
        throw Error(ErrorCode::NotNormalizable,
                    "quadratic part is not negative definite (largest eigenvalue " +
                        std::to_string(-eig.eigenvalues().minCoeff()) + ")");
    }
    // ∫ d^{2k}u / π^k exp(-u^T b u + v^T u) = det(b)^{-1/2} exp(v^T b^{-1} v / 4)
    const RVector binv_v = eig.eigenvectors() *
                           (eig.eigenvectors().transpose() * q.v).cwiseQuotient(eig.eigenvalues());
    const double log_det = eig.eigenvalues().array().log().sum();
    return q.c + 0.25 * q.v.dot(binv_v) - 0.5 * log_det;
}

double qform_normalization_integral(const QForm &f) {
    return std::exp(qform_log_normalization(f));
}

// Over the quadrature coordinates xi = sqrt(2) u the Husimi function is
//   exp(log_weight) det(S)^{-1/2} exp(-(xi - m)^T S^{-1} (xi - m) / 2),  S = cov + I/2.
QForm state_to_qform(const GaussianState &s) {
    const int n = 2 * s.modes();
    const RMatrix sigma_q = s.cov() + 0.5 * RMatrix::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(sigma_q);
    if (eig.eigenvalues().minCoeff() <= 1e-12) {
        throw Error(ErrorCode::SingularCovariance, "cov + I/2 is not invertible");
    }
    const RMatrix a = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                      eig.eigenvectors().transpose();
    const RVector am = a * s.mean();
    RealQuadratic q;
    q.m = -a;
    q.v = std::sqrt(2.0) * am;
    q.c = -0.5 * s.mean().dot(am) - 0.5 * eig.eigenvalues().array().log().sum() + s.log_weight();
    return from_real_quadratic(q);
}

StateConversion qform_to_state(const QForm &f) {
    const RealQuadratic q = to_real_quadratic(f);
    const int n = static_cast<int>(q.m.rows());
    const RMatrix a = -q.m;
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(a);
    if (eig.eigenvalues().minCoeff() <= kNormalizableTolerance) {
        throw Error(ErrorCode::NotNormalizable, "Q-form does not describe a normalizable state");
    }
    const RMatrix sigma_q = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                            eig.eigenvectors().transpose();
    RVector mean = sigma_q * q.v / std::sqrt(2.0);
    const double log_weight = q.c + 0.5 * mean.dot(a * mean) - 0.5 * eig.eigenvalues().array().log().sum();
    RMatrix cov = sigma_q - 0.5 * RMatrix::Identity(n, n);
    cov = 0.5 * (cov + cov.transpose()).eval();
    StateConversion out{GaussianState(std::move(mean), std::move(cov), log_weight)};
    out.uncertainty_margin = out.state.uncertainty_margin();
    out.non_physical = out.uncertainty_margin < -kUncertaintyTolerance;
    return out;
}

double max_parameter_deviation(const QForm &a, const QForm &b) {
    require(a.modes() == b.modes(), ErrorCode::ModeMismatch, "Q-forms differ in mode count");
    return std::max({std::abs(a.c() - b.c()), max_abs(a.gamma() - b.gamma()),
                     max_abs(a.x() - b.x()), max_abs(a.y() - b.y())});
}

double max_parameter_deviation(const ProcessState &a, const ProcessState &b) {
    require(a.modes == b.modes, ErrorCode::ModeMismatch, "process states differ in mode count");
    return std::max({std::abs(a.c0 - b.c0), max_abs(a.gamma_a - b.gamma_a),
                     max_abs(a.gamma_b - b.gamma_b), max_abs(a.x_aa - b.x_aa),
                     max_abs(a.x_ab - b.x_ab), max_abs(a.x_bb - b.x_bb), max_abs(a.y_aa - b.y_aa),
                     max_abs(a.y_ab - b.y_ab), max_abs(a.y_bb - b.y_bb)});
}

}  // namespace gqpt
