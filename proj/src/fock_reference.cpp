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

// Brute-force Fock-space simulation of single-mode channels. Nothing here
// uses the phase-space formulas of channel.cpp; the two routes are compared
// in the tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "gqpt/channel.hpp"

namespace gqpt {

namespace {

constexpr double kTruncationBudget = 1e-6;

CMatrix annihilation(int dim) {
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

double trace(const CMatrix &rho) {
    return rho.trace().real();
}

// Density matrix over levels [0, dim) that tracks how much weight has been
// pushed past the top level.
class Workspace {
  public:
    explicit Workspace(int cutoff)
        : cutoff_(cutoff), margin_(std::max(20, cutoff / 2)), dim_(cutoff + 1 + margin_) {
    }

    void load(const GaussianState &s) {
        if (s.modes() != 1) {
            throw Error(ErrorCode::ModeMismatch, "the Fock reference is single-mode only");
        }
        const Eigen::Matrix2d cov = s.cov().topLeftCorner<2, 2>();
        const double nu = std::sqrt(cov.determinant());
        const double nbar = std::max(0.0, nu - 0.5);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
        const double r = 0.5 * std::log(eig.eigenvalues()(1) / nu);
        const Eigen::Vector2d major = eig.eigenvectors().col(1);
        const double phi = 2.0 * std::atan2(major(1), major(0)) - std::numbers::pi;
        const cplx alpha = s.amplitude()(0);

        const int big = dim_ + margin_;
        CMatrix rho = CMatrix::Zero(big, big);
        const double ratio = nbar / (1.0 + nbar);
        double p = 1.0 / (1.0 + nbar);
        for (int n = 0; n < big; ++n, p *= ratio) {
            rho(n, n) = p;
        }
        lost_ += std::pow(ratio, big);

        const CMatrix a = annihilation(big);
        const cplx xi = std::polar(r, phi);
        const CMatrix squeeze =
            (0.5 * (std::conj(xi) * a * a - xi * a.adjoint() * a.adjoint())).exp();
        const CMatrix displace = (alpha * a.adjoint() - std::conj(alpha) * a).exp();
        const CMatrix u = displace * squeeze;
        const CMatrix full = u * rho * u.adjoint();
        rho_ = full.topLeftCorner(dim_, dim_);
        lost_ += trace(full) - trace(rho_);
        rho_ *= std::exp(s.log_weight());
        norm_ = std::exp(s.log_weight());
    }

    void unitary(const CMatrix &generator_big) {
        const CMatrix u = generator_big.exp().topLeftCorner(dim_, dim_);
        const double before = trace(rho_);
        rho_ = u * rho_ * u.adjoint();
        lost_ += (before - trace(rho_)) / norm_;
    }

    int big_dim() const { return dim_ + margin_; }

    // exp(θ(a c† - a† c)) on |n, 0>, partial trace over c.
    void loss(double theta) {
        CMatrix out = CMatrix::Zero(dim_, dim_);
        std::vector<RVector> amp(dim_);
        for (int n = 0; n < dim_; ++n) {
            RMatrix g = RMatrix::Zero(n + 1, n + 1);
            for (int j = 0; j < n; ++j) {
                const double w = theta * std::sqrt(static_cast<double>((n - j) * (j + 1)));
                g(j + 1, j) = w;
                g(j, j + 1) = -w;
            }
            amp[n] = g.exp().col(0);
        }
        for (int n = 0; n < dim_; ++n) {
            for (int m = 0; m < dim_; ++m) {
                if (rho_(n, m) == cplx(0.0)) {
                    continue;
                }
                for (int j = 0; j <= std::min(n, m); ++j) {
                    out(n - j, m - j) += amp[n](j) * rho_(n, m) * amp[m](j);
                }
            }
        }
        rho_ = std::move(out);
    }

    // exp(r(a† c† - a c)) on |n, 0> with cosh² r = gain, partial trace over c.
    void amplify(double gain) {
        const double r = std::acosh(std::sqrt(gain));
        const double before = trace(rho_);
        std::vector<RVector> amp(dim_);
        for (int n = 0; n < dim_; ++n) {
            const int size = dim_ - n + margin_;
            RMatrix g = RMatrix::Zero(size, size);
            for (int j = 0; j + 1 < size; ++j) {
                const double w = r * std::sqrt(static_cast<double>((n + j + 1) * (j + 1)));
                g(j + 1, j) = w;
                g(j, j + 1) = -w;
            }
            amp[n] = g.exp().col(0);
        }
        CMatrix out = CMatrix::Zero(dim_, dim_);
        for (int n = 0; n < dim_; ++n) {
            for (int m = 0; m < dim_; ++m) {
                if (rho_(n, m) == cplx(0.0)) {
                    continue;
                }
                for (int j = 0; n + j < dim_ && m + j < dim_; ++j) {
                    out(n + j, m + j) += amp[n](j) * rho_(n, m) * amp[m](j);
                }
            }
        }
        rho_ = std::move(out);
        lost_ += (before - trace(rho_)) / norm_;
    }

    void decay(double kappa) {
        RVector d(dim_);
        for (int n = 0; n < dim_; ++n) {
            d(n) = std::exp(-kappa * n);
        }
        rho_ = d.asDiagonal() * rho_ * d.asDiagonal();
    }

    CMatrix result() const {
        const CMatrix kept = rho_.topLeftCorner(cutoff_ + 1, cutoff_ + 1);
        const double tail = (trace(rho_) - trace(kept)) / norm_;
        const double error = lost_ + tail;
        if (error > kTruncationBudget) {
            throw Error(ErrorCode::CutoffTooSmall,
                        "estimated truncation error " + std::to_string(error) + " at cutoff " +
                            std::to_string(cutoff_));
        }
        return kept;
    }

  private:
    int cutoff_;
    int margin_;
    int dim_;
    CMatrix rho_;
    double lost_ = 0.0;
    double norm_ = 1.0;
};

void check_cutoff(int cutoff) {
    if (cutoff < 1 || cutoff > 200) {
        throw Error(ErrorCode::InvalidArgument, "Fock cutoff must lie in [1, 200]");
    }
}

}  // namespace

CMatrix fock_density(const GaussianState &s, int cutoff) {
    check_cutoff(cutoff);
    Workspace w(cutoff);
    w.load(s);
    return w.result();
}

CMatrix fock_reference(const ChannelSpec &spec, const GaussianState &input, int cutoff) {
    check_cutoff(cutoff);
    if (spec.modes() != 1 || input.modes() != 1) {
        throw Error(ErrorCode::ModeMismatch, "the Fock reference is single-mode only");
    }
    Workspace w(cutoff);
    w.load(input);
    const CMatrix a = annihilation(w.big_dim());
    for (const auto &e : spec.elements()) {
        if (const auto *d = std::get_if<element::Displace>(&e)) {
            w.unitary(d->beta * a.adjoint() - std::conj(d->beta) * a);
        } else if (const auto *p = std::get_if<element::Phase>(&e)) {
            w.unitary(kI * p->phi * a.adjoint() * a);
        } else if (const auto *s = std::get_if<element::Squeeze>(&e)) {
            const cplx xi = std::polar(s->r, s->phi);
            w.unitary(0.5 * (std::conj(xi) * a * a - xi * a.adjoint() * a.adjoint()));
        } else if (const auto *l = std::get_if<element::LossBS>(&e)) {
            w.loss(l->theta);
        } else if (const auto *g = std::get_if<element::Amplify>(&e)) {
            w.amplify(g->gain);
        } else if (const auto *t = std::get_if<element::ThermalNoise>(&e)) {
            w.loss(std::acos(1.0 / std::sqrt(1.0 + t->mean_photons)));
            w.amplify(1.0 + t->mean_photons);
        } else if (const auto *k = std::get_if<element::TraceDecay>(&e)) {
            w.decay(k->kappa);
        } else {
            throw Error(ErrorCode::InvalidArgument,
                        "element not supported by the single-mode Fock reference");
        }
    }
    return w.result();
}

double fock_husimi(const CMatrix &rho, cplx z) {
    const auto dim = rho.rows();
    CVector c(dim);
    cplx term = std::exp(-0.5 * std::norm(z));
    for (Eigen::Index n = 0; n < dim; ++n) {
        c(n) = term;
        term *= z / std::sqrt(static_cast<double>(n + 1));
    }
    return (c.adjoint() * rho * c)(0, 0).real();
}

}  // namespace gqpt
