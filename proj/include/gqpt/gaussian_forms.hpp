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

#include "gqpt/types.hpp"

namespace gqpt {

/// Eigenvalue bound below which the real quadratic part of a Q-form counts
/// as negative definite.
inline constexpr double kNormalizableTolerance = 1e-10;

/// Tolerance on the smallest eigenvalue of cov + (i/2)Ω.
inline constexpr double kUncertaintyTolerance = 1e-9;

/// Exponent of a Gaussian Husimi function over k complex amplitudes,
///
///     Q(Z*, Z) = exp(c + 2 Re(gamma . Z) + Re(Z^T x Z) + Z^† y Z),
///
/// with x complex symmetric and y Hermitian. The constructor mirrors the
/// upper triangle of x and the lower triangle of y (taking the real part of
/// its diagonal), so both symmetries hold exactly for every instance.
class QForm {
  public:
    QForm(double c, CVector gamma, CMatrix x, CMatrix y);

    /// exp(-|Z|^2) over k modes.
    static QForm vacuum(int modes);
    /// |<Z|beta>|^2 for the product coherent state |beta>.
    static QForm coherent(const CVector &beta);

    int modes() const { return static_cast<int>(gamma_.size()); }
    double c() const { return c_; }
    const CVector &gamma() const { return gamma_; }
    const CMatrix &x() const { return x_; }
    const CMatrix &y() const { return y_; }

    QForm with_c(double c) const { return QForm(c, gamma_, x_, y_); }

    /// The real 2k x 2k matrix of the quadratic part is negative definite.
    bool normalizable() const;

  private:
    double c_;
    CVector gamma_;
    CMatrix x_;
    CMatrix y_;
};

/// A Q-form rewritten over the real coordinates u = (Re Z1, Im Z1, Re Z2, ...):
/// exponent = u^T m u + v^T u + c.
struct RealQuadratic {
    RMatrix m;
    RVector v;
    double c = 0.0;
};

RealQuadratic to_real_quadratic(const QForm &f);
QForm from_real_quadratic(const RealQuadratic &q);

/// Gaussian state in quadrature order (x1, p1, ..., xk, pk) with
/// a = (x + ip)/sqrt(2); the vacuum has cov = I/2. `log_weight` is the log of
/// the trace, which is nonzero only after non-trace-preserving maps.
class GaussianState {
  public:
    GaussianState(RVector mean, RMatrix cov, double log_weight = 0.0);

    static GaussianState vacuum(int modes);
    static GaussianState coherent(const CVector &alpha);

    int modes() const { return static_cast<int>(mean_.size() / 2); }
    const RVector &mean() const { return mean_; }
    const RMatrix &cov() const { return cov_; }
    double log_weight() const { return log_weight_; }

    /// Complex amplitudes <a_j> / tr(rho).
    CVector amplitude() const;

    /// Smallest eigenvalue of cov + (i/2)Ω.
    double uncertainty_margin() const;
    bool physical(double tolerance = kUncertaintyTolerance) const {
        return uncertainty_margin() >= -tolerance;
    }

    GaussianState normalized() const { return GaussianState(mean_, cov_, 0.0); }

  private:
    RVector mean_;
    RMatrix cov_;
    double log_weight_;
};

/// The symplectic form ⊕ [[0, 1], [-1, 0]] over k modes.
RMatrix symplectic_form(int modes);

/// Q-form of the process operator over modes (a, b), each block k x k.
struct ProcessState {
    int modes = 1;
    double c0 = 0.0;
    CVector gamma_a, gamma_b;
    CMatrix x_aa, x_ab, x_bb;
    CMatrix y_aa, y_ab, y_bb;

    static ProcessState zeros(int modes);

    /// Linear coefficient of the output Q-form for coherent input u:
    /// Gamma_b + X_ab^T u* + Y_ab^T u.
    CVector output_linear(const CVector &u) const;
    /// Constant of the output Q-form for coherent input u:
    /// c0 + Re(2 Gamma_a . u* + u*^T X_aa u* + u^T Y_aa u*).
    double output_constant(const CVector &u) const;

    /// 2k-mode Q-form with Z = (Z_a, Z_b).
    QForm to_qform() const;
    static ProcessState from_qform(const QForm &f);
};

double qform_eval(const QForm &f, const CVector &z);
double qform_log_eval(const QForm &f, const CVector &z);

/// ∫ Π_j d²Z_j/π Q(Z*, Z); throws NotNormalizable.
double qform_normalization_integral(const QForm &f);
double qform_log_normalization(const QForm &f);

/// Throws SingularCovariance when cov + I/2 is not invertible.
QForm state_to_qform(const GaussianState &s);

struct StateConversion {
    GaussianState state;
    /// Set when the recovered covariance violates the uncertainty relation.
    bool non_physical = false;
    double uncertainty_margin = 0.0;
};

/// Inverse of state_to_qform. Throws NotNormalizable; an unphysical
/// covariance is reported through StateConversion::non_physical.
StateConversion qform_to_state(const QForm &f);

/// Largest absolute difference over c, gamma, x and y.
double max_parameter_deviation(const QForm &a, const QForm &b);
double max_parameter_deviation(const ProcessState &a, const ProcessState &b);

}  // namespace gqpt
