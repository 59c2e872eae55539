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

// Process reconstruction from coherent-state probes.
//
// For a probe u the output Husimi function of a Gaussian process is
//
//     exp(c_u + 2 Re(L_u . Z) + Re(Z^T X_bb Z) + Z^† Y_bb Z),
//     L_u = Gamma_b + X_ab^T u* + Y_ab^T u,
//     c_u = c0 + Re(2 Gamma_a . u* + u*^T X_aa u* + u^T Y_aa u*),
//
// so the detected linear terms are linear in (1, u*, u) and the detected
// constants are linear in (1, u*, u, u*u*, u u, u u*). Stacking 2k+1 probes
// gives the "K" system for (Gamma_b, X_ab, Y_ab), and (k+1)(2k+1) probes the
// "J" system for (c0, Gamma_a, X_aa, Y_aa).
//
// Column layout of J for k modes, frozen:
//   [0]                         1
//   [1, 1+k)                    u*_m                       -> Gamma_a[m]
//   [1+k, 1+2k)                 u_m                        -> conj(Gamma_a[m])
//   next k(k+1)/2               ½ u*_m u*_n, n >= m        -> X_aa[m][m] or 2 X_aa[m][n]
//   next k(k+1)/2               ½ u_m u_n,   n >= m        -> conj of the above
//   next k²                     u_m u*_n, row-major (m, n) -> Y_aa[m][n]
// Pairs (m, n) with n >= m run m-major: (0,0), (0,1), ..., (0,k-1), (1,1), ...

#include <optional>
#include <span>
#include <vector>

#include "gqpt/gaussian_forms.hpp"
#include "gqpt/qst.hpp"

namespace gqpt {

/// Condition number above which K or J is treated as singular.
inline constexpr double kSingularCondition = 1e12;

/// Agreement required between the independently solved Gamma_a / conj(Gamma_a)
/// and X_aa / conj(X_aa) columns.
inline constexpr double kConjugateTolerance = 1e-8;

/// Cross-record agreement of (x_bb, y_bb) for exact records.
inline constexpr double kExactQuadraticTolerance = 1e-6;

std::size_t linear_unknowns(int modes);     // 2k + 1
std::size_t quadratic_unknowns(int modes);  // (k + 1)(2k + 1)

struct ProbeSet {
    int modes = 1;
    std::vector<CVector> probes;
    bool trace_preserving = false;

    /// Throws InvalidArgument on a wrong count, a wrong probe length or
    /// repeated probes.
    void check() const;
};

ProbeSet canonical_probes(int modes, bool trace_preserving, double scale = 1.0);

struct Conditioning {
    double cond_k = 0.0;
    std::optional<double> cond_j;
};

/// Throws SingularK / SingularJ when the condition number exceeds
/// kSingularCondition.
Conditioning validate_probe_set(const ProbeSet &p);

CMatrix build_k(std::span<const CVector> probes);
CMatrix build_j(std::span<const CVector> probes);
double condition_number(const CMatrix &m);

struct LinearPart {
    CVector gamma_b;
    CMatrix x_ab;
    CMatrix y_ab;
};

struct QuadraticPart {
    double c0 = 0.0;
    CVector gamma_a;
    CMatrix x_aa;
    CMatrix y_aa;
};

/// Solves K (Gamma_b; X_ab; Y_ab) = d from exactly 2k+1 records.
LinearPart solve_linear_part(std::span<const ProbeRecord> records);

/// Solves J (c0, Gamma_a, Gamma_a*, X_aa, X_aa*, Y_aa) = c from exactly
/// (k+1)(2k+1) records. Only the probes and constants are read.
QuadraticPart solve_quadratic_part(std::span<const ProbeRecord> records);

struct ReconstructOptions {
    /// Tolerance on cross-record (x_bb, y_bb) agreement. Empty selects
    /// kExactQuadraticTolerance for exact records and five standard errors for
    /// sampled ones.
    std::optional<double> quadratic_tolerance;
};

struct Reconstruction {
    ProcessState process;
    double cond_k = 0.0;
    std::optional<double> cond_j;
    /// max_i |L_i - d_i| + |c_{alpha_i} - c_i| over the records used.
    double residual = 0.0;
    /// Records actually used (a trace-preserving run over a full data set
    /// keeps the first 2k+1).
    std::size_t records_used = 0;
};

Reconstruction reconstruct(std::span<const ProbeRecord> records, bool trace_preserving,
                           const ReconstructOptions &options = {});

/// Tolerance used for sampled records: five standard errors of the
/// moment estimate of (x_bb, y_bb).
double sampled_quadratic_tolerance(std::span<const ProbeRecord> records);

}  // namespace gqpt
