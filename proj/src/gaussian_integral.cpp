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

#include "gqpt/gaussian_integral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace gqpt {

namespace {

// Rows: z = W u, then z* = W* u.
CMatrix holomorphic_map(int n) {
    CMatrix v = CMatrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        v(j, 2 * j) = 1.0;
        v(j, 2 * j + 1) = kI;
        v(n + j, 2 * j) = 1.0;
        v(n + j, 2 * j + 1) = -kI;
    }
    return v;
}

CVector real_coordinates(const CVector &z) {
    CVector u(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        u(2 * j) = z(j).real();
        u(2 * j + 1) = z(j).imag();
    }
    return u;
}

}  // namespace

GaussianExponent GaussianExponent::from_holomorphic(cplx c, const CVector &l, const CMatrix &q) {
    if (l.size() % 2 != 0 || q.rows() != l.size() || q.cols() != l.size()) {
        throw Error(ErrorCode::InvalidArgument, "holomorphic exponent has inconsistent shapes");
    }
    const int n = static_cast<int>(l.size() / 2);
    const CMatrix v = holomorphic_map(n);
    GaussianExponent e;
    e.m = 0.5 * v.transpose() * q * v;
    e.m = 0.5 * (e.m + e.m.transpose()).eval();
    e.v = v.transpose() * l;
    e.c = c;
    return e;
}

GaussianExponent GaussianExponent::from_qform(const QForm &f) {
    const RealQuadratic q = to_real_quadratic(f);
    return GaussianExponent{q.m.cast<cplx>(), q.v.cast<cplx>(), cplx(q.c, 0.0)};
}

cplx GaussianExponent::evaluate(const CVector &z) const {
    if (2 * z.size() != v.size()) {
        throw Error(ErrorCode::ModeMismatch, "evaluation point has the wrong length");
    }
    const CVector u = real_coordinates(z);
    const cplx quad = u.transpose() * m * u;
    const cplx lin = v.transpose() * u;
    return quad + lin + c;
}

GaussianExponent integrate_out(const GaussianExponent &e, std::span<const int> vars) {
    const int n = e.variables();
    std::vector<bool> gone(static_cast<std::size_t>(n), false);
    for (int j : vars) {
        if (j < 0 || j >= n || gone[static_cast<std::size_t>(j)]) {
            throw Error(ErrorCode::InvalidArgument, "bad or repeated integration variable");
        }
        gone[static_cast<std::size_t>(j)] = true;
    }
    std::vector<int> s_idx, r_idx;
    for (int j = 0; j < n; ++j) {
        auto &dst = gone[static_cast<std::size_t>(j)] ? s_idx : r_idx;
        dst.push_back(2 * j);
        dst.push_back(2 * j + 1);
    }
    if (s_idx.empty()) {
        return e;
    }
    const auto ns = static_cast<Eigen::Index>(s_idx.size());
    const auto nr = static_cast<Eigen::Index>(r_idx.size());
    CMatrix mss(ns, ns), mrs(nr, ns), mrr(nr, nr);
    CVector vs(ns), vr(nr);
    for (Eigen::Index a = 0; a < ns; ++a) {
        vs(a) = e.v(s_idx[a]);
        for (Eigen::Index b = 0; b < ns; ++b) {
            mss(a, b) = e.m(s_idx[a], s_idx[b]);
        }
    }
    for (Eigen::Index a = 0; a < nr; ++a) {
        vr(a) = e.v(r_idx[a]);
        for (Eigen::Index b = 0; b < ns; ++b) {
            mrs(a, b) = e.m(r_idx[a], s_idx[b]);
        }
        for (Eigen::Index b = 0; b < nr; ++b) {
            mrr(a, b) = e.m(r_idx[a], r_idx[b]);
        }
    }

    const CMatrix b = -mss;
    const RMatrix b_re = 0.5 * (b.real() + b.real().transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> re_eig(b_re, Eigen::EigenvaluesOnly);
    if (re_eig.eigenvalues().minCoeff() <= kNormalizableTolerance) {
        throw Error(ErrorCode::DivergentIntegral,
                    "real part of the integrated quadratic block is not negative definite "
                    "(eigenvalue " + std::to_string(-re_eig.eigenvalues().minCoeff()) + ")");
    }
    // With Re b > 0 every eigenvalue of b has positive real part, and the
    // principal branch of each square root continues the real case.
    Eigen::ComplexEigenSolver<CMatrix> eig(b, false);
    cplx log_det = 0.0;
    for (Eigen::Index i = 0; i < ns; ++i) {
        log_det += std::log(eig.eigenvalues()(i));
    }
    const auto lu = b.fullPivLu();
    const CVector binv_v = lu.solve(vs);
    const CMatrix binv_msr = lu.solve(mrs.transpose());

    GaussianExponent out;
    out.m = mrr + mrs * binv_msr;
    out.m = 0.5 * (out.m + out.m.transpose()).eval();
    out.v = vr + mrs * binv_v;
    out.c = e.c + 0.25 * cplx(vs.transpose() * binv_v) - 0.5 * log_det;
    return out;
}

QForm to_qform(const GaussianExponent &e, double imag_tolerance) {
    if (e.variables() < 1) {
        throw Error(ErrorCode::InvalidArgument, "exponent has no variables left");
    }
    const double scale = std::max({1.0, e.m.cwiseAbs().maxCoeff(), e.v.cwiseAbs().maxCoeff(),
                                   std::abs(e.c)});
    const double imag = std::max({e.m.imag().cwiseAbs().maxCoeff(),
                                  e.v.imag().cwiseAbs().maxCoeff(), std::abs(e.c.imag())});
    if (imag > imag_tolerance * scale) {
        throw Error(ErrorCode::InvalidArgument,
                    "exponent is not real (imaginary part " + std::to_string(imag) + ")");
    }
    return from_real_quadratic(RealQuadratic{e.m.real(), e.v.real(), e.c.real()});
}

}  // namespace gqpt
