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

#include "gqpt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gqpt {

namespace {

// Regenerate deterministic probe sets whose condition number exceeds this.
constexpr double kCanonicalConditionLimit = 1e6;

std::vector<std::pair<int, int>> upper_pairs(int k) {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < k; ++m) {
        for (int n = m; n < k; ++n) {
            out.emplace_back(m, n);
        }
    }
    return out;
}

CVector unit(int k, int j, cplx value = 1.0) {
    CVector v = CVector::Zero(k);
    v(j) = value;
    return v;
}

int probe_modes(std::span<const ProbeRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no probe records");
    }
    const int k = records.front().modes();
    for (const auto &r : records) {
        if (r.modes() != k) {
            throw Error(ErrorCode::ModeMismatch, "probe records disagree in mode count");
        }
    }
    return k;
}

int record_modes(std::span<const ProbeRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no probe records");
    }
    const int k = records.front().modes();
    for (const auto &r : records) {
        if (r.modes() != k || r.d.size() != k || r.x_bb.rows() != k || r.y_bb.rows() != k) {
            throw Error(ErrorCode::ModeMismatch, "probe records disagree in mode count");
        }
    }
    return k;
}

std::vector<CVector> probes_of(std::span<const ProbeRecord> records) {
    std::vector<CVector> out;
    out.reserve(records.size());
    for (const auto &r : records) {
        out.push_back(r.probe);
    }
    return out;
}

void require_distinct(std::span<const CVector> probes) {
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            if ((probes[i] - probes[j]).cwiseAbs().maxCoeff() == 0.0) {
                throw Error(ErrorCode::InvalidArgument,
                            "probes " + std::to_string(i) + " and " + std::to_string(j) +
                                " coincide");
            }
        }
    }
}

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<CVector> deterministic_probes(int k, bool trace_preserving) {
    std::vector<CVector> p;
    p.push_back(CVector::Zero(k));
    for (int j = 0; j < k; ++j) {
        p.push_back(unit(k, j));
        p.push_back(unit(k, j, kI));
    }
    if (trace_preserving) {
        return p;
    }
    for (int j = 0; j < k; ++j) {
        p.push_back(unit(k, j, -1.0));
        p.push_back(unit(k, j, -kI));
    }
    for (int j = 0; j < k; ++j) {
        p.push_back(unit(k, j, cplx(1.0, 1.0)));
    }
    for (int j = 0; j < k; ++j) {
        for (int l = j + 1; l < k; ++l) {
            p.push_back(unit(k, j) + unit(k, l));
        }
    }
    for (int j = 0; j < k; ++j) {
        for (int l = 0; l < k; ++l) {
            if (l != j) {
                p.push_back(unit(k, j) + unit(k, l, kI));
            }
        }
    }
    for (int j = 0; j < k; ++j) {
        for (int l = j + 1; l < k; ++l) {
            p.push_back(kI * (unit(k, j) + unit(k, l)));
        }
    }
    return p;
}

double set_condition(const ProbeSet &p) {
    try {
        const Conditioning c = validate_probe_set(p);
        return c.cond_j.value_or(c.cond_k);
    } catch (const Error &) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

std::size_t linear_unknowns(int modes) {
    return static_cast<std::size_t>(2 * modes + 1);
}

std::size_t quadratic_unknowns(int modes) {
    return static_cast<std::size_t>((modes + 1) * (2 * modes + 1));
}

void ProbeSet::check() const {
    if (modes < 1) {
        throw Error(ErrorCode::InvalidArgument, "probe set needs at least one mode");
    }
    const std::size_t want = trace_preserving ? linear_unknowns(modes) : quadratic_unknowns(modes);
    if (probes.size() != want) {
        throw Error(ErrorCode::InvalidArgument, "probe set holds " + std::to_string(probes.size()) +
                                                    " probes, expected " + std::to_string(want));
    }
    for (const auto &p : probes) {
        if (p.size() != modes) {
            throw Error(ErrorCode::ModeMismatch, "probe length disagrees with the mode count");
        }
        if (!p.array().isFinite().all()) {
            throw Error(ErrorCode::InvalidArgument, "probe amplitudes must be finite");
        }
    }
    require_distinct(probes);
}

ProbeSet canonical_probes(int modes, bool trace_preserving, double scale) {
    if (modes < 1 || !(scale > 0.0) || !std::isfinite(scale)) {
        throw Error(ErrorCode::InvalidArgument, "canonical probes need modes >= 1 and scale > 0");
    }
    ProbeSet set{modes, deterministic_probes(modes, trace_preserving), trace_preserving};
    for (auto &p : set.probes) {
        p *= scale;
    }
    if (set_condition(set) < kCanonicalConditionLimit) {
        return set;
    }
    // Fall back to seeded perturbations of the deterministic pattern.
    const std::vector<CVector> base = set.probes;
    std::normal_distribution<double> normal(0.0, 0.25 * scale);
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        std::mt19937_64 rng(attempt);
        for (std::size_t i = 1; i < base.size(); ++i) {
            for (int j = 0; j < modes; ++j) {
                const double re = normal(rng);
                const double im = normal(rng);
                set.probes[i](j) = base[i](j) + cplx(re, im);
            }
        }
        if (set_condition(set) < kCanonicalConditionLimit) {
            return set;
        }
    }
    throw Error(ErrorCode::SingularJ, "could not generate a well-conditioned probe set");
}

double condition_number(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s(0) / s(s.size() - 1);
}

CMatrix build_k(std::span<const CVector> probes) {
    if (probes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no probes");
    }
    const auto k = probes.front().size();
    CMatrix out(static_cast<Eigen::Index>(probes.size()), 2 * k + 1);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        out(row, 0) = 1.0;
        out.row(row).segment(1, k) = probes[i].conjugate().transpose();
        out.row(row).segment(1 + k, k) = probes[i].transpose();
    }
    return out;
}

CMatrix build_j(std::span<const CVector> probes) {
    if (probes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no probes");
    }
    const int k = static_cast<int>(probes.front().size());
    const auto pairs = upper_pairs(k);
    const auto n = static_cast<Eigen::Index>(quadratic_unknowns(k));
    CMatrix out(static_cast<Eigen::Index>(probes.size()), n);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const CVector &a = probes[i];
        const CVector ac = a.conjugate();
        int col = 0;
        out(row, col++) = 1.0;
        for (int m = 0; m < k; ++m) {
            out(row, col++) = ac(m);
        }
        for (int m = 0; m < k; ++m) {
            out(row, col++) = a(m);
        }
        for (const auto &[m, q] : pairs) {
            out(row, col++) = 0.5 * ac(m) * ac(q);
        }
        for (const auto &[m, q] : pairs) {
            out(row, col++) = 0.5 * a(m) * a(q);
        }
        for (int m = 0; m < k; ++m) {
            for (int q = 0; q < k; ++q) {
                out(row, col++) = a(m) * ac(q);
            }
        }
    }
    return out;
}

Conditioning validate_probe_set(const ProbeSet &p) {
    p.check();
    const auto nk = linear_unknowns(p.modes);
    Conditioning out;
    out.cond_k = condition_number(build_k(std::span(p.probes).first(nk)));
    if (!(out.cond_k <= kSingularCondition)) {
        throw Error(ErrorCode::SingularK,
                    "K has condition number " + std::to_string(out.cond_k));
    }
    if (!p.trace_preserving) {
        const double cj = condition_number(build_j(p.probes));
        if (!(cj <= kSingularCondition)) {
            throw Error(ErrorCode::SingularJ, "J has condition number " + std::to_string(cj));
        }
        out.cond_j = cj;
    }
    return out;
}

LinearPart solve_linear_part(std::span<const ProbeRecord> records) {
    const int k = record_modes(records);
    if (records.size() != linear_unknowns(k)) {
        throw Error(ErrorCode::InvalidArgument, "the linear part needs exactly " +
                                                    std::to_string(linear_unknowns(k)) +
                                                    " records");
    }
    const auto probes = probes_of(records);
    require_distinct(probes);
    const CMatrix kmat = build_k(probes);
    const double cond = condition_number(kmat);
    if (!(cond <= kSingularCondition)) {
        throw Error(ErrorCode::SingularK, "K has condition number " + std::to_string(cond));
    }
    CMatrix d(static_cast<Eigen::Index>(records.size()), k);
    for (std::size_t i = 0; i < records.size(); ++i) {
        d.row(static_cast<Eigen::Index>(i)) = records[i].d.transpose();
    }
    const CMatrix u = kmat.fullPivLu().solve(d);
    return LinearPart{u.row(0).transpose(), u.middleRows(1, k), u.middleRows(1 + k, k)};
}

QuadraticPart solve_quadratic_part(std::span<const ProbeRecord> records) {
    const int k = probe_modes(records);
    if (records.size() != quadratic_unknowns(k)) {
        throw Error(ErrorCode::InvalidArgument, "the quadratic part needs exactly " +
                                                    std::to_string(quadratic_unknowns(k)) +
                                                    " records");
    }
    const auto probes = probes_of(records);
    require_distinct(probes);
    const CMatrix jmat = build_j(probes);
    const double cond = condition_number(jmat);
    if (!(cond <= kSingularCondition)) {
        throw Error(ErrorCode::SingularJ, "J has condition number " + std::to_string(cond));
    }
    CVector c(jmat.rows());
    for (std::size_t i = 0; i < records.size(); ++i) {
        c(static_cast<Eigen::Index>(i)) = records[i].c;
    }
    const CVector s = jmat.fullPivLu().solve(c);

    const auto pairs = upper_pairs(k);
    const auto np = static_cast<Eigen::Index>(pairs.size());
    const CVector gamma = s.segment(1, k);
    const CVector gamma_conj = s.segment(1 + k, k);
    CMatrix x = CMatrix::Zero(k, k), x_conj = CMatrix::Zero(k, k);
    for (Eigen::Index p = 0; p < np; ++p) {
        const auto [m, n] = pairs[static_cast<std::size_t>(p)];
        const double unpack = (m == n) ? 1.0 : 0.5;
        x(m, n) = x(n, m) = unpack * s(1 + 2 * k + p);
        x_conj(m, n) = x_conj(n, m) = unpack * s(1 + 2 * k + np + p);
    }
    CMatrix y(k, k);
    for (int m = 0; m < k; ++m) {
        for (int n = 0; n < k; ++n) {
            y(m, n) = s(1 + 2 * k + 2 * np + m * k + n);
        }
    }

    const double scale = std::max(1.0, max_abs(s));
    const double defect = std::max({std::abs(s(0).imag()), max_abs(gamma_conj - gamma.conjugate()),
                                    max_abs(x_conj - x.conjugate()), max_abs(y - y.adjoint())});
    if (defect > kConjugateTolerance * scale) {
        throw Error(ErrorCode::ConjugateInconsistency,
                    "conjugate unknowns disagree by " + std::to_string(defect));
    }
    QuadraticPart out;
    out.c0 = s(0).real();
    out.gamma_a = 0.5 * (gamma + gamma_conj.conjugate());
    out.x_aa = 0.5 * (x + x_conj.conjugate());
    out.y_aa = 0.5 * (y + y.adjoint());
    return out;
}

double sampled_quadratic_tolerance(std::span<const ProbeRecord> records) {
    double tol = 0.0;
    for (const auto &r : records) {
        if (r.exact()) {
            continue;
        }
        // Relative error of a sample covariance is about sqrt(2/n); the
        // inverse amplifies it by the condition number.
        const RealQuadratic q = to_real_quadratic(r.output_form());
        Eigen::SelfAdjointEigenSolver<RMatrix> eig(-q.m, Eigen::EigenvaluesOnly);
        const double lo = std::max(eig.eigenvalues().minCoeff(), 1e-12);
        const double hi = eig.eigenvalues().maxCoeff();
        const double se = std::sqrt(2.0 / static_cast<double>(*r.sample_count)) * hi * hi / lo;
        tol = std::max(tol, 5.0 * std::sqrt(2.0) * se);
    }
    return tol;
}

Reconstruction reconstruct(std::span<const ProbeRecord> all, bool trace_preserving,
                           const ReconstructOptions &options) {
    const int k = record_modes(all);
    const std::size_t nk = linear_unknowns(k), nj = quadratic_unknowns(k);
    std::span<const ProbeRecord> records = all;
    if (trace_preserving) {
        if (all.size() < nk) {
            throw Error(ErrorCode::InvalidArgument, "trace-preserving reconstruction needs " +
                                                        std::to_string(nk) + " records");
        }
        records = all.first(nk);
    } else if (all.size() != nj) {
        throw Error(ErrorCode::InvalidArgument, "reconstruction needs " + std::to_string(nj) +
                                                    " records, got " +
                                                    std::to_string(all.size()));
    }

    const bool exact = std::all_of(records.begin(), records.end(),
                                   [](const ProbeRecord &r) { return r.exact(); });
    const double tol = options.quadratic_tolerance.value_or(
        exact ? kExactQuadraticTolerance
              : std::max(kExactQuadraticTolerance, sampled_quadratic_tolerance(records)));
    CMatrix x_bb = CMatrix::Zero(k, k), y_bb = CMatrix::Zero(k, k);
    for (const auto &r : records) {
        const double spread = std::max(max_abs(r.x_bb - records.front().x_bb),
                                       max_abs(r.y_bb - records.front().y_bb));
        if (spread > tol) {
            throw Error(ErrorCode::InconsistentQuadraticPart,
                        "output quadratic parts differ by " + std::to_string(spread) +
                            " (tolerance " + std::to_string(tol) + ")");
        }
        x_bb += r.x_bb;
        y_bb += r.y_bb;
    }
    x_bb /= static_cast<double>(records.size());
    y_bb /= static_cast<double>(records.size());

    Reconstruction out;
    out.records_used = records.size();
    const LinearPart lin = solve_linear_part(records.first(nk));
    out.cond_k = condition_number(build_k(probes_of(records.first(nk))));

    QuadraticPart quad;
    if (trace_preserving) {
        // Constants of unit-trace outputs at the canonical full probe points.
        const ProbeSet virt = canonical_probes(k, false, 1.0);
        std::vector<ProbeRecord> synthetic;
        synthetic.reserve(virt.probes.size());
        for (const auto &u : virt.probes) {
            const CVector gamma = lin.gamma_b + lin.x_ab.transpose() * u.conjugate() +
                                  lin.y_ab.transpose() * u;
            const QForm f(0.0, gamma, x_bb, y_bb);
            synthetic.push_back(ProbeRecord::from_form(u, f.with_c(-qform_log_normalization(f))));
        }
        quad = solve_quadratic_part(synthetic);
        out.cond_j = condition_number(build_j(virt.probes));
    } else {
        quad = solve_quadratic_part(records);
        out.cond_j = condition_number(build_j(probes_of(records)));
    }

    ProcessState &p = out.process;
    p.modes = k;
    p.c0 = quad.c0;
    p.gamma_a = quad.gamma_a;
    p.gamma_b = lin.gamma_b;
    p.x_aa = quad.x_aa;
    p.x_ab = lin.x_ab;
    p.x_bb = 0.5 * (x_bb + x_bb.transpose());
    p.y_aa = quad.y_aa;
    p.y_ab = lin.y_ab;
    p.y_bb = 0.5 * (y_bb + y_bb.adjoint());

    for (const auto &r : records) {
        const double defect = (p.output_linear(r.probe) - r.d).cwiseAbs().maxCoeff() +
                              std::abs(p.output_constant(r.probe) - r.c);
        out.residual = std::max(out.residual, defect);
    }
    return out;
}

}  // namespace gqpt
