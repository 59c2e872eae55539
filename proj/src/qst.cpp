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

#include "gqpt/qst.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace gqpt {

ProbeRecord ProbeRecord::from_form(const CVector &probe, const QForm &f) {
    if (probe.size() != f.modes()) {
        throw Error(ErrorCode::ModeMismatch, "probe length disagrees with the output modes");
    }
    ProbeRecord r;
    r.probe = probe;
    r.c = f.c();
    r.d = f.gamma();
    r.x_bb = f.x();
    r.y_bb = f.y();
    return r;
}

ProbeRecord extract_exact(const GaussianState &out, const CVector &probe) {
    return ProbeRecord::from_form(probe, state_to_qform(out));
}

std::vector<CVector> sample_heterodyne(const GaussianState &out, std::size_t n, std::uint64_t seed) {
    if (std::abs(out.log_weight()) > 1e-12) {
        throw Error(ErrorCode::UnnormalizedState,
                    "heterodyne sampling needs a unit-trace state; supply the trace separately");
    }
    const int k = out.modes();
    const RMatrix sigma_q = out.cov() + 0.5 * RMatrix::Identity(2 * k, 2 * k);
    Eigen::LLT<RMatrix> llt(sigma_q);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularCovariance, "cov + I/2 is not positive definite");
    }
    const RMatrix l = llt.matrixL();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CVector> samples;
    samples.reserve(n);
    RVector g(2 * k);
    for (std::size_t s = 0; s < n; ++s) {
        for (int i = 0; i < 2 * k; ++i) {
            g(i) = normal(rng);
        }
        const RVector xi = out.mean() + l * g;
        CVector z(k);
        for (int j = 0; j < k; ++j) {
            z(j) = cplx(xi(2 * j), xi(2 * j + 1)) / std::sqrt(2.0);
        }
        samples.push_back(std::move(z));
    }
    return samples;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::size_t minimum_samples(int modes) {
    return static_cast<std::size_t>(50 * 4 * modes * modes);
}

ProbeRecord estimate_record(std::span<const CVector> samples, const CVector &probe,
                            std::optional<double> trace_hint) {
    const int k = static_cast<int>(probe.size());
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "probe must have at least one mode");
    }
    if (samples.size() < minimum_samples(k)) {
        throw Error(ErrorCode::TooFewSamples, std::to_string(samples.size()) + " samples, need " +
                                                  std::to_string(minimum_samples(k)));
    }
    if (trace_hint && !(*trace_hint > 0.0 && std::isfinite(*trace_hint))) {
        throw Error(ErrorCode::InvalidArgument, "trace hint must be positive");
    }
    const auto n = static_cast<double>(samples.size());
    RMatrix xi(2 * k, samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        if (samples[s].size() != k) {
            throw Error(ErrorCode::ModeMismatch, "sample length disagrees with the probe");
        }
        for (int j = 0; j < k; ++j) {
            xi(2 * j, s) = std::sqrt(2.0) * samples[s](j).real();
            xi(2 * j + 1, s) = std::sqrt(2.0) * samples[s](j).imag();
        }
    }
    const RVector mean = xi.rowwise().mean();
    const RMatrix centered = xi.colwise() - mean;
    const RMatrix sigma_q = centered * centered.transpose() / (n - 1.0);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(sigma_q, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff())) {
        throw Error(ErrorCode::DegenerateCovariance, "sample covariance is singular");
    }
    const double log_weight = trace_hint ? std::log(*trace_hint) : 0.0;
    const GaussianState est(mean, sigma_q - 0.5 * RMatrix::Identity(2 * k, 2 * k), log_weight);
    ProbeRecord r = extract_exact(est, probe);
    r.sample_count = static_cast<std::int64_t>(samples.size());
    return r;
}

RecordErrors record_standard_errors(std::span<const CVector> samples, const CVector &probe,
                                    int batches) {
    if (batches < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least two batches");
    }
    const int k = static_cast<int>(probe.size());
    const std::size_t per = samples.size() / static_cast<std::size_t>(batches);
    RMatrix re(k, batches), im(k, batches);
    for (int b = 0; b < batches; ++b) {
        const ProbeRecord r = estimate_record(samples.subspan(b * per, per), probe);
        re.col(b) = r.d.real();
        im.col(b) = r.d.imag();
    }
    auto stderr_of = [&](const RMatrix &v) {
        const RVector mean = v.rowwise().mean();
        const RVector var = (v.colwise() - mean).rowwise().squaredNorm() / (batches - 1.0);
        return RVector(var.cwiseSqrt() / std::sqrt(static_cast<double>(batches)));
    };
    return RecordErrors{stderr_of(re), stderr_of(im)};
}

}  // namespace gqpt
