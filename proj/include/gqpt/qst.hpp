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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gqpt/gaussian_forms.hpp"

namespace gqpt {

/// What state tomography reports for the output of one coherent probe:
///
///     Q(Z*, Z) = exp(c + 2 Re(d . Z) + Re(Z^T x_bb Z) + Z^† y_bb Z).
struct ProbeRecord {
    CVector probe;
    double c = 0.0;
    CVector d;
    CMatrix x_bb;
    CMatrix y_bb;
    /// Number of heterodyne samples behind the estimate; empty for exact data.
    std::optional<std::int64_t> sample_count;
    std::optional<std::uint64_t> seed;

    int modes() const { return static_cast<int>(probe.size()); }
    bool exact() const { return !sample_count.has_value(); }
    QForm output_form() const { return QForm(c, d, x_bb, y_bb); }
    static ProbeRecord from_form(const CVector &probe, const QForm &f);
};

ProbeRecord extract_exact(const GaussianState &out, const CVector &probe);

/// Heterodyne outcomes: n draws from the density Q(Z*, Z)/π^k. Deterministic in
/// (state, n, seed). Throws UnnormalizedState when log_weight != 0.
std::vector<CVector> sample_heterodyne(const GaussianState &out, std::size_t n, std::uint64_t seed);

/// Seed for the `index`-th probe of a run seeded with `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Smallest sample count accepted by estimate_record: 50 (2k)².
std::size_t minimum_samples(int modes);

/// Method-of-moments record from heterodyne samples. Without a trace hint the
/// constant is fixed so that the form integrates to one.
ProbeRecord estimate_record(std::span<const CVector> samples, const CVector &probe,
                            std::optional<double> trace_hint = std::nullopt);

/// Standard errors of Re d and Im d per mode, from `batches` equal batches.
struct RecordErrors {
    RVector d_re;
    RVector d_im;
};
RecordErrors record_standard_errors(std::span<const CVector> samples, const CVector &probe,
                                    int batches = 20);

}  // namespace gqpt
