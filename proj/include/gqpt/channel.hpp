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

#include <variant>
#include <vector>

#include "gqpt/gaussian_forms.hpp"

namespace gqpt {

namespace element {

/// D(beta) = exp(beta a† - beta* a).
struct Displace {
    int mode = 0;
    cplx beta;
};

/// exp(i phi a†a), so a -> e^{i phi} a.
struct Phase {
    int mode = 0;
    double phi = 0.0;
};

/// S(r e^{i phi}) = exp[(r/2)(e^{-i phi} a² - e^{i phi} a†²)].
struct Squeeze {
    int mode = 0;
    double r = 0.0;
    double phi = 0.0;
};

/// Beam splitter of transmission amplitude cos(theta) against a fresh vacuum
/// mode, which is traced out afterwards.
struct LossBS {
    int mode = 0;
    double theta = 0.0;
};

/// Mixes two modes: (a, b) -> (a cos θ + b sin θ, -a sin θ + b cos θ).
struct TwoModeBS {
    int mode_a = 0;
    int mode_b = 1;
    double theta = 0.0;
};

/// Phase-insensitive amplifier of power gain G >= 1 (two-mode squeezing with
/// a vacuum idler that is traced out).
struct Amplify {
    int mode = 0;
    double gain = 1.0;
};

/// Additive Gaussian noise of mean_photons quanta: loss with transmissivity
/// 1/(1 + n) followed by amplification with gain 1 + n.
struct ThermalNoise {
    int mode = 0;
    double mean_photons = 0.0;
};

/// rho -> exp(-kappa n) rho exp(-kappa n); not trace preserving.
struct TraceDecay {
    int mode = 0;
    double kappa = 0.0;
};

}  // namespace element

using PrimitiveElement = std::variant<element::Displace, element::Phase, element::Squeeze,
                                      element::LossBS, element::TwoModeBS, element::Amplify,
                                      element::ThermalNoise, element::TraceDecay>;

class ChannelSpec {
  public:
    explicit ChannelSpec(int modes, std::vector<PrimitiveElement> elements = {});

    int modes() const { return modes_; }
    const std::vector<PrimitiveElement> &elements() const { return elements_; }
    bool trace_preserving() const;

    /// Elements of *this followed by those of `next`.
    ChannelSpec then(const ChannelSpec &next) const;

  private:
    int modes_;
    std::vector<PrimitiveElement> elements_;
};

GaussianState apply_element(const PrimitiveElement &e, const GaussianState &s);
GaussianState apply_channel(const ChannelSpec &spec, const GaussianState &s);
GaussianState probe_coherent(const ChannelSpec &spec, const CVector &alpha);

/// Truncated Fock-basis density matrix of the channel output for a
/// single-mode spec, computed by explicit operator arithmetic. Levels
/// 0..cutoff are kept.
CMatrix fock_reference(const ChannelSpec &spec, const GaussianState &input, int cutoff);

/// Fock-basis density matrix (levels 0..cutoff) of a single-mode Gaussian state.
CMatrix fock_density(const GaussianState &s, int cutoff);

/// <z|rho|z> for a truncated single-mode density matrix.
double fock_husimi(const CMatrix &rho, cplx z);

}  // namespace gqpt
