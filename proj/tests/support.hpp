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

#include <cmath>
#include <random>
#include <vector>

#include "gqpt/channel.hpp"
#include "gqpt/gaussian_forms.hpp"

namespace gqpt::fixtures {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline cplx random_complex(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

inline CVector random_amplitudes(std::mt19937_64 &rng, int k, double scale) {
    CVector a(k);
    for (int j = 0; j < k; ++j) {
        a(j) = random_complex(rng, scale);
    }
    return a;
}

/// Exponent u^T m u + v^T u + c with -m >= floor.
inline QForm random_normalizable_qform(std::mt19937_64 &rng, int k, double floor = 0.3) {
    std::normal_distribution<double> n(0.0, 0.5);
    const int d = 2 * k;
    RMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = n(rng);
        }
    }
    RealQuadratic q;
    q.m = -(a * a.transpose() + floor * RMatrix::Identity(d, d));
    q.v = RVector(d);
    for (int i = 0; i < d; ++i) {
        q.v(i) = n(rng);
    }
    q.c = n(rng);
    return from_real_quadratic(q);
}

/// A physical k-mode state: a random channel applied to a random coherent state.
GaussianState random_physical_state(std::mt19937_64 &rng, int k);

inline PrimitiveElement random_element(std::mt19937_64 &rng, int k, bool allow_decay) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> mode(0, k - 1);
    const double pi = 3.14159265358979323846;
    const int kinds = allow_decay ? 8 : 7;
    int pick = std::uniform_int_distribution<int>(0, kinds - 1)(rng);
    if (pick == 4 && k == 1) {
        pick = 1;
    }
    const int m = mode(rng);
    switch (pick) {
        case 0: {
            const double mag = u(rng), arg = 2 * pi * u(rng);
            return element::Displace{m, std::polar(mag, arg)};
        }
        case 1:
            return element::Phase{m, 2 * pi * u(rng)};
        case 2:
            return element::Squeeze{m, 0.8 * u(rng), 2 * pi * u(rng)};
        case 3:
            return element::LossBS{m, 0.5 * pi * u(rng)};
        case 4: {
            int b = mode(rng);
            while (b == m) {
                b = mode(rng);
            }
            return element::TwoModeBS{m, b, 2 * pi * u(rng)};
        }
        case 5:
            return element::Amplify{m, 1.0 + u(rng)};
        case 6:
            return element::ThermalNoise{m, 0.5 * u(rng)};
        default:
            return element::TraceDecay{m, 0.5 * u(rng)};
    }
}

/// 1..max_elements primitives with |beta| <= 1, r <= 0.8, kappa <= 0.5.
inline ChannelSpec random_channel(std::mt19937_64 &rng, int k, bool allow_decay,
                                  int max_elements = 5) {
    const int n = std::uniform_int_distribution<int>(1, max_elements)(rng);
    std::vector<PrimitiveElement> elements;
    for (int i = 0; i < n; ++i) {
        elements.push_back(random_element(rng, k, allow_decay));
    }
    return ChannelSpec(k, std::move(elements));
}

inline GaussianState random_physical_state(std::mt19937_64 &rng, int k) {
    const ChannelSpec spec = random_channel(rng, k, false);
    return apply_channel(spec, GaussianState::coherent(random_amplitudes(rng, k, 1.0)));
}

}  // namespace gqpt::fixtures
