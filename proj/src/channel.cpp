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

#include "gqpt/channel.hpp"

#include <cmath>
#include <string>

namespace gqpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_mode(int mode, int modes) {
    if (mode < 0 || mode >= modes) {
        throw Error(ErrorCode::InvalidArgument,
                    "element mode " + std::to_string(mode) + " outside [0, " +
                        std::to_string(modes) + ")");
    }
}

void check_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
    }
}

void validate(const PrimitiveElement &e, int modes) {
    std::visit(overloaded{
                   [&](const element::Displace &d) {
                       check_mode(d.mode, modes);
                       check_finite(d.beta.real(), "displacement");
                       check_finite(d.beta.imag(), "displacement");
                   },
                   [&](const element::Phase &p) {
                       check_mode(p.mode, modes);
                       check_finite(p.phi, "phase");
                   },
                   [&](const element::Squeeze &s) {
                       check_mode(s.mode, modes);
                       check_finite(s.r, "squeezing");
                       check_finite(s.phi, "squeezing phase");
                       if (s.r < 0.0) {
                           throw Error(ErrorCode::InvalidArgument, "squeezing r must be >= 0");
                       }
                   },
                   [&](const element::LossBS &l) {
                       check_mode(l.mode, modes);
                       check_finite(l.theta, "beam-splitter angle");
                   },
                   [&](const element::TwoModeBS &b) {
                       check_mode(b.mode_a, modes);
                       check_mode(b.mode_b, modes);
                       check_finite(b.theta, "beam-splitter angle");
                       if (b.mode_a == b.mode_b) {
                           throw Error(ErrorCode::InvalidArgument,
                                       "two-mode beam splitter needs distinct modes");
                       }
                   },
                   [&](const element::Amplify &a) {
                       check_mode(a.mode, modes);
                       check_finite(a.gain, "gain");
                       if (a.gain < 1.0) {
                           throw Error(ErrorCode::InvalidArgument, "amplifier gain must be >= 1");
                       }
                   },
                   [&](const element::ThermalNoise &t) {
                       check_mode(t.mode, modes);
                       check_finite(t.mean_photons, "noise photon number");
                       if (t.mean_photons < 0.0) {
                           throw Error(ErrorCode::InvalidArgument,
                                       "noise photon number must be >= 0");
                       }
                   },
                   [&](const element::TraceDecay &t) {
                       check_mode(t.mode, modes);
                       check_finite(t.kappa, "decay rate");
                       if (t.kappa < 0.0) {
                           throw Error(ErrorCode::InvalidArgument, "decay rate must be >= 0");
                       }
                   },
               },
               e);
}

// (mean, cov) -> (A mean + b, A cov A^T + N) with A, N acting on one mode.
GaussianState affine_single(const GaussianState &s, int mode, const Eigen::Matrix2d &a,
                            const Eigen::Vector2d &shift, const Eigen::Matrix2d &noise) {
    const int n = 2 * s.modes();
    RMatrix big_a = RMatrix::Identity(n, n);
    big_a.block<2, 2>(2 * mode, 2 * mode) = a;
    RVector mean = big_a * s.mean();
    mean.segment<2>(2 * mode) += shift;
    RMatrix cov = big_a * s.cov() * big_a.transpose();
    cov.block<2, 2>(2 * mode, 2 * mode) += noise;
    return GaussianState(std::move(mean), std::move(cov), s.log_weight());
}

GaussianState two_mode_mix(const GaussianState &s, const element::TwoModeBS &b) {
    const int n = 2 * s.modes();
    const double c = std::cos(b.theta), sn = std::sin(b.theta);
    RMatrix a = RMatrix::Identity(n, n);
    for (int q = 0; q < 2; ++q) {
        const int i = 2 * b.mode_a + q, j = 2 * b.mode_b + q;
        a(i, i) = c;
        a(i, j) = sn;
        a(j, i) = -sn;
        a(j, j) = c;
    }
    return GaussianState(a * s.mean(), a * s.cov() * a.transpose(), s.log_weight());
}

// Q_out(z) = exp(-(1 - e^{-2κ}) |z_j|²) Q_in(z with z_j scaled by e^{-κ}).
GaussianState decay(const GaussianState &s, const element::TraceDecay &t) {
    RealQuadratic q = to_real_quadratic(state_to_qform(s));
    const double shrink = std::exp(-t.kappa);
    RVector scale = RVector::Ones(q.v.size());
    scale.segment<2>(2 * t.mode).setConstant(shrink);
    q.m = scale.asDiagonal() * q.m * scale.asDiagonal();
    q.m.block<2, 2>(2 * t.mode, 2 * t.mode) -=
        (1.0 - shrink * shrink) * Eigen::Matrix2d::Identity();
    q.v = scale.asDiagonal() * q.v;
    return qform_to_state(from_real_quadratic(q)).state;
}

}  // namespace

ChannelSpec::ChannelSpec(int modes, std::vector<PrimitiveElement> elements)
    : modes_(modes), elements_(std::move(elements)) {
    if (modes_ < 1) {
        throw Error(ErrorCode::InvalidArgument, "channel needs at least one mode");
    }
    for (const auto &e : elements_) {
        validate(e, modes_);
    }
}

bool ChannelSpec::trace_preserving() const {
    for (const auto &e : elements_) {
        if (const auto *t = std::get_if<element::TraceDecay>(&e); t && t->kappa > 0.0) {
            return false;
        }
    }
    return true;
}

ChannelSpec ChannelSpec::then(const ChannelSpec &next) const {
    if (next.modes_ != modes_) {
        throw Error(ErrorCode::ModeMismatch, "cannot compose channels of different mode counts");
    }
    auto all = elements_;
    all.insert(all.end(), next.elements_.begin(), next.elements_.end());
    return ChannelSpec(modes_, std::move(all));
}

GaussianState apply_element(const PrimitiveElement &e, const GaussianState &s) {
    validate(e, s.modes());
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    const Eigen::Vector2d no_shift = Eigen::Vector2d::Zero();
    const Eigen::Matrix2d no_noise = Eigen::Matrix2d::Zero();
    return std::visit(
        overloaded{
            [&](const element::Displace &d) {
                const Eigen::Vector2d shift =
                    std::sqrt(2.0) * Eigen::Vector2d(d.beta.real(), d.beta.imag());
                return affine_single(s, d.mode, id, shift, no_noise);
            },
            [&](const element::Phase &p) {
                Eigen::Matrix2d a;
                a << std::cos(p.phi), -std::sin(p.phi), std::sin(p.phi), std::cos(p.phi);
                return affine_single(s, p.mode, a, no_shift, no_noise);
            },
            [&](const element::Squeeze &sq) {
                // <a> -> cosh(r) <a> - e^{i phi} sinh(r) <a>*
                Eigen::Matrix2d reflect;
                reflect << std::cos(sq.phi), std::sin(sq.phi), std::sin(sq.phi), -std::cos(sq.phi);
                const Eigen::Matrix2d a = std::cosh(sq.r) * id - std::sinh(sq.r) * reflect;
                return affine_single(s, sq.mode, a, no_shift, no_noise);
            },
            [&](const element::LossBS &l) {
                const double c = std::cos(l.theta), sn = std::sin(l.theta);
                return affine_single(s, l.mode, c * id, no_shift, 0.5 * sn * sn * id);
            },
            [&](const element::TwoModeBS &b) { return two_mode_mix(s, b); },
            [&](const element::Amplify &a) {
                return affine_single(s, a.mode, std::sqrt(a.gain) * id, no_shift,
                                     0.5 * (a.gain - 1.0) * id);
            },
            [&](const element::ThermalNoise &t) {
                return affine_single(s, t.mode, id, no_shift, t.mean_photons * id);
            },
            [&](const element::TraceDecay &t) { return decay(s, t); },
        },
        e);
}

GaussianState apply_channel(const ChannelSpec &spec, const GaussianState &s) {
    if (s.modes() != spec.modes()) {
        throw Error(ErrorCode::ModeMismatch, "state has " + std::to_string(s.modes()) +
                                                 " modes, channel has " +
                                                 std::to_string(spec.modes()));
    }
    GaussianState out = s;
    for (const auto &e : spec.elements()) {
        out = apply_element(e, out);
    }
    return out;
}

GaussianState probe_coherent(const ChannelSpec &spec, const CVector &alpha) {
    if (alpha.size() != spec.modes()) {
        throw Error(ErrorCode::ModeMismatch, "probe length disagrees with the channel modes");
    }
    return apply_channel(spec, GaussianState::coherent(alpha));
}

}  // namespace gqpt
