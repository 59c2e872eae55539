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

// File formats. Every file is an envelope
//
//     {"format_version": "gqpt/1", "kind": <kind>, "payload": {...}}
//
// written canonically: sorted keys, two-space indentation, vectors and matrix
// rows on one line, doubles with 17 significant digits, complex numbers as
// [re, im], matrices as row-major arrays of rows. Parsing a canonical file and
// writing it again reproduces it byte for byte.

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gqpt/channel.hpp"
#include "gqpt/gaussian_forms.hpp"
#include "gqpt/predictor.hpp"
#include "gqpt/qst.hpp"
#include "gqpt/tomography.hpp"

namespace gqpt {

using Json = nlohmann::json;

inline constexpr const char *kFormatVersion = "gqpt/1";

/// Allowed symmetric / Hermitian defect of stored matrices.
inline constexpr double kStoredSymmetryTolerance = 1e-12;

namespace kind {
inline constexpr const char *kChannel = "channel";
inline constexpr const char *kProbes = "probes";
inline constexpr const char *kProbeData = "probe-data";
inline constexpr const char *kProcess = "process";
inline constexpr const char *kState = "state";
inline constexpr const char *kQForm = "qform";
inline constexpr const char *kReport = "report";
}  // namespace kind

bool is_known_kind(std::string_view k);

std::string canonical_json(const Json &j);

std::string write_envelope(std::string_view k, const Json &payload);

/// Parses an envelope and returns its payload. Throws Format on malformed
/// JSON, a different format_version, an unknown kind or a kind other than
/// `expected_kind`.
Json read_envelope(std::string_view text, std::string_view expected_kind);

/// Kind of an envelope, checked as in read_envelope.
std::string envelope_kind(std::string_view text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

// Primitive encodings.
Json encode(cplx z);
Json encode(const CVector &v);
Json encode(const CMatrix &m);
Json encode(const RVector &v);
Json encode(const RMatrix &m);
cplx decode_complex(const Json &j);
CVector decode_cvector(const Json &j);
CMatrix decode_cmatrix(const Json &j);
RVector decode_rvector(const Json &j);
RMatrix decode_rmatrix(const Json &j);

// Payloads.
Json encode_channel(const ChannelSpec &spec);
ChannelSpec decode_channel(const Json &payload);

Json encode_probes(const ProbeSet &p);
ProbeSet decode_probes(const Json &payload);

Json encode_probe_data(std::span<const ProbeRecord> records);
std::vector<ProbeRecord> decode_probe_data(const Json &payload);

Json encode_process(const ProcessState &p);
ProcessState decode_process(const Json &payload);

Json encode_qform(const QForm &f);
QForm decode_qform(const Json &payload);

/// Inputs accepted by "state" files: a coherent product state, a pure
/// single-mode-squeezed product state, or a general Gaussian state in
/// quadrature form.
using InputState = std::variant<CVector, PureGaussianInput, GaussianState>;
Json encode_state(const InputState &s);
InputState decode_state(const Json &payload);

}  // namespace gqpt
