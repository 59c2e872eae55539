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

#include "gqpt/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace gqpt {

namespace {

constexpr std::array<const char *, 7> kKinds = {kind::kChannel, kind::kProbes, kind::kProbeData,
                                                kind::kProcess,  kind::kState,  kind::kQForm,
                                                kind::kReport};

[[noreturn]] void format_error(const std::string &msg) { throw Error(ErrorCode::Format, msg); }

template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        format_error(std::string(what) + ": " + e.what());
    }
}

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        format_error("non-finite number cannot be written");
    }
    if (v == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int array_depth(const Json &j) {
    if (j.is_object()) {
        return 100;
    }
    if (!j.is_array()) {
        return 0;
    }
    int d = 0;
    for (const auto &e : j) {
        d = std::max(d, array_depth(e));
    }
    return d + 1;
}

void write_value(const Json &j, int indent, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    switch (j.type()) {
        case Json::value_t::null:
            out += "null";
            return;
        case Json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        case Json::value_t::string:
            out += j.dump();
            return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (array_depth(j) <= 2) {
                out += '[';
                bool first = true;
                for (const auto &e : j) {
                    out += first ? "" : ", ";
                    first = false;
                    write_value(e, indent, out);
                }
                out += ']';
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto &e : j) {
                out += first ? "" : ",\n";
                first = false;
                out += pad;
                write_value(e, indent + 2, out);
            }
            out += '\n' + std::string(static_cast<std::size_t>(indent), ' ') + ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                out += first ? "" : ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                write_value(value, indent + 2, out);
            }
            out += '\n' + std::string(static_cast<std::size_t>(indent), ' ') + '}';
            return;
        }
        default:
            format_error("unsupported JSON value");
    }
}

const Json &field(const Json &obj, const char *name) {
    if (!obj.is_object()) {
        format_error(std::string("expected an object holding '") + name + "'");
    }
    auto it = obj.find(name);
    if (it == obj.end()) {
        format_error(std::string("missing field '") + name + "'");
    }
    return *it;
}

void check_keys(const Json &obj, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        format_error("expected an object");
    }
    for (const auto &[key, value] : obj.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                    [&](const char *a) { return key == a; });
        if (!ok) {
            format_error("unexpected field '" + key + "'");
        }
    }
}

double number(const Json &j) {
    if (!j.is_number()) {
        format_error("expected a number");
    }
    return j.get<double>();
}

int integer(const Json &j) {
    if (!j.is_number_integer()) {
        format_error("expected an integer");
    }
    return j.get<int>();
}

void check_symmetric(const CMatrix &m, const char *name, bool hermitian) {
    if (m.rows() != m.cols()) {
        format_error(std::string(name) + " must be square");
    }
    const CMatrix other = hermitian ? CMatrix(m.adjoint()) : CMatrix(m.transpose());
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - other).cwiseAbs().maxCoeff() > kStoredSymmetryTolerance * scale) {
        format_error(std::string(name) + (hermitian ? " is not Hermitian" : " is not symmetric"));
    }
}

CMatrix symmetric_field(const Json &obj, const char *name, bool hermitian) {
    CMatrix m = decode_cmatrix(field(obj, name));
    check_symmetric(m, name, hermitian);
    return m;
}

void check_shape(const CMatrix &m, Eigen::Index rows, Eigen::Index cols, const char *name) {
    if (m.rows() != rows || m.cols() != cols) {
        format_error(std::string(name) + " has the wrong shape");
    }
}

void check_length(const CVector &v, Eigen::Index n, const char *name) {
    if (v.size() != n) {
        format_error(std::string(name) + " has the wrong length");
    }
}

Json element_json(const PrimitiveElement &e) {
    return std::visit(
        [](const auto &el) -> Json {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, element::Displace>) {
                return {{"type", "displace"}, {"mode", el.mode}, {"beta", encode(el.beta)}};
            } else if constexpr (std::is_same_v<T, element::Phase>) {
                return {{"type", "phase"}, {"mode", el.mode}, {"phi", el.phi}};
            } else if constexpr (std::is_same_v<T, element::Squeeze>) {
                return {{"type", "squeeze"}, {"mode", el.mode}, {"r", el.r}, {"phi", el.phi}};
            } else if constexpr (std::is_same_v<T, element::LossBS>) {
                return {{"type", "loss_bs"}, {"mode", el.mode}, {"theta", el.theta}};
            } else if constexpr (std::is_same_v<T, element::TwoModeBS>) {
                return {{"type", "two_mode_bs"},
                        {"mode_a", el.mode_a},
                        {"mode_b", el.mode_b},
                        {"theta", el.theta}};
            } else if constexpr (std::is_same_v<T, element::Amplify>) {
                return {{"type", "amplify"}, {"mode", el.mode}, {"gain", el.gain}};
            } else if constexpr (std::is_same_v<T, element::ThermalNoise>) {
                return {{"type", "thermal_noise"}, {"mode", el.mode}, {"mean_photons", el.mean_photons}};
            } else {
                return {{"type", "trace_decay"}, {"mode", el.mode}, {"kappa", el.kappa}};
            }
        },
        e);
}

PrimitiveElement element_from_json(const Json &j) {
    const Json &type = field(j, "type");
    if (!type.is_string()) {
        format_error("element type must be a string");
    }
    const std::string t = type.get<std::string>();
    if (t == "displace") {
        check_keys(j, {"type", "mode", "beta"});
        return element::Displace{integer(field(j, "mode")), decode_complex(field(j, "beta"))};
    }
    if (t == "phase") {
        check_keys(j, {"type", "mode", "phi"});
        return element::Phase{integer(field(j, "mode")), number(field(j, "phi"))};
    }
    if (t == "squeeze") {
        check_keys(j, {"type", "mode", "r", "phi"});
        return element::Squeeze{integer(field(j, "mode")), number(field(j, "r")),
                                number(field(j, "phi"))};
    }
    if (t == "loss_bs") {
        check_keys(j, {"type", "mode", "theta"});
        return element::LossBS{integer(field(j, "mode")), number(field(j, "theta"))};
    }
    if (t == "two_mode_bs") {
        check_keys(j, {"type", "mode_a", "mode_b", "theta"});
        return element::TwoModeBS{integer(field(j, "mode_a")), integer(field(j, "mode_b")),
                                  number(field(j, "theta"))};
    }
    if (t == "amplify") {
        check_keys(j, {"type", "mode", "gain"});
        return element::Amplify{integer(field(j, "mode")), number(field(j, "gain"))};
    }
    if (t == "thermal_noise") {
        check_keys(j, {"type", "mode", "mean_photons"});
        return element::ThermalNoise{integer(field(j, "mode")), number(field(j, "mean_photons"))};
    }
    if (t == "trace_decay") {
        check_keys(j, {"type", "mode", "kappa"});
        return element::TraceDecay{integer(field(j, "mode")), number(field(j, "kappa"))};
    }
    format_error("unknown channel element type '" + t + "'");
}

Json record_json(const ProbeRecord &r) {
    Json j = {{"probe", encode(r.probe)},
              {"c", r.c},
              {"d", encode(r.d)},
              {"x_bb", encode(r.x_bb)},
              {"y_bb", encode(r.y_bb)}};
    if (r.sample_count) {
        j["sample_count"] = *r.sample_count;
    }
    if (r.seed) {
        j["seed"] = *r.seed;
    }
    return j;
}

ProbeRecord record_from_json(const Json &j, int modes) {
    check_keys(j, {"probe", "c", "d", "x_bb", "y_bb", "sample_count", "seed"});
    ProbeRecord r;
    r.probe = decode_cvector(field(j, "probe"));
    r.c = number(field(j, "c"));
    r.d = decode_cvector(field(j, "d"));
    r.x_bb = symmetric_field(j, "x_bb", false);
    r.y_bb = symmetric_field(j, "y_bb", true);
    check_length(r.probe, modes, "probe");
    check_length(r.d, modes, "d");
    check_shape(r.x_bb, modes, modes, "x_bb");
    check_shape(r.y_bb, modes, modes, "y_bb");
    if (j.contains("sample_count")) {
        const Json &n = j["sample_count"];
        if (!n.is_number_integer() || n.get<std::int64_t>() < 1) {
            format_error("sample_count must be a positive integer");
        }
        r.sample_count = n.get<std::int64_t>();
    }
    if (j.contains("seed")) {
        const Json &s = j["seed"];
        if (!s.is_number_unsigned()) {
            format_error("seed must be a non-negative integer");
        }
        r.seed = s.get<std::uint64_t>();
    }
    return r;
}

int modes_field(const Json &payload) {
    const int k = integer(field(payload, "modes"));
    if (k < 1) {
        format_error("modes must be >= 1");
    }
    return k;
}

}  // namespace

bool is_known_kind(std::string_view k) {
    return std::any_of(kKinds.begin(), kKinds.end(), [&](const char *x) { return k == x; });
}

std::string canonical_json(const Json &j) {
    std::string out;
    write_value(j, 0, out);
    return out;
}

std::string write_envelope(std::string_view k, const Json &payload) {
    if (!is_known_kind(k)) {
        format_error("unknown kind '" + std::string(k) + "'");
    }
    const Json env = {{"format_version", kFormatVersion}, {"kind", std::string(k)}, {"payload", payload}};
    return canonical_json(env) + "\n";
}

namespace {

Json parse_envelope(std::string_view text) {
    Json env;
    try {
        env = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        format_error(std::string("malformed JSON: ") + e.what());
    }
    if (!env.is_object()) {
        format_error("envelope must be a JSON object");
    }
    check_keys(env, {"format_version", "kind", "payload"});
    const Json &version = field(env, "format_version");
    if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
        format_error("unsupported format_version (expected " + std::string(kFormatVersion) + ")");
    }
    const Json &k = field(env, "kind");
    if (!k.is_string() || !is_known_kind(k.get<std::string>())) {
        format_error("unknown kind");
    }
    field(env, "payload");
    return env;
}

}  // namespace

Json read_envelope(std::string_view text, std::string_view expected_kind) {
    Json env = parse_envelope(text);
    if (env["kind"].get<std::string>() != expected_kind) {
        format_error("expected a '" + std::string(expected_kind) + "' file, got '" +
                     env["kind"].get<std::string>() + "'");
    }
    return env["payload"];
}

std::string envelope_kind(std::string_view text) {
    return parse_envelope(text)["kind"].get<std::string>();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
    }
}

Json encode(cplx z) { return Json::array({z.real(), z.imag()}); }

Json encode(const CVector &v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        j.push_back(encode(v(i)));
    }
    return j;
}

Json encode(const CMatrix &m) {
    Json j = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        j.push_back(encode(CVector(m.row(r).transpose())));
    }
    return j;
}

Json encode(const RVector &v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        j.push_back(v(i));
    }
    return j;
}

Json encode(const RMatrix &m) {
    Json j = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        j.push_back(encode(RVector(m.row(r).transpose())));
    }
    return j;
}

cplx decode_complex(const Json &j) {
    if (!j.is_array() || j.size() != 2) {
        format_error("complex numbers are [re, im] pairs");
    }
    return {number(j[0]), number(j[1])};
}

CVector decode_cvector(const Json &j) {
    if (!j.is_array()) {
        format_error("expected an array of [re, im] pairs");
    }
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = decode_complex(j[i]);
    }
    return v;
}

CMatrix decode_cmatrix(const Json &j) {
    if (!j.is_array()) {
        format_error("expected a matrix as an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const CVector row = decode_cvector(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols) {
            format_error("ragged matrix");
        }
        m.row(r) = row.transpose();
    }
    return m;
}

RVector decode_rvector(const Json &j) {
    if (!j.is_array()) {
        format_error("expected an array of numbers");
    }
    RVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = number(j[i]);
    }
    return v;
}

RMatrix decode_rmatrix(const Json &j) {
    if (!j.is_array()) {
        format_error("expected a matrix as an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    RMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const RVector row = decode_rvector(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols) {
            format_error("ragged matrix");
        }
        m.row(r) = row.transpose();
    }
    return m;
}

Json encode_channel(const ChannelSpec &spec) {
    Json elements = Json::array();
    for (const auto &e : spec.elements()) {
        elements.push_back(element_json(e));
    }
    return {{"modes", spec.modes()}, {"elements", elements}};
}

ChannelSpec decode_channel(const Json &payload) {
    return guarded("channel", [&] {
        check_keys(payload, {"modes", "elements"});
        const int k = modes_field(payload);
        const Json &list = field(payload, "elements");
        if (!list.is_array()) {
            format_error("elements must be an array");
        }
        std::vector<PrimitiveElement> elements;
        for (const auto &e : list) {
            elements.push_back(element_from_json(e));
        }
        return ChannelSpec(k, std::move(elements));
    });
}

Json encode_probes(const ProbeSet &p) {
    Json probes = Json::array();
    for (const auto &a : p.probes) {
        probes.push_back(encode(a));
    }
    return {{"modes", p.modes}, {"trace_preserving", p.trace_preserving}, {"probes", probes}};
}

ProbeSet decode_probes(const Json &payload) {
    return guarded("probes", [&] {
        check_keys(payload, {"modes", "trace_preserving", "probes"});
        ProbeSet p;
        p.modes = modes_field(payload);
        const Json &tp = field(payload, "trace_preserving");
        if (!tp.is_boolean()) {
            format_error("trace_preserving must be a boolean");
        }
        p.trace_preserving = tp.get<bool>();
        const Json &list = field(payload, "probes");
        if (!list.is_array()) {
            format_error("probes must be an array");
        }
        for (const auto &a : list) {
            p.probes.push_back(decode_cvector(a));
            check_length(p.probes.back(), p.modes, "probe");
        }
        return p;
    });
}

Json encode_probe_data(std::span<const ProbeRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no records to write");
    }
    Json list = Json::array();
    for (const auto &r : records) {
        list.push_back(record_json(r));
    }
    return {{"modes", records.front().modes()}, {"records", list}};
}

std::vector<ProbeRecord> decode_probe_data(const Json &payload) {
    return guarded("probe-data", [&] {
        check_keys(payload, {"modes", "records"});
        const int k = modes_field(payload);
        const Json &list = field(payload, "records");
        if (!list.is_array() || list.empty()) {
            format_error("records must be a non-empty array");
        }
        std::vector<ProbeRecord> records;
        for (const auto &r : list) {
            records.push_back(record_from_json(r, k));
        }
        return records;
    });
}

Json encode_process(const ProcessState &p) {
    return {{"modes", p.modes},         {"c0", p.c0},
            {"gamma_a", encode(p.gamma_a)}, {"gamma_b", encode(p.gamma_b)},
            {"x_aa", encode(p.x_aa)},       {"x_ab", encode(p.x_ab)},
            {"x_bb", encode(p.x_bb)},       {"y_aa", encode(p.y_aa)},
            {"y_ab", encode(p.y_ab)},       {"y_bb", encode(p.y_bb)}};
}

ProcessState decode_process(const Json &payload) {
    return guarded("process", [&] {
        check_keys(payload, {"modes", "c0", "gamma_a", "gamma_b", "x_aa", "x_ab", "x_bb", "y_aa",
                             "y_ab", "y_bb"});
        ProcessState p;
        p.modes = modes_field(payload);
        const int k = p.modes;
        p.c0 = number(field(payload, "c0"));
        p.gamma_a = decode_cvector(field(payload, "gamma_a"));
        p.gamma_b = decode_cvector(field(payload, "gamma_b"));
        p.x_aa = symmetric_field(payload, "x_aa", false);
        p.x_ab = decode_cmatrix(field(payload, "x_ab"));
        p.x_bb = symmetric_field(payload, "x_bb", false);
        p.y_aa = symmetric_field(payload, "y_aa", true);
        p.y_ab = decode_cmatrix(field(payload, "y_ab"));
        p.y_bb = symmetric_field(payload, "y_bb", true);
        check_length(p.gamma_a, k, "gamma_a");
        check_length(p.gamma_b, k, "gamma_b");
        check_shape(p.x_aa, k, k, "x_aa");
        check_shape(p.x_ab, k, k, "x_ab");
        check_shape(p.x_bb, k, k, "x_bb");
        check_shape(p.y_aa, k, k, "y_aa");
        check_shape(p.y_ab, k, k, "y_ab");
        check_shape(p.y_bb, k, k, "y_bb");
        return p;
    });
}

Json encode_qform(const QForm &f) {
    return {{"modes", f.modes()},
            {"c", f.c()},
            {"gamma", encode(f.gamma())},
            {"x", encode(f.x())},
            {"y", encode(f.y())}};
}

QForm decode_qform(const Json &payload) {
    return guarded("qform", [&] {
        check_keys(payload, {"modes", "c", "gamma", "x", "y"});
        const int k = modes_field(payload);
        const CVector gamma = decode_cvector(field(payload, "gamma"));
        const CMatrix x = symmetric_field(payload, "x", false);
        const CMatrix y = symmetric_field(payload, "y", true);
        check_length(gamma, k, "gamma");
        check_shape(x, k, k, "x");
        check_shape(y, k, k, "y");
        return QForm(number(field(payload, "c")), gamma, x, y);
    });
}

Json encode_state(const InputState &s) {
    return std::visit(
        [](const auto &st) -> Json {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, CVector>) {
                return {{"type", "coherent"}, {"alpha", encode(st)}};
            } else if constexpr (std::is_same_v<T, PureGaussianInput>) {
                return {{"type", "pure_gaussian"},
                        {"squeeze_r", encode(st.squeeze_r)},
                        {"squeeze_phase", encode(st.squeeze_phase)},
                        {"displacement", encode(st.displacement)}};
            } else {
                return {{"type", "gaussian"},
                        {"mean", encode(st.mean())},
                        {"cov", encode(st.cov())},
                        {"log_weight", st.log_weight()}};
            }
        },
        s);
}

InputState decode_state(const Json &payload) {
    return guarded("state", [&]() -> InputState {
        const Json &type = field(payload, "type");
        if (!type.is_string()) {
            format_error("state type must be a string");
        }
        const std::string t = type.get<std::string>();
        if (t == "coherent") {
            check_keys(payload, {"type", "alpha"});
            CVector alpha = decode_cvector(field(payload, "alpha"));
            if (alpha.size() < 1) {
                format_error("alpha must be non-empty");
            }
            return alpha;
        }
        if (t == "pure_gaussian") {
            check_keys(payload, {"type", "squeeze_r", "squeeze_phase", "displacement"});
            PureGaussianInput in{decode_rvector(field(payload, "squeeze_r")),
                                 decode_rvector(field(payload, "squeeze_phase")),
                                 decode_cvector(field(payload, "displacement"))};
            in.check();
            return in;
        }
        if (t == "gaussian") {
            check_keys(payload, {"type", "mean", "cov", "log_weight"});
            const RMatrix cov = decode_rmatrix(field(payload, "cov"));
            if (cov.rows() != cov.cols() ||
                (cov - cov.transpose()).cwiseAbs().maxCoeff() >
                    kStoredSymmetryTolerance * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
                format_error("cov is not symmetric");
            }
            return GaussianState(decode_rvector(field(payload, "mean")), cov,
                                 number(field(payload, "log_weight")));
        }
        format_error("unknown state type '" + t + "'");
    });
}

}  // namespace gqpt
