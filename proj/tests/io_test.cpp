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

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace gqpt;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

std::string reserialize(const std::string &text) {
    const std::string k = envelope_kind(text);
    return write_envelope(k, read_envelope(text, k));
}

ChannelSpec every_element() {
    return ChannelSpec(2, {element::Displace{0, cplx(0.1, -0.2)}, element::Phase{1, 0.3},
                           element::Squeeze{0, 0.4, 0.5}, element::LossBS{1, 0.6},
                           element::TwoModeBS{0, 1, 0.7}, element::Amplify{0, 1.8},
                           element::ThermalNoise{1, 0.9}, element::TraceDecay{0, 0.25}});
}

}  // namespace

TEST(canonical_json, layout_and_numbers) {
    const Json j = {{"b", 0.1}, {"a", Json::array({1, 2})}, {"c", -0.0}, {"d", "x"}};
    EXPECT_EQ(canonical_json(j),
              "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": 0,\n  \"d\": \"x\"\n}");
    const Json m = {{"m", Json::array({Json::array({Json::array({1.5, 0}), Json::array({0, 1})}),
                                       Json::array({Json::array({0, 0}), Json::array({2, 0})})})}};
    EXPECT_EQ(canonical_json(m), "{\n  \"m\": [\n    [[1.5, 0], [0, 1]],\n    [[0, 0], [2, 0]]\n  ]\n}");
    EXPECT_THROW(canonical_json(Json(std::nan(""))), Error);
}

TEST(envelope, round_trips_every_kind_byte_for_byte) {
    std::mt19937_64 rng(1);
    std::vector<std::string> files;
    files.push_back(write_envelope(kind::kChannel, encode_channel(every_element())));
    files.push_back(write_envelope(kind::kProbes, encode_probes(ProbeSet{
                                                      1, {CVector::Zero(1), CVector::Ones(1)}, true})));
    ProbeRecord r = ProbeRecord::from_form(CVector::Ones(1) * cplx(0.3, 1.0 / 3.0),
                                           fixtures::random_normalizable_qform(rng, 1));
    r.sample_count = 1000;
    r.seed = 18446744073709551615ULL;
    files.push_back(write_envelope(kind::kProbeData, encode_probe_data(std::vector<ProbeRecord>{r})));
    files.push_back(write_envelope(
        kind::kProcess, encode_process(ProcessState::from_qform(fixtures::random_normalizable_qform(rng, 2)))));
    files.push_back(write_envelope(kind::kQForm, encode_qform(fixtures::random_normalizable_qform(rng, 2))));
    files.push_back(write_envelope(kind::kState, encode_state(CVector::Ones(2) * cplx(0.1, 0.7))));
    files.push_back(write_envelope(
        kind::kState, encode_state(PureGaussianInput{RVector::Constant(1, 0.5), RVector::Constant(1, M_PI),
                                                     CVector::Constant(1, cplx(1.0, 0.5))})));
    files.push_back(write_envelope(kind::kState, encode_state(fixtures::random_physical_state(rng, 2))));
    files.push_back(write_envelope(kind::kReport, Json{{"residual", 1e-17}, {"n", 3}}));
    for (const auto &f : files) {
        EXPECT_EQ(reserialize(f), f);
        EXPECT_EQ(reserialize(reserialize(f)), f);
    }
}

TEST(envelope, decoded_values_match) {
    std::mt19937_64 rng(2);
    const QForm f = fixtures::random_normalizable_qform(rng, 2);
    const QForm g = decode_qform(read_envelope(write_envelope(kind::kQForm, encode_qform(f)), kind::kQForm));
    EXPECT_EQ(max_parameter_deviation(f, g), 0.0);

    const ProcessState p = ProcessState::from_qform(fixtures::random_normalizable_qform(rng, 4));
    const ProcessState q =
        decode_process(read_envelope(write_envelope(kind::kProcess, encode_process(p)), kind::kProcess));
    EXPECT_EQ(max_parameter_deviation(p, q), 0.0);

    const ChannelSpec spec = every_element();
    const ChannelSpec back =
        decode_channel(read_envelope(write_envelope(kind::kChannel, encode_channel(spec)), kind::kChannel));
    const GaussianState in = fixtures::random_physical_state(rng, 2);
    const GaussianState a = apply_channel(spec, in), b = apply_channel(back, in);
    EXPECT_EQ(a.mean(), b.mean());
    EXPECT_EQ(a.cov(), b.cov());
    EXPECT_EQ(a.log_weight(), b.log_weight());

    const GaussianState s = fixtures::random_physical_state(rng, 1);
    const InputState t =
        decode_state(read_envelope(write_envelope(kind::kState, encode_state(s)), kind::kState));
    ASSERT_TRUE(std::holds_alternative<GaussianState>(t));
    EXPECT_EQ(std::get<GaussianState>(t).cov(), s.cov());
}

TEST(envelope, rejects_bad_files) {
    const std::string good = write_envelope(kind::kQForm, encode_qform(QForm::vacuum(1)));
    EXPECT_EQ(code_of([&] { read_envelope(good, kind::kProcess); }), ErrorCode::Format);
    EXPECT_EQ(code_of([&] { read_envelope("{", kind::kQForm); }), ErrorCode::Format);
    EXPECT_EQ(code_of([&] { read_envelope("[]", kind::kQForm); }), ErrorCode::Format);

    Json env = Json::parse(good);
    env["format_version"] = "gqpt/2";
    EXPECT_EQ(code_of([&] { read_envelope(env.dump(), kind::kQForm); }), ErrorCode::Format);
    env = Json::parse(good);
    env["kind"] = "matrix";
    EXPECT_EQ(code_of([&] { read_envelope(env.dump(), "matrix"); }), ErrorCode::Format);
    EXPECT_EQ(code_of([&] { write_envelope("matrix", Json::object()); }), ErrorCode::Format);
    env = Json::parse(good);
    env["extra"] = 1;
    EXPECT_EQ(code_of([&] { read_envelope(env.dump(), kind::kQForm); }), ErrorCode::Format);

    Json payload = encode_qform(QForm::vacuum(1));
    payload.erase("c");
    EXPECT_EQ(code_of([&] { decode_qform(payload); }), ErrorCode::Format);
    payload = encode_qform(QForm::vacuum(1));
    payload["gamma"] = "zero";
    EXPECT_EQ(code_of([&] { decode_qform(payload); }), ErrorCode::Format);
    payload = encode_qform(QForm::vacuum(1));
    payload["modes"] = 2;
    EXPECT_EQ(code_of([&] { decode_qform(payload); }), ErrorCode::Format);

    Json channel = encode_channel(ChannelSpec(1, {element::LossBS{0, 0.2}}));
    channel["elements"][0]["type"] = "kerr";
    EXPECT_EQ(code_of([&] { decode_channel(channel); }), ErrorCode::Format);
    channel = encode_channel(ChannelSpec(1, {element::LossBS{0, 0.2}}));
    channel["elements"][0]["gain"] = 2;
    EXPECT_EQ(code_of([&] { decode_channel(channel); }), ErrorCode::Format);
    channel = encode_channel(ChannelSpec(1, {element::Amplify{0, 2.0}}));
    channel["elements"][0]["gain"] = 0.5;
    EXPECT_EQ(code_of([&] { decode_channel(channel); }), ErrorCode::InvalidArgument);
}

TEST(envelope, symmetry_checked_at_read) {
    CMatrix y(2, 2);
    y << -1.0, cplx(0.2, 0.1), cplx(0.2, -0.1), -1.0;
    const QForm f(0.0, CVector::Zero(2), CMatrix::Zero(2, 2), y);
    Json payload = encode_qform(f);
    payload["y"][0][1][1] = 0.1 + 1e-13;
    EXPECT_NO_THROW(decode_qform(payload));
    payload["y"][0][1][1] = 0.1 + 1e-10;
    EXPECT_EQ(code_of([&] { decode_qform(payload); }), ErrorCode::Format);
    payload = encode_qform(f);
    payload["x"][0][1][0] = 0.5;
    EXPECT_EQ(code_of([&] { decode_qform(payload); }), ErrorCode::Format);
}

TEST(envelope, committed_examples_are_canonical) {
    const std::filesystem::path dir(GQPT_DOCS_EXAMPLES);
    std::set<std::string> kinds;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        const std::string text = read_file(entry.path().string());
        EXPECT_EQ(reserialize(text), text) << entry.path();
        kinds.insert(envelope_kind(text));
    }
    for (const char *k : {kind::kChannel, kind::kProbes, kind::kProbeData, kind::kProcess,
                          kind::kState, kind::kQForm, kind::kReport}) {
        EXPECT_TRUE(kinds.count(k)) << "no example of kind " << k;
    }
}
