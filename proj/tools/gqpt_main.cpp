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

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqpt/channel.hpp"
#include "gqpt/io.hpp"
#include "gqpt/predictor.hpp"
#include "gqpt/qst.hpp"
#include "gqpt/tomography.hpp"

namespace {

using namespace gqpt;

constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct GenProbesArgs {
    int modes = 1;
    bool trace_preserving = false;
    double scale = 1.0;
    std::string out;
};

int gen_probes(const GenProbesArgs &a) {
    const ProbeSet p = canonical_probes(a.modes, a.trace_preserving, a.scale);
    const Conditioning c = validate_probe_set(p);
    write_file(a.out, write_envelope(kind::kProbes, encode_probes(p)));
    std::cout << "probes: " << p.probes.size() << "\ncond(K): " << fmt(c.cond_k) << "\n";
    if (c.cond_j) {
        std::cout << "cond(J): " << fmt(*c.cond_j) << "\n";
    }
    return 0;
}

struct SimulateArgs {
    std::string channel, probes, out;
    std::optional<std::int64_t> samples;
    std::optional<std::uint64_t> seed;
};

int simulate(const SimulateArgs &a) {
    const ChannelSpec spec = decode_channel(read_envelope(read_file(a.channel), kind::kChannel));
    const ProbeSet probes = decode_probes(read_envelope(read_file(a.probes), kind::kProbes));
    if (spec.modes() != probes.modes) {
        throw Error(ErrorCode::ModeMismatch, "channel has " + std::to_string(spec.modes()) +
                                                 " modes, probes have " +
                                                 std::to_string(probes.modes));
    }
    if (a.samples && *a.samples < 1) {
        throw Error(ErrorCode::InvalidArgument, "--samples must be positive");
    }
    std::vector<ProbeRecord> records;
    for (std::size_t i = 0; i < probes.probes.size(); ++i) {
        const CVector &alpha = probes.probes[i];
        const GaussianState out = probe_coherent(spec, alpha);
        if (!a.samples) {
            records.push_back(extract_exact(out, alpha));
            continue;
        }
        const std::uint64_t seed = derive_seed(a.seed.value_or(0), i);
        const auto n = static_cast<std::size_t>(*a.samples);
        if (n < minimum_samples(spec.modes())) {
            throw Error(ErrorCode::TooFewSamples, std::to_string(n) + " samples per probe, need " +
                                                      std::to_string(minimum_samples(spec.modes())));
        }
        const auto samples = sample_heterodyne(out.normalized(), n, seed);
        ProbeRecord r = estimate_record(samples, alpha, std::exp(out.log_weight()));
        r.seed = seed;
        records.push_back(std::move(r));
    }
    write_file(a.out, write_envelope(kind::kProbeData, encode_probe_data(records)));
    std::cout << "records: " << records.size() << (a.samples ? " (sampled)" : " (exact)") << "\n";
    return 0;
}

struct ReconstructArgs {
    std::string probe_data, out, report;
    bool trace_preserving = false;
};

int reconstruct_cmd(const ReconstructArgs &a) {
    const auto records =
        decode_probe_data(read_envelope(read_file(a.probe_data), kind::kProbeData));
    const int k = records.front().modes();
    if (a.trace_preserving && records.size() > linear_unknowns(k)) {
        std::cerr << "warning: trace-preserving reconstruction uses the first "
                  << linear_unknowns(k) << " of " << records.size() << " records\n";
    }
    const Reconstruction r = reconstruct(records, a.trace_preserving);
    write_file(a.out, write_envelope(kind::kProcess, encode_process(r.process)));

    Json report = {{"command", "reconstruct"},
                   {"modes", k},
                   {"trace_preserving", a.trace_preserving},
                   {"records_available", records.size()},
                   {"records_used", r.records_used},
                   {"cond_k", r.cond_k},
                   {"residual", r.residual}};
    std::cout << "modes: " << k << "\nrecords used: " << r.records_used << " of "
              << records.size() << "\ncond(K): " << fmt(r.cond_k) << "\n";
    if (r.cond_j) {
        report["cond_j"] = *r.cond_j;
        std::cout << "cond(J): " << fmt(*r.cond_j) << "\n";
    }
    std::cout << "residual: " << fmt(r.residual) << "\n";
    if (!a.report.empty()) {
        write_file(a.report, write_envelope(kind::kReport, report));
    }
    return 0;
}

struct PredictArgs {
    std::string process, input, out;
};

int predict(const PredictArgs &a) {
    const ProcessState p = decode_process(read_envelope(read_file(a.process), kind::kProcess));
    const InputState in = decode_state(read_envelope(read_file(a.input), kind::kState));
    QForm f = QForm::vacuum(1);
    if (const auto *alpha = std::get_if<CVector>(&in)) {
        if (alpha->size() != p.modes) {
            throw Error(ErrorCode::ModeMismatch, "input and process differ in mode count");
        }
        f = predict_coherent(p, *alpha);
    } else if (const auto *g = std::get_if<PureGaussianInput>(&in)) {
        f = predict_gaussian(p, *g);
    } else {
        throw Error(ErrorCode::InvalidArgument,
                    "prediction supports coherent and pure_gaussian inputs only");
    }
    write_file(a.out, write_envelope(kind::kQForm, encode_qform(f)));
    std::cout << "log normalization: ";
    try {
        std::cout << fmt(qform_log_normalization(f)) << "\n";
    } catch (const Error &) {
        std::cout << "not normalizable\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string process, channel, test_probes, out;
    std::optional<double> tolerance;
};

int verify(const VerifyArgs &a) {
    const ProcessState p = decode_process(read_envelope(read_file(a.process), kind::kProcess));
    const ChannelSpec spec = decode_channel(read_envelope(read_file(a.channel), kind::kChannel));
    const ProbeSet probes =
        decode_probes(read_envelope(read_file(a.test_probes), kind::kProbes));
    if (p.modes != spec.modes() || p.modes != probes.modes) {
        throw Error(ErrorCode::ModeMismatch, "process, channel and probes differ in mode count");
    }
    double worst = 0.0;
    Json per_probe = Json::array();
    for (const auto &alpha : probes.probes) {
        const QForm oracle = state_to_qform(probe_coherent(spec, alpha));
        const double dev = max_parameter_deviation(predict_coherent(p, alpha), oracle);
        per_probe.push_back(dev);
        worst = std::max(worst, dev);
    }
    std::cout << "probes: " << probes.probes.size() << "\nmax deviation: " << fmt(worst) << "\n";
    if (!a.out.empty()) {
        const Json report = {{"command", "verify"},
                             {"modes", p.modes},
                             {"probes", probes.probes.size()},
                             {"deviation", per_probe},
                             {"max_deviation", worst}};
        write_file(a.out, write_envelope(kind::kReport, report));
    }
    if (a.tolerance && !(worst <= *a.tolerance)) {
        std::cerr << "error: max deviation " << fmt(worst) << " exceeds " << fmt(*a.tolerance)
                  << "\n";
        return kExitData;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gaussian quantum process tomography from coherent-state probes", "gqpt"};
    app.set_version_flag("--version", std::string(gqpt::kFormatVersion));
    app.require_subcommand(1);

    GenProbesArgs gp;
    auto *gen = app.add_subcommand("gen-probes", "Write a canonical probe set");
    gen->add_option("--modes", gp.modes, "Number of modes")->check(CLI::PositiveNumber);
    gen->add_flag("--trace-preserving", gp.trace_preserving, "Emit 2k+1 probes");
    gen->add_option("--scale", gp.scale, "Probe amplitude scale")->check(CLI::PositiveNumber);
    gen->add_option("--out", gp.out, "Output probes file")->required();

    SimulateArgs sa;
    auto *sim = app.add_subcommand("simulate", "Probe a channel and record output Q-forms");
    sim->add_option("--channel", sa.channel, "Channel file")->required();
    sim->add_option("--probes", sa.probes, "Probes file")->required();
    auto *samples = sim->add_option("--samples", sa.samples, "Heterodyne samples per probe");
    sim->add_option("--seed", sa.seed, "Base seed for sampling")->needs(samples);
    sim->add_option("--out", sa.out, "Output probe-data file")->required();

    ReconstructArgs ra;
    auto *rec = app.add_subcommand("reconstruct", "Reconstruct the process state");
    rec->add_option("--probe-data", ra.probe_data, "Probe-data file")->required();
    rec->add_flag("--trace-preserving", ra.trace_preserving, "Use the 2k+1 probe path");
    rec->add_option("--out", ra.out, "Output process file")->required();
    rec->add_option("--report", ra.report, "Output report file");

    PredictArgs pa;
    auto *pred = app.add_subcommand("predict", "Predict the output Q-form for an input state");
    pred->add_option("--process", pa.process, "Process file")->required();
    pred->add_option("--input", pa.input, "Input state file")->required();
    pred->add_option("--out", pa.out, "Output qform file")->required();

    VerifyArgs va;
    auto *ver = app.add_subcommand("verify", "Compare predictions against a channel");
    ver->add_option("--process", va.process, "Process file")->required();
    ver->add_option("--channel", va.channel, "Channel file")->required();
    ver->add_option("--test-probes", va.test_probes, "Probes file")->required();
    ver->add_option("--out", va.out, "Output report file");
    ver->add_option("--tolerance", va.tolerance, "Fail when the deviation exceeds this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitData;
    }

    try {
        if (*gen) {
            return gen_probes(gp);
        }
        if (*sim) {
            return simulate(sa);
        }
        if (*rec) {
            return reconstruct_cmd(ra);
        }
        if (*pred) {
            return predict(pa);
        }
        return verify(va);
    } catch (const gqpt::Error &e) {
        std::cerr << "error: " << gqpt::error_code_name(e.code()) << ": " << e.what() << "\n";
        return gqpt::is_numerical_failure(e.code()) ? kExitNumerical : kExitData;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
