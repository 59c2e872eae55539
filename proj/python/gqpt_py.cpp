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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gqpt/channel.hpp"
#include "gqpt/gaussian_forms.hpp"
#include "gqpt/io.hpp"
#include "gqpt/predictor.hpp"
#include "gqpt/qst.hpp"
#include "gqpt/tomography.hpp"

namespace py = pybind11;
using namespace gqpt;

namespace {

std::vector<ProbeRecord> simulate(const ChannelSpec &spec, const std::vector<CVector> &probes,
                                  std::optional<std::int64_t> samples, std::uint64_t seed) {
    std::vector<ProbeRecord> out;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const GaussianState state = probe_coherent(spec, probes[i]);
        if (!samples) {
            out.push_back(extract_exact(state, probes[i]));
            continue;
        }
        if (*samples < 1) {
            throw Error(ErrorCode::InvalidArgument, "samples must be positive");
        }
        const std::uint64_t s = derive_seed(seed, i);
        const auto draws = sample_heterodyne(state.normalized(), static_cast<std::size_t>(*samples), s);
        ProbeRecord r = estimate_record(draws, probes[i], std::exp(state.log_weight()));
        r.seed = s;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_gqpt, m) {
    m.doc() = "Gaussian quantum process tomography from coherent-state probes";
    m.attr("FORMAT_VERSION") = kFormatVersion;

    static py::exception<Error> error(m, "GqptError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::set_error(error, (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<QForm>(m, "QForm")
        .def(py::init<double, CVector, CMatrix, CMatrix>(), py::arg("c"), py::arg("gamma"), py::arg("x"),
             py::arg("y"))
        .def_static("vacuum", &QForm::vacuum, py::arg("modes"))
        .def_static("coherent", &QForm::coherent, py::arg("beta"))
        .def_property_readonly("modes", &QForm::modes)
        .def_property_readonly("c", &QForm::c)
        .def_property_readonly("gamma", &QForm::gamma)
        .def_property_readonly("x", &QForm::x)
        .def_property_readonly("y", &QForm::y)
        .def("__call__", [](const QForm &f, const CVector &z) { return qform_eval(f, z); }, py::arg("z"))
        .def("log_normalization", [](const QForm &f) { return qform_log_normalization(f); })
        .def("__repr__", [](const QForm &f) { return "QForm(modes=" + std::to_string(f.modes()) + ")"; });

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<RVector, RMatrix, double>(), py::arg("mean"), py::arg("cov"), py::arg("log_weight") = 0.0)
        .def_static("vacuum", &GaussianState::vacuum, py::arg("modes"))
        .def_static("coherent", &GaussianState::coherent, py::arg("alpha"))
        .def_property_readonly("modes", &GaussianState::modes)
        .def_property_readonly("mean", &GaussianState::mean)
        .def_property_readonly("cov", &GaussianState::cov)
        .def_property_readonly("log_weight", &GaussianState::log_weight)
        .def("amplitude", &GaussianState::amplitude)
        .def("physical", &GaussianState::physical, py::arg("tolerance") = kUncertaintyTolerance);

    m.def("state_to_qform", &state_to_qform, py::arg("state"));
    m.def("qform_to_state", [](const QForm &f) {
        const StateConversion s = qform_to_state(f);
        return py::make_tuple(s.state, s.non_physical);
    }, py::arg("qform"), "Returns (state, non_physical).");

    py::class_<ProcessState>(m, "ProcessState")
        .def_static("zeros", &ProcessState::zeros, py::arg("modes"))
        .def_readwrite("modes", &ProcessState::modes)
        .def_readwrite("c0", &ProcessState::c0)
        .def_readwrite("gamma_a", &ProcessState::gamma_a)
        .def_readwrite("gamma_b", &ProcessState::gamma_b)
        .def_readwrite("x_aa", &ProcessState::x_aa)
        .def_readwrite("x_ab", &ProcessState::x_ab)
        .def_readwrite("x_bb", &ProcessState::x_bb)
        .def_readwrite("y_aa", &ProcessState::y_aa)
        .def_readwrite("y_ab", &ProcessState::y_ab)
        .def_readwrite("y_bb", &ProcessState::y_bb)
        .def("to_qform", &ProcessState::to_qform)
        .def_static("from_qform", &ProcessState::from_qform, py::arg("qform"));

    m.def("beam_splitter_process", &beam_splitter_process, py::arg("theta"));
    m.def("max_parameter_deviation",
          py::overload_cast<const QForm &, const QForm &>(&max_parameter_deviation));
    m.def("max_parameter_deviation",
          py::overload_cast<const ProcessState &, const ProcessState &>(&max_parameter_deviation));

    py::class_<ChannelSpec>(m, "Channel")
        .def_static("from_json", [](const std::string &text) {
            return decode_channel(read_envelope(text, kind::kChannel));
        }, py::arg("text"), "Parses a channel envelope.")
        .def_static("load", [](const std::string &path) {
            return decode_channel(read_envelope(read_file(path), kind::kChannel));
        }, py::arg("path"))
        .def("to_json", [](const ChannelSpec &c) { return write_envelope(kind::kChannel, encode_channel(c)); })
        .def_property_readonly("modes", &ChannelSpec::modes)
        .def_property_readonly("trace_preserving", &ChannelSpec::trace_preserving)
        .def("apply", [](const ChannelSpec &c, const GaussianState &s) { return apply_channel(c, s); },
             py::arg("state"))
        .def("probe", [](const ChannelSpec &c, const CVector &a) { return probe_coherent(c, a); },
             py::arg("alpha"));

    py::class_<ProbeRecord>(m, "ProbeRecord")
        .def_readonly("probe", &ProbeRecord::probe)
        .def_readonly("c", &ProbeRecord::c)
        .def_readonly("d", &ProbeRecord::d)
        .def_readonly("x_bb", &ProbeRecord::x_bb)
        .def_readonly("y_bb", &ProbeRecord::y_bb)
        .def_readonly("sample_count", &ProbeRecord::sample_count)
        .def_readonly("seed", &ProbeRecord::seed)
        .def("output_form", &ProbeRecord::output_form);

    m.def("canonical_probes", [](int modes, bool trace_preserving, double scale) {
        return canonical_probes(modes, trace_preserving, scale).probes;
    }, py::arg("modes"), py::arg("trace_preserving") = false, py::arg("scale") = 1.0);
    m.def("validate_probes", [](const std::vector<CVector> &probes, bool trace_preserving) {
        if (probes.empty()) {
            throw Error(ErrorCode::InvalidArgument, "no probes");
        }
        const ProbeSet p{static_cast<int>(probes.front().size()), probes, trace_preserving};
        const Conditioning c = validate_probe_set(p);
        return py::make_tuple(c.cond_k, c.cond_j);
    }, py::arg("probes"), py::arg("trace_preserving") = false, "Returns (cond_k, cond_j).");

    m.def("simulate", &simulate, py::arg("channel"), py::arg("probes"), py::arg("samples") = py::none(),
          py::arg("seed") = 0, "Exact records, or heterodyne estimates when samples is given.");

    py::class_<Reconstruction>(m, "Reconstruction")
        .def_readonly("process", &Reconstruction::process)
        .def_readonly("cond_k", &Reconstruction::cond_k)
        .def_readonly("cond_j", &Reconstruction::cond_j)
        .def_readonly("residual", &Reconstruction::residual)
        .def_readonly("records_used", &Reconstruction::records_used);
    m.def("reconstruct", [](const std::vector<ProbeRecord> &records, bool trace_preserving) {
        return reconstruct(records, trace_preserving);
    }, py::arg("records"), py::arg("trace_preserving") = false);

    m.def("predict_coherent", &predict_coherent, py::arg("process"), py::arg("alpha"));
    m.def("predict_gaussian",
          [](const ProcessState &p, const RVector &r, const RVector &phi, const CVector &z) {
              return predict_gaussian(p, PureGaussianInput{r, phi, z});
          },
          py::arg("process"), py::arg("squeeze_r"), py::arg("squeeze_phase"), py::arg("displacement"));
    m.def("bs_squeezed_closed_form", &bs_squeezed_closed_form, py::arg("theta"), py::arg("r"), py::arg("z"));

    m.def("save_process", [](const std::string &path, const ProcessState &p) {
        write_file(path, write_envelope(kind::kProcess, encode_process(p)));
    }, py::arg("path"), py::arg("process"));
    m.def("load_process", [](const std::string &path) {
        return decode_process(read_envelope(read_file(path), kind::kProcess));
    }, py::arg("path"));
}
