// Copyright 2026 The circlaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "circlaw/config.hpp"
#include "circlaw/diagnostics.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/error.hpp"
#include "circlaw/harness.hpp"
#include "circlaw/lemmas.hpp"
#include "circlaw/measures.hpp"
#include "circlaw/spectral.hpp"

namespace py = pybind11;
using namespace circlaw;

namespace {

EntryDistribution dist_of(const std::string& name) { return EntryDistribution::parse(name); }

PerturbationSpec perturbation_of(const std::string& kind, double scale,
                                 std::vector<ComplexVector> left, std::vector<ComplexVector> right,
                                 std::string path, std::optional<std::size_t> rank_budget,
                                 std::optional<double> hs_coefficient) {
  PerturbationSpec spec;
  spec.kind = PerturbationSpec::parse_kind(kind);
  spec.scale = scale;
  spec.left_factors = std::move(left);
  spec.right_factors = std::move(right);
  spec.path = std::move(path);
  spec.rank_budget = rank_budget;
  spec.hs_budget_coefficient = hs_coefficient;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_circlaw, m) {
  m.doc() = "Non-central random matrix ensembles and finite-n circular-law diagnostics.";

  // Raised for every library error; `code` carries the error kind.
  static PyObject* error_type = PyErr_NewException("circlaw.Error", PyExc_RuntimeError, nullptr);
  m.attr("Error") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::handle(error_type)(e.what());
      instance.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type, instance.ptr());
    }
  });

  // ensemble
  m.def("sample_matrix",
        [](const std::string& dist, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          return sample_matrix(dist_of(dist), n, seed, stream).entries;
        },
        py::arg("dist"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
        "Standardized i.i.d. n x n sample (unscaled).");

  py::class_<PerturbationSpec>(m, "PerturbationSpec")
      .def(py::init(&perturbation_of), py::arg("kind") = "zero", py::arg("scale") = 1.0,
           py::arg("left_factors") = std::vector<ComplexVector>{},
           py::arg("right_factors") = std::vector<ComplexVector>{}, py::arg("path") = "",
           py::arg("rank_budget") = std::nullopt, py::arg("hs_budget_coefficient") = std::nullopt)
      .def_property_readonly("kind", [](const PerturbationSpec& s) {
        return std::string(PerturbationSpec::kind_name(s.kind));
      })
      .def_readwrite("scale", &PerturbationSpec::scale)
      .def_readwrite("rank_budget", &PerturbationSpec::rank_budget)
      .def_readwrite("hs_budget_coefficient", &PerturbationSpec::hs_budget_coefficient);

  m.def("build_perturbation", &build_perturbation, py::arg("spec"), py::arg("n"));

  py::class_<AssembledPair>(m, "AssembledPair")
      .def_readonly("a_matrix", &AssembledPair::a_matrix)
      .def_readonly("b_matrix", &AssembledPair::b_matrix)
      .def_readonly("dim", &AssembledPair::dim)
      .def_readonly("perturbation_rank", &AssembledPair::perturbation_rank);

  m.def("assemble",
        [](const ComplexMatrix& x, const ComplexMatrix& mat) {
          MatrixSample s;
          s.dim = static_cast<std::size_t>(x.rows());
          s.entries = x;
          return assemble(s, mat);
        },
        py::arg("x"), py::arg("m"), "A = X/sqrt(n), B = (X + M)/sqrt(n).");

  // spectral
  m.def("eigenvalues", &eigenvalues, py::arg("a"));
  m.def("singular_values", &singular_values, py::arg("a"));
  m.def("log_abs_det_lu", &log_abs_det_lu, py::arg("a"));
  m.def("numerical_rank", py::overload_cast<const ComplexMatrix&>(&numerical_rank), py::arg("a"));
  m.def("max_dense_dim", &max_dense_dim);

  py::class_<SpectralSummary>(m, "SpectralSummary")
      .def_readonly("eigenvalues", &SpectralSummary::eigenvalues)
      .def_readonly("singular_values", &SpectralSummary::singular_values)
      .def_readonly("log_abs_det", &SpectralSummary::log_abs_det)
      .def_readonly("log_abs_det_lu", &SpectralSummary::log_abs_det_lu)
      .def_readonly("singular", &SpectralSummary::singular)
      .def_readonly("spectral_radius", &SpectralSummary::spectral_radius)
      .def_readonly("operator_norm", &SpectralSummary::operator_norm)
      .def_readonly("hs_norm_sq", &SpectralSummary::hs_norm_sq);
  m.def("summarize", &summarize, py::arg("a"));

  // measures
  m.def("kolmogorov_distance",
        [](std::vector<double> a, std::vector<double> b) {
          return kolmogorov_distance(EmpiricalMeasure1D(std::move(a)), EmpiricalMeasure1D(std::move(b)));
        },
        py::arg("mu"), py::arg("nu"));
  m.def("log_integral_diff",
        [](std::vector<double> a, std::vector<double> b) {
          return log_integral_diff(EmpiricalMeasure1D(std::move(a)), EmpiricalMeasure1D(std::move(b)));
        },
        py::arg("mu"), py::arg("nu"));
  m.def("ibp_difference",
        [](const std::function<double(double)>& f, const std::function<double(double)>& fp,
           std::vector<double> a, std::vector<double> b, double alpha, double beta) {
          const auto r = ibp_difference(f, fp, EmpiricalMeasure1D(std::move(a)),
                                        EmpiricalMeasure1D(std::move(b)), alpha, beta);
          return py::make_tuple(r.lhs, r.rhs, r.bound);
        },
        py::arg("f"), py::arg("f_prime"), py::arg("mu"), py::arg("nu"), py::arg("alpha"),
        py::arg("beta"), "Returns (lhs, rhs, bound).");
  m.def("radial_disk_distance",
        [](std::vector<Complex> z) { return radial_disk_distance(EmpiricalMeasure2D(std::move(z))); },
        py::arg("atoms"));
  m.def("angular_disk_distance",
        [](std::vector<Complex> z) { return angular_disk_distance(EmpiricalMeasure2D(std::move(z))); },
        py::arg("atoms"));

  // diagnostics
  py::class_<ZGrid>(m, "ZGrid")
      .def(py::init([](std::array<double, 2> re, std::array<double, 2> im, double step) {
             ZGrid g;
             g.re_range = re;
             g.im_range = im;
             g.step = step;
             return g;
           }),
           py::arg("re_range") = std::array<double, 2>{-2.5, 2.5},
           py::arg("im_range") = std::array<double, 2>{-2.5, 2.5}, py::arg("step") = 0.5)
      .def_static("at", &ZGrid::at, py::arg("z"))
      .def("points", &ZGrid::points);

  py::class_<DeltaDiagnostics>(m, "DeltaDiagnostics")
      .def_readonly("z", &DeltaDiagnostics::z)
      .def_readonly("delta", &DeltaDiagnostics::delta)
      .def_readonly("delta_log_integral", &DeltaDiagnostics::delta_log_integral)
      .def_readonly("s_max_a", &DeltaDiagnostics::s_max_a)
      .def_readonly("s_min_a", &DeltaDiagnostics::s_min_a)
      .def_readonly("s_max_b", &DeltaDiagnostics::s_max_b)
      .def_readonly("s_min_b", &DeltaDiagnostics::s_min_b)
      .def_readonly("ks", &DeltaDiagnostics::ks)
      .def_readonly("rank_bound", &DeltaDiagnostics::rank_bound)
      .def_readonly("ibp_bound", &DeltaDiagnostics::ibp_bound)
      .def_readonly("singular_flag", &DeltaDiagnostics::singular_flag)
      .def("consistent", &DeltaDiagnostics::consistent);
  m.def("delta_at", &delta_at, py::arg("pair"), py::arg("z"));
  m.def("delta_scan", &delta_scan, py::arg("pair"), py::arg("grid"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<RankCheck>(m, "RankCheck")
      .def_readonly("ks", &RankCheck::ks)
      .def_readonly("bound", &RankCheck::bound)
      .def_readonly("rank", &RankCheck::rank)
      .def_readonly("holds", &RankCheck::holds);
  m.def("verify_rank_inequality", &verify_rank_inequality, py::arg("a"), py::arg("b"));

  py::class_<ConstantCase>(m, "ConstantCase")
      .def_readonly("lambda1", &ConstantCase::lambda1)
      .def_readonly("lambda2", &ConstantCase::lambda2)
      .def_readonly("s1_central", &ConstantCase::s1_central);
  m.def("constant_case",
        [](std::size_t n, const std::string& dist, std::uint64_t seed) {
          return constant_case(n, dist_of(dist), seed);
        },
        py::arg("n"), py::arg("dist") = "complex-gaussian", py::arg("seed") = 0);

  py::class_<TestFunction>(m, "TestFunction")
      .def_readonly("name", &TestFunction::name)
      .def_readonly("center", &TestFunction::center)
      .def_readonly("support_radius", &TestFunction::support_radius)
      .def("__call__", [](const TestFunction& f, Complex z) { return f.value(z); })
      .def("laplacian", [](const TestFunction& f, Complex z) { return f.laplacian(z); });
  m.def("radial_bump", &radial_bump, py::arg("center"), py::arg("radius"));
  m.def("polynomial_bump", &polynomial_bump, py::arg("center"), py::arg("radius"),
        py::arg("coefficients"));
  m.def("default_test_functions", &default_test_functions);
  m.def("replacement_check", &replacement_check, py::arg("pair"), py::arg("test_functions"));

  m.def("green_identity_residual",
        [](const std::vector<Complex>& roots, const TestFunction& f, double step,
           std::array<double, 4> box) {
          const auto r = green_identity_residual(roots, f, step, {box[0], box[1], box[2], box[3]});
          return py::make_tuple(r.lhs, r.rhs, r.residual);
        },
        py::arg("roots"), py::arg("f"), py::arg("grid_step"),
        py::arg("domain") = std::array<double, 4>{-1, 1, -1, 1},
        "domain is (re_lo, re_hi, im_lo, im_hi); returns (lhs, rhs, residual).");

  m.def("run_lemma_suite",
        [](std::size_t trials, std::uint64_t seed) {
          const auto r = run_lemma_suite(trials, seed);
          py::dict d;
          d["trials"] = r.trials;
          d["weyl_violations"] = r.weyl_violations;
          d["ibp_identity_violations"] = r.ibp_identity_violations;
          d["ibp_bound_violations"] = r.ibp_bound_violations;
          d["rank_violations"] = r.rank_violations;
          d["ks_oracle_mismatches"] = r.ks_oracle_mismatches;
          d["total_violations"] = r.total_violations();
          return d;
        },
        py::arg("trials") = 1000, py::arg("seed") = 0);

  // harness
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("name", &ExperimentConfig::name)
      .def_readwrite("dims", &ExperimentConfig::dims)
      .def_readwrite("replicates", &ExperimentConfig::replicates)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("reference_exponent_b0", &ExperimentConfig::reference_exponent_b0)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_readwrite("z_grid", &ExperimentConfig::z_grid)
      .def_readwrite("perturbation", &ExperimentConfig::perturbation)
      .def_property(
          "distribution", [](const ExperimentConfig& c) { return c.distribution.name(); },
          [](ExperimentConfig& c, const std::string& d) { c.distribution = dist_of(d); })
      .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; });
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));
  m.def("serialize_config", &serialize_config, py::arg("config"));

  py::class_<RunReport>(m, "RunReport")
      .def_property_readonly("delta_rows", [](const RunReport& r) { return r.delta_rows.size(); })
      .def("flagged_points", &RunReport::flagged_points)
      .def("inconsistent_points", &RunReport::inconsistent_points)
      .def("delta_csv", &delta_csv)
      .def("disk_csv", &disk_csv)
      .def("scaling_csv", &scaling_csv)
      .def("report_json", &report_json);
  m.def("run_experiment",
        [](const ExperimentConfig& c, unsigned workers, bool write_files) {
          return run_experiment(c, {.workers = workers, .write_files = write_files});
        },
        py::arg("config"), py::arg("workers") = 1, py::arg("write_files") = true,
        py::call_guard<py::gil_scoped_release>());
}
