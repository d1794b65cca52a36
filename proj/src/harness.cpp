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

#include "circlaw/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "circlaw/error.hpp"
#include "circlaw/random.hpp"
#include "circlaw/spectral.hpp"
#include "format.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace circlaw {
namespace {

using detail::shortest;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct CellResult {
  std::vector<DeltaDiagnostics> deltas;
  DiskRow disk;
  std::optional<ConstantCase> constant;
  double t_sample = 0.0, t_delta = 0.0, t_spectrum = 0.0;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

}  // namespace

std::size_t RunReport::flagged_points() const {
  std::size_t count = 0;
  for (const auto& row : delta_rows) count += row.diag.singular_flag ? 1 : 0;
  return count;
}

std::size_t RunReport::inconsistent_points() const {
  std::size_t count = 0;
  for (const auto& row : delta_rows) count += row.diag.consistent() ? 0 : 1;
  return count;
}

void ensure_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create output directory " + dir.string() + ": " + ec.message());
  const auto probe = dir / ".circlaw-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error(Errc::io, "output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  validate_config(config);
  if (options.write_files) ensure_writable_dir(config.output_dir);

  const auto total_start = Clock::now();
  RunReport report;
  report.config = config;

  // The perturbation depends only on n; build it once per dim.
  std::vector<ComplexMatrix> perturbations;
  const auto build_start = Clock::now();
  for (std::size_t n : config.dims) perturbations.push_back(build_perturbation(config.perturbation, n));
  const double t_build = seconds_since(build_start);

  const bool all_ones = config.perturbation.kind == PerturbationSpec::Kind::all_ones;
  const std::size_t per_dim = config.replicates;
  const std::size_t tasks = config.dims.size() * per_dim;
  std::vector<CellResult> cells(tasks);

  detail::parallel_for(tasks, options.workers, [&](std::size_t t) {
    const std::size_t d = t / per_dim;
    const std::size_t n = config.dims[d];
    const std::size_t r = t % per_dim;
    CellResult& cell = cells[t];

    auto start = Clock::now();
    const MatrixSample x =
        sample_matrix(config.distribution, n, derive_seed(config.master_seed, n, r));
    const AssembledPair pair = assemble(x, perturbations[d]);
    cell.t_sample = seconds_since(start);

    start = Clock::now();
    cell.deltas = delta_scan(pair, config.z_grid, 1);
    cell.t_delta = seconds_since(start);

    start = Clock::now();
    std::vector<Complex> lambda = eigenvalues(pair.b_matrix);
    if (all_ones && n >= 2) {
      ConstantCase cc;
      cc.lambda1 = lambda[0];
      cc.lambda2 = lambda[1];
      cc.s1_central = singular_values(pair.a_matrix).front();
      cell.constant = cc;
    }
    cell.disk.n = n;
    cell.disk.replicate = r;
    cell.disk.top_eigen_modulus = std::abs(lambda.front());
    if (pair.perturbation_rank >= 1 && lambda.size() > 1) {
      cell.disk.top_excluded = true;
      lambda.erase(lambda.begin());
    }
    const EmpiricalMeasure2D esd(std::move(lambda));
    cell.disk.radial_ks = radial_disk_distance(esd);
    cell.disk.angular_ks = angular_disk_distance(esd);
    cell.t_spectrum = seconds_since(start);
  });

  double t_sample = t_build, t_delta = 0.0, t_spectrum = 0.0;
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t n = config.dims[t / per_dim];
    const std::size_t r = t % per_dim;
    for (const auto& d : cells[t].deltas) report.delta_rows.push_back({n, r, d});
    report.disk_rows.push_back(cells[t].disk);
    if (cells[t].constant) report.constant_case_rows.push_back({n, r, *cells[t].constant});
    t_sample += cells[t].t_sample;
    t_delta += cells[t].t_delta;
    t_spectrum += cells[t].t_spectrum;
  }

  auto start = Clock::now();
  report.scaling =
      aggregate_scaling(config.dims, report.delta_rows, config.reference_exponent_b0, false);
  const double t_aggregate = seconds_since(start);

  start = Clock::now();
  if (options.write_files) write_report_files(report, config.output_dir);
  report.timings = {{"sample", t_sample},       {"delta_scan", t_delta},
                    {"spectrum", t_spectrum},   {"aggregate", t_aggregate},
                    {"write", seconds_since(start)}, {"total", seconds_since(total_start)}};
  return report;
}

std::string delta_csv(const RunReport& report) {
  std::ostringstream out;
  out << "n,replicate,z_re,z_im,delta,ks,rank_bound,ibp_bound,s_min_a,s_min_b,s_max_a,s_max_b,"
         "singular_flag\n";
  for (const auto& row : report.delta_rows) {
    const auto& d = row.diag;
    out << row.n << ',' << row.replicate << ',' << shortest(d.z.real()) << ','
        << shortest(d.z.imag()) << ',' << shortest(d.delta) << ',' << shortest(d.ks) << ','
        << shortest(d.rank_bound) << ',' << shortest(d.ibp_bound) << ',' << shortest(d.s_min_a)
        << ',' << shortest(d.s_min_b) << ',' << shortest(d.s_max_a) << ','
        << shortest(d.s_max_b) << ',' << (d.singular_flag ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string disk_csv(const RunReport& report) {
  std::ostringstream out;
  out << "n,replicate,radial_ks,angular_ks,top_eigen_modulus\n";
  for (const auto& row : report.disk_rows) {
    out << row.n << ',' << row.replicate << ',' << shortest(row.radial_ks) << ','
        << shortest(row.angular_ks) << ',' << shortest(row.top_eigen_modulus) << '\n';
  }
  return out.str();
}

std::string scaling_csv(const RunReport& report) {
  std::ostringstream out;
  out << "n,median_abs_delta,median_ks,min_smin,max_smax\n";
  for (const auto& st : report.scaling.per_dim) {
    out << st.n << ',' << shortest(st.median_abs_delta) << ',' << shortest(st.median_ks) << ','
        << shortest(st.min_smin) << ',' << shortest(st.max_smax) << '\n';
  }
  return out.str();
}

std::string report_json(const RunReport& report) {
  json doc;
  doc["config"] = json::parse(serialize_config(report.config));
  doc["counts"] = {{"delta_rows", report.delta_rows.size()},
                   {"disk_rows", report.disk_rows.size()},
                   {"flagged_points", report.flagged_points()},
                   {"inconsistent_points", report.inconsistent_points()}};

  json disk = json::array();
  for (const auto& row : report.disk_rows) {
    disk.push_back({{"n", row.n},
                    {"replicate", row.replicate},
                    {"radial_ks", number_or_null(row.radial_ks)},
                    {"angular_ks", number_or_null(row.angular_ks)},
                    {"top_eigen_modulus", number_or_null(row.top_eigen_modulus)},
                    {"top_excluded", row.top_excluded}});
  }
  doc["disk"] = disk;

  json constant = json::array();
  for (const auto& row : report.constant_case_rows) {
    const auto& c = row.record;
    constant.push_back({{"n", row.n},
                        {"replicate", row.replicate},
                        {"lambda1", {c.lambda1.real(), c.lambda1.imag()}},
                        {"lambda2", {c.lambda2.real(), c.lambda2.imag()}},
                        {"s1_central", c.s1_central}});
  }
  doc["constant_case"] = constant;

  const auto& s = report.scaling;
  json per_dim = json::array();
  for (const auto& st : s.per_dim) {
    per_dim.push_back({{"n", st.n},
                       {"replicates", st.replicates},
                       {"points", st.points},
                       {"flagged_points", st.flagged_points},
                       {"median_abs_delta", number_or_null(st.median_abs_delta)},
                       {"median_ks", number_or_null(st.median_ks)},
                       {"min_smin", number_or_null(st.min_smin)},
                       {"max_smax", number_or_null(st.max_smax)},
                       {"violating_replicates", st.violating_replicates},
                       {"violation_fraction", st.violation_fraction}});
  }
  doc["scaling"] = {{"per_dim", per_dim},
                    {"a_hat", number_or_null(s.a_hat)},
                    {"b_hat", number_or_null(s.b_hat)},
                    {"eps_hat", number_or_null(s.eps_hat)},
                    {"reference_exponent_b0", s.reference_exponent_b0},
                    {"violation_fraction", s.violation_fraction}};
  return doc.dump(2) + "\n";
}

void write_report_files(const RunReport& report, const std::filesystem::path& dir) {
  ensure_writable_dir(dir);
  write_text(dir / "report.json", report_json(report));
  write_text(dir / "delta.csv", delta_csv(report));
  write_text(dir / "disk.csv", disk_csv(report));
  write_text(dir / "scaling.csv", scaling_csv(report));
}

}  // namespace circlaw
