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

#ifndef CIRCLAW_HARNESS_HPP
#define CIRCLAW_HARNESS_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "circlaw/config.hpp"
#include "circlaw/diagnostics.hpp"

namespace circlaw {

struct DiskRow {
  std::size_t n = 0;
  std::size_t replicate = 0;
  double radial_ks = 0.0;
  double angular_ks = 0.0;
  double top_eigen_modulus = 0.0;  // |lambda_1(B)|; excluded from the KS values when rank(M) >= 1
  bool top_excluded = false;
};

struct ConstantCaseRow {
  std::size_t n = 0;
  std::size_t replicate = 0;
  ConstantCase record;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;  // summed over tasks
};

struct RunReport {
  ExperimentConfig config;
  std::vector<DeltaRow> delta_rows;           // (dim, replicate, grid point) order
  std::vector<DiskRow> disk_rows;             // (dim, replicate) order
  std::vector<ConstantCaseRow> constant_case_rows;  // all-ones perturbations only
  ScalingReport scaling;                      // exponents NaN with fewer than 2 dims
  std::vector<StageTiming> timings;           // never written to the report files

  std::size_t flagged_points() const;
  std::size_t inconsistent_points() const;
};

struct RunOptions {
  unsigned workers = 1;
  bool write_files = true;
};

/// Runs every (dim, replicate) cell of the config and, unless disabled,
/// writes report.json, delta.csv, disk.csv and scaling.csv to
/// config.output_dir. The files are a deterministic function of the config:
/// the worker count does not change a byte.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::string delta_csv(const RunReport& report);
std::string disk_csv(const RunReport& report);
std::string scaling_csv(const RunReport& report);
std::string report_json(const RunReport& report);

void write_report_files(const RunReport& report, const std::filesystem::path& dir);

/// Creates dir if needed and proves it is writable; throws Errc::io otherwise.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace circlaw

#endif  // CIRCLAW_HARNESS_HPP
