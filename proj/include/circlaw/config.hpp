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

#ifndef CIRCLAW_CONFIG_HPP
#define CIRCLAW_CONFIG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "circlaw/ensemble.hpp"
#include "circlaw/types.hpp"

namespace circlaw {

/// Finite grid of shift points z: lo + j*step for each axis, up to hi.
struct ZGrid {
  std::array<double, 2> re_range{-2.5, 2.5};
  std::array<double, 2> im_range{-2.5, 2.5};
  double step = 0.5;

  /// Real part outer, imaginary part inner. Throws Errc::validation on an
  /// empty or malformed grid.
  std::vector<Complex> points() const;
  /// A single-point grid at z.
  static ZGrid at(Complex z);

  friend bool operator==(const ZGrid&, const ZGrid&) = default;
};

struct ExperimentConfig {
  std::string name;
  std::vector<std::size_t> dims;
  EntryDistribution distribution;
  PerturbationSpec perturbation;
  ZGrid z_grid;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  double reference_exponent_b0 = 3.0;
  std::filesystem::path output_dir = ".";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Strict JSON parsing: unknown keys are rejected by name, and every
/// invariant violation is reported in a single Errc::validation error.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

/// Throws Errc::validation listing every broken invariant.
void validate_config(const ExperimentConfig& config);

}  // namespace circlaw

#endif  // CIRCLAW_CONFIG_HPP
