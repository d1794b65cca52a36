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

#ifndef CIRCLAW_ENSEMBLE_HPP
#define CIRCLAW_ENSEMBLE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circlaw/types.hpp"

namespace circlaw {

/// Law of a single matrix entry, standardized to E[X] = 0 and E|X|^2 = 1.
///
/// Complex laws split the unit variance evenly between real and imaginary
/// parts: complex-gaussian is (g1 + i g2)/sqrt(2) and complex-rademacher is
/// (xi1 + i xi2)/sqrt(2). centered-bernoulli(p) is (beta - p)/sqrt(p(1-p))
/// and centered-uniform is uniform on [-sqrt(3), sqrt(3)].
struct EntryDistribution {
  enum class Kind {
    complex_gaussian,
    real_gaussian,
    rademacher,
    complex_rademacher,
    centered_bernoulli,
    centered_uniform,
  };

  Kind kind = Kind::complex_gaussian;
  double p = 0.5;  // only read by centered_bernoulli

  /// Accepts the canonical names, plus "centered-bernoulli(p)" with p in (0,1).
  /// A bare "centered-bernoulli" means p = 0.5.
  static EntryDistribution parse(std::string_view name);
  std::string name() const;

  /// Draw for entry (row, col) of sample (seed, stream). Pure.
  Complex draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t row,
               std::uint64_t col) const;

  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;
};

/// Declarative description of the deterministic perturbation M_n.
struct PerturbationSpec {
  enum class Kind { zero, all_ones, low_rank, file };

  Kind kind = Kind::zero;
  double scale = 1.0;                       // all_ones: M = scale * ones
  std::vector<ComplexVector> left_factors;  // low_rank: M = sum_i u_i v_i^*
  std::vector<ComplexVector> right_factors;
  std::filesystem::path path;               // file: CSV rows "j,k,re,im"
  std::optional<std::size_t> rank_budget;
  std::optional<double> hs_budget_coefficient;  // ||M||^2 <= c n^2

  /// Explicit budget if set, otherwise the rank the kind implies
  /// (zero: 0, all-ones: 1, low-rank: k). Files have no implied budget.
  std::optional<std::size_t> effective_rank_budget() const;
  /// Explicit coefficient if set, otherwise scale^2 for all-ones.
  std::optional<double> effective_hs_coefficient() const;

  static Kind parse_kind(std::string_view name);
  static std::string_view kind_name(Kind kind);

  friend bool operator==(const PerturbationSpec& lhs, const PerturbationSpec& rhs);
};

struct MatrixSample {
  std::size_t dim = 0;
  ComplexMatrix entries;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  EntryDistribution distribution;
};

/// A = X/sqrt(n) and B = (X + M)/sqrt(n).
struct AssembledPair {
  ComplexMatrix a_matrix;
  ComplexMatrix b_matrix;
  std::size_t dim = 0;
  std::size_t perturbation_rank = 0;
};

MatrixSample sample_matrix(const EntryDistribution& dist, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix build_perturbation(const PerturbationSpec& spec, std::size_t n);

AssembledPair assemble(const MatrixSample& x, const ComplexMatrix& m);

/// Reads a sparse "j,k,re,im" CSV (1-indexed, optional header line) into a
/// dense n x n matrix; unlisted entries are zero.
ComplexMatrix read_matrix_csv(const std::filesystem::path& path, std::size_t n);
/// Writes every nonzero entry of m in the same format, with a header.
void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace circlaw

#endif  // CIRCLAW_ENSEMBLE_HPP
