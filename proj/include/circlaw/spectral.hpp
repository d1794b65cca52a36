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

#ifndef CIRCLAW_SPECTRAL_HPP
#define CIRCLAW_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include "circlaw/types.hpp"

namespace circlaw {

/// Relative threshold below which a singular value counts as zero when
/// computing a numerical rank.
inline constexpr double kRankTolerance = 1e-10;

/// Largest dimension accepted by the dense solvers: CIRCLAW_MAX_N if set,
/// otherwise 2000.
std::size_t max_dense_dim();

/// All eigenvalues, with multiplicity, labeled |l_1| >= ... >= |l_n|.
/// Equal moduli are ordered by increasing principal argument in (-pi, pi].
std::vector<Complex> eigenvalues(const ComplexMatrix& a);

/// min(rows, cols) singular values, nonincreasing. Rectangular input allowed.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Number of singular values above kRankTolerance * s_1.
std::size_t numerical_rank(const ComplexMatrix& a);
std::size_t numerical_rank(const std::vector<double>& singular_values);

/// True when s_n is zero or within rounding of it (s_n <= max(n,m) eps s_1).
bool numerically_singular(const std::vector<double>& singular_values,
                          std::size_t rows, std::size_t cols);

/// log|det a| from a partially pivoted LU factorization. Returns -inf for an
/// exactly singular factor.
double log_abs_det_lu(const ComplexMatrix& a);

struct SpectralSummary {
  std::vector<Complex> eigenvalues;
  std::vector<double> singular_values;
  double log_abs_det = 0.0;     // sum of log s_k; meaningless when singular
  double log_abs_det_lu = 0.0;  // cross-check from the LU factorization
  bool singular = false;
  double spectral_radius = 0.0;
  double operator_norm = 0.0;
  double hs_norm_sq = 0.0;  // sum of |a_jk|^2
};

/// Full summary of a square matrix. Throws Errc::consistency if the two
/// log-determinant routes disagree beyond 1e-6 relative.
SpectralSummary summarize(const ComplexMatrix& a);

/// a - z I.
ComplexMatrix shifted(const ComplexMatrix& a, Complex z);

struct WeylCheck {
  double lhs = 0.0;  // sum |lambda_k|^2
  double rhs = 0.0;  // sum s_k^2
  bool holds = false;
};

WeylCheck check_weyl(const ComplexMatrix& a);

}  // namespace circlaw

#endif  // CIRCLAW_SPECTRAL_HPP
