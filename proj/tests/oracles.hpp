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

// Test-only oracles. These use Eigen's own decompositions, independent of
// the LAPACK routines behind the library.

#ifndef CIRCLAW_TESTS_ORACLES_HPP
#define CIRCLAW_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "circlaw/types.hpp"

namespace circlaw::oracle {

inline ComplexMatrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    for (Eigen::Index j = 0; j < rows; ++j) m(j, k) = Complex(g(rng), g(rng));
  }
  return m;
}

/// Haar-like unitary from the QR factorization of a Gaussian matrix.
inline ComplexMatrix unitary(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  const auto& w = solver.eigenvalues();
  return {w.data(), w.data() + w.size()};
}

inline double log_abs_det(const ComplexMatrix& a) {
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const ComplexMatrix& u = lu.matrixLU();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < u.rows(); ++k) sum += std::log(std::abs(u(k, k)));
  return sum;
}

/// Greedy multiset match: every element of `got` within tol of a distinct
/// element of `want`.
inline bool same_multiset(std::vector<Complex> got, std::vector<Complex> want, double tol) {
  if (got.size() != want.size()) return false;
  for (Complex g : got) {
    auto best = want.end();
    double best_dist = tol;
    for (auto it = want.begin(); it != want.end(); ++it) {
      const double d = std::abs(*it - g);
      if (d <= best_dist) {
        best_dist = d;
        best = it;
      }
    }
    if (best == want.end()) return false;
    want.erase(best);
  }
  return true;
}

}  // namespace circlaw::oracle

#endif  // CIRCLAW_TESTS_ORACLES_HPP
