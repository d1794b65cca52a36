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

#ifndef CIRCLAW_MEASURES_HPP
#define CIRCLAW_MEASURES_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "circlaw/types.hpp"

namespace circlaw {

/// Uniform-weight atomic measure on the real line. Atoms are kept sorted;
/// each carries mass 1/n.
class EmpiricalMeasure1D {
 public:
  EmpiricalMeasure1D() = default;
  explicit EmpiricalMeasure1D(std::vector<double> atoms);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

 private:
  std::vector<double> atoms_;
};

/// Uniform-weight atomic measure on the complex plane.
class EmpiricalMeasure2D {
 public:
  EmpiricalMeasure2D() = default;
  explicit EmpiricalMeasure2D(std::vector<Complex> atoms);

  const std::vector<Complex>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

 private:
  std::vector<Complex> atoms_;
};

/// F(x) = #{atoms <= x} / n. Zero for an empty measure.
double ecdf_eval(const EmpiricalMeasure1D& m, double x);

/// Exact sup |F_mu - F_nu| over the real line.
double kolmogorov_distance(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu);

struct IbpResult {
  double lhs = 0.0;    // int f dmu - int f dnu
  double rhs = 0.0;    // int_alpha^beta f'(x) (F_nu(x) - F_mu(x)) dx
  double bound = 0.0;  // (f(beta) - f(alpha)) ||F_mu - F_nu||_inf
};

/// Both sides of the integration-by-parts identity for atomic measures on
/// [alpha, beta]:
///   int f dmu - int f dnu = -int f'(x) (F_mu(x) - F_nu(x)) dx.
/// F_mu - F_nu is constant between consecutive merged atoms,
/// so the right side is a finite sum of that constant times the integral of
/// f' over the piece; each piece integral uses adaptive Gauss-Kronrod on f'.
IbpResult ibp_difference(const std::function<double(double)>& f,
                         const std::function<double(double)>& f_prime,
                         const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu,
                         double alpha, double beta);

/// (1/n_mu) sum log(mu atoms) - (1/n_nu) sum log(nu atoms).
double log_integral_diff(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu);

/// Sup over r >= 0 of |F(r) - min(r^2, 1)|, F the ECDF of atom moduli: the
/// Kolmogorov distance of the radial part to the uniform law on the unit disk.
double radial_disk_distance(const EmpiricalMeasure2D& m);

/// Kolmogorov distance between the ECDF of arguments (mapped to [0, 1)) and
/// the uniform CDF. Atoms at the origin are ignored.
double angular_disk_distance(const EmpiricalMeasure2D& m);

}  // namespace circlaw

#endif  // CIRCLAW_MEASURES_HPP
