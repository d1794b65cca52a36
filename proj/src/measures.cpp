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

#include "circlaw/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "circlaw/error.hpp"

namespace circlaw {
namespace {

void require_nonempty(const EmpiricalMeasure1D& m, const char* op) {
  if (m.empty()) throw Error(Errc::invalid_measure, std::string(op) + ": empty measure");
}

// Kolmogorov distance of sorted samples to a continuous CDF. At every
// distinct sample value both one-sided limits of the ECDF are compared.
template <class Cdf>
double distance_to_cdf(const std::vector<double>& sorted, Cdf cdf) {
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t lo = 0; lo < sorted.size();) {
    std::size_t hi = lo;
    while (hi < sorted.size() && sorted[hi] == sorted[lo]) ++hi;
    const double target = cdf(sorted[lo]);
    sup = std::max({sup, std::abs(static_cast<double>(lo) / n - target),
                    std::abs(static_cast<double>(hi) / n - target)});
    lo = hi;
  }
  return sup;
}

}  // namespace

EmpiricalMeasure1D::EmpiricalMeasure1D(std::vector<double> atoms) : atoms_(std::move(atoms)) {
  for (double a : atoms_) {
    if (!std::isfinite(a)) throw Error(Errc::invalid_value, "EmpiricalMeasure1D: non-finite atom");
  }
  std::sort(atoms_.begin(), atoms_.end());
}

EmpiricalMeasure2D::EmpiricalMeasure2D(std::vector<Complex> atoms) : atoms_(std::move(atoms)) {
  for (Complex a : atoms_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(Errc::invalid_value, "EmpiricalMeasure2D: non-finite atom");
    }
  }
}

double ecdf_eval(const EmpiricalMeasure1D& m, double x) {
  if (m.empty()) return 0.0;
  const auto& a = m.atoms();
  const auto count = std::upper_bound(a.begin(), a.end(), x) - a.begin();
  return static_cast<double>(count) / static_cast<double>(a.size());
}

double kolmogorov_distance(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu) {
  require_nonempty(mu, "kolmogorov_distance");
  require_nonempty(nu, "kolmogorov_distance");
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  // Both ECDFs are right-continuous step functions, so the supremum is
  // attained at the right value of some atom.
  double sup = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const double x = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

IbpResult ibp_difference(const std::function<double(double)>& f,
                         const std::function<double(double)>& f_prime,
                         const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu,
                         double alpha, double beta) {
  require_nonempty(mu, "ibp_difference");
  require_nonempty(nu, "ibp_difference");
  if (!(alpha <= beta)) throw Error(Errc::domain, "ibp_difference: empty interval");
  for (const auto* m : {&mu, &nu}) {
    if (m->atoms().front() < alpha || m->atoms().back() > beta) {
      throw Error(Errc::domain, "ibp_difference: atoms outside [alpha, beta]");
    }
  }

  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  IbpResult out;
  double sum_a = 0.0, sum_b = 0.0;
  for (double x : a) sum_a += f(x);
  for (double x : b) sum_b += f(x);
  out.lhs = sum_a / na - sum_b / nb;

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
  double sup = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const double x = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const double diff = static_cast<double>(i) / na - static_cast<double>(j) / nb;
    sup = std::max(sup, std::abs(diff));
    if (i == a.size() && j == b.size()) break;  // F_mu - F_nu = 0 from here on
    const double next = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    if (diff != 0.0) {
      out.rhs -= diff * Quadrature::integrate(f_prime, x, next, 12, 1e-14);
    }
  }
  out.bound = (f(beta) - f(alpha)) * sup;
  return out;
}

double log_integral_diff(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu) {
  require_nonempty(mu, "log_integral_diff");
  require_nonempty(nu, "log_integral_diff");
  const auto mean_log = [](const EmpiricalMeasure1D& m) {
    if (m.atoms().front() <= 0.0) {
      throw Error(Errc::singular_support, "log_integral_diff: atom <= 0");
    }
    double sum = 0.0;
    for (double x : m.atoms()) sum += std::log(x);
    return sum / static_cast<double>(m.size());
  };
  return mean_log(mu) - mean_log(nu);
}

double radial_disk_distance(const EmpiricalMeasure2D& m) {
  if (m.empty()) throw Error(Errc::invalid_measure, "radial_disk_distance: empty measure");
  std::vector<double> radii;
  radii.reserve(m.size());
  for (Complex z : m.atoms()) radii.push_back(std::abs(z));
  std::sort(radii.begin(), radii.end());
  return distance_to_cdf(radii, [](double r) { return std::min(r * r, 1.0); });
}

double angular_disk_distance(const EmpiricalMeasure2D& m) {
  std::vector<double> turns;
  turns.reserve(m.size());
  for (Complex z : m.atoms()) {
    if (z == Complex(0.0, 0.0)) continue;
    double u = std::arg(z) / (2.0 * std::numbers::pi);
    if (u < 0.0) u += 1.0;
    if (u >= 1.0) u = 0.0;
    turns.push_back(u);
  }
  if (turns.empty()) {
    throw Error(Errc::invalid_measure, "angular_disk_distance: no atoms away from the origin");
  }
  std::sort(turns.begin(), turns.end());
  return distance_to_cdf(turns, [](double u) { return u; });
}

}  // namespace circlaw
