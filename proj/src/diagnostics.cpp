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

#include "circlaw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "circlaw/error.hpp"
#include "circlaw/random.hpp"
#include "circlaw/spectral.hpp"
#include "parallel.hpp"

namespace circlaw {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Least-squares slope of log y against log n. Constant sequences have slope
// 0; non-positive values are left out of the fit.
double loglog_slope(const std::vector<std::size_t>& dims, const std::vector<double>& values) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (std::isfinite(values[i]) && values[i] > 0.0) {
      xs.push_back(std::log(static_cast<double>(dims[i])));
      ys.push_back(std::log(values[i]));
    }
  }
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.size() >= 2 &&
      std::all_of(finite.begin(), finite.end(), [&](double v) { return v == finite.front(); })) {
    return 0.0;
  }
  if (xs.size() < 2) return kNaN;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double bump_profile(double rho) {
  if (rho >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - rho * rho));
}

}  // namespace

TestFunction radial_bump(Complex center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::invalid_value, "radial_bump: radius must be positive");
  TestFunction f;
  f.name = "bump(" + std::to_string(center.real()) + "," + std::to_string(center.imag()) + ";" +
           std::to_string(radius) + ")";
  f.center = center;
  f.support_radius = radius;
  f.value = [center, radius](Complex z) { return bump_profile(std::abs(z - center) / radius); };
  // With q = 1 - rho^2 the radial Laplacian of exp(1 - 1/q) is
  // f/R^2 (4 rho^2/q^4 - 4/q^2 - 8 rho^2/q^3).
  f.laplacian = [center, radius](Complex z) {
    const double rho = std::abs(z - center) / radius;
    if (rho >= 1.0) return 0.0;
    const double q = 1.0 - rho * rho;
    const double r2 = rho * rho;
    const double value = bump_profile(rho);
    return value / (radius * radius) *
           (4.0 * r2 / (q * q * q * q) - 4.0 / (q * q) - 8.0 * r2 / (q * q * q));
  };
  return f;
}

TestFunction polynomial_bump(Complex center, double radius, std::vector<Complex> coefficients) {
  if (coefficients.empty()) coefficients.push_back(1.0);
  TestFunction bump = radial_bump(center, radius);
  TestFunction f;
  f.name = "poly" + std::to_string(coefficients.size() - 1) + "x" + bump.name;
  f.center = center;
  f.support_radius = radius;
  const auto poly = [coefficients](Complex w) {
    Complex acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * w + *it;
    return acc;
  };
  const auto derivative = [coefficients](Complex w) {
    Complex acc = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 1;) {
      acc = acc * w + static_cast<double>(k) * coefficients[k];
    }
    return acc;
  };
  f.value = [poly, value = bump.value, center](Complex z) {
    return poly(z - center).real() * value(z);
  };
  // Re p is harmonic: lap(h g) = h lap(g) + 2 grad h . grad g, with
  // grad Re p = (Re p', -Im p') and grad g = -2 g w / (R^2 q^2).
  f.laplacian = [poly, derivative, value = bump.value, lap = bump.laplacian, center,
                 radius](Complex z) {
    const Complex w = z - center;
    const double rho = std::abs(w) / radius;
    if (rho >= 1.0) return 0.0;
    const double q = 1.0 - rho * rho;
    const double g = value(z);
    const Complex dp = derivative(w);
    const double scale = -2.0 * g / (radius * radius * q * q);
    const double grad_dot = dp.real() * scale * w.real() - dp.imag() * scale * w.imag();
    return poly(w).real() * lap(z) + 2.0 * grad_dot;
  };
  return f;
}

std::vector<TestFunction> default_test_functions() {
  return {
      radial_bump({0.0, 0.0}, 0.5),
      radial_bump({0.5, 0.5}, 0.4),
      radial_bump({-0.3, -0.2}, 0.6),
      radial_bump({0.0, 0.0}, 1.5),
      polynomial_bump({0.0, 0.0}, 1.2, {0.0, 1.0}),
      polynomial_bump({0.2, -0.1}, 0.8, {1.0, 0.0, Complex(0.0, 1.0)}),
  };
}

EmpiricalMeasure1D singular_value_measure(const ComplexMatrix& a) {
  std::vector<double> s = singular_values(a);
  s.resize(static_cast<std::size_t>(a.rows()), 0.0);
  return EmpiricalMeasure1D(std::move(s));
}

DeltaDiagnostics delta_at(const AssembledPair& pair, Complex z) {
  const auto n = pair.dim;
  const ComplexMatrix as = shifted(pair.a_matrix, z);
  const ComplexMatrix bs = shifted(pair.b_matrix, z);
  const std::vector<double> sa = singular_values(as);
  const std::vector<double> sb = singular_values(bs);
  const EmpiricalMeasure1D mu(sa);
  const EmpiricalMeasure1D nu(sb);

  DeltaDiagnostics d;
  d.z = z;
  d.s_max_a = sa.front();
  d.s_min_a = sa.back();
  d.s_max_b = sb.front();
  d.s_min_b = sb.back();
  d.ks = kolmogorov_distance(mu, nu);
  d.rank_bound = static_cast<double>(pair.perturbation_rank) / static_cast<double>(n);
  d.rank_ok = d.ks <= d.rank_bound + 1e-12;

  double lu_a = 0.0, lu_b = 0.0;
  d.singular_flag = numerically_singular(sa, n, n) || numerically_singular(sb, n, n);
  if (!d.singular_flag) {
    lu_a = log_abs_det_lu(as);
    lu_b = log_abs_det_lu(bs);
    d.singular_flag = !std::isfinite(lu_a) || !std::isfinite(lu_b);
  }
  if (d.singular_flag) {
    d.delta = kNaN;
    d.delta_log_integral = kNaN;
    d.ibp_bound = kNaN;
    return d;
  }

  d.delta = (lu_a - lu_b) / static_cast<double>(n);
  d.delta_log_integral = log_integral_diff(mu, nu);
  const double s_max = std::max(d.s_max_a, d.s_max_b);
  const double s_min = std::min(d.s_min_a, d.s_min_b);
  d.ibp_bound = (std::log(s_max) - std::log(s_min)) * d.ks;

  const double scale = std::max(std::abs(d.delta), std::abs(d.delta_log_integral));
  d.cross_check_ok = std::abs(d.delta - d.delta_log_integral) <= 1e-8 * scale + 1e-12;
  d.ibp_ok = std::abs(d.delta) <= d.ibp_bound + 1e-8;
  return d;
}

std::vector<DeltaDiagnostics> delta_scan(const AssembledPair& pair, const ZGrid& grid,
                                         unsigned workers) {
  const std::vector<Complex> points = grid.points();
  std::vector<DeltaDiagnostics> out(points.size());
  detail::parallel_for(points.size(), workers,
                       [&](std::size_t i) { out[i] = delta_at(pair, points[i]); });
  return out;
}

RankCheck verify_rank_inequality(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::shape, "verify_rank_inequality: shapes differ");
  }
  RankCheck out;
  out.ks = kolmogorov_distance(singular_value_measure(a), singular_value_measure(b));
  const ComplexMatrix diff = a - b;
  out.rank = diff.isZero(0.0) ? 0 : numerical_rank(diff);
  out.bound = static_cast<double>(out.rank) / static_cast<double>(a.rows());
  out.holds = out.ks <= out.bound + 1e-12;
  return out;
}

ScalingReport aggregate_scaling(const std::vector<std::size_t>& dims,
                                const std::vector<DeltaRow>& rows, double b0, bool require_fit) {
  ScalingReport report;
  report.dims = dims;
  report.reference_exponent_b0 = b0;
  std::size_t usable_dims = 0;
  std::size_t total_replicates = 0, total_violations = 0;

  for (std::size_t n : dims) {
    DimStatistics st;
    st.n = n;
    st.min_smin = std::numeric_limits<double>::infinity();
    st.max_smax = 0.0;
    const double floor = std::pow(static_cast<double>(n), -b0);
    std::vector<double> abs_delta, ks;
    std::vector<std::size_t> violating;
    std::vector<std::size_t> seen;
    for (const auto& row : rows) {
      if (row.n != n) continue;
      const auto& d = row.diag;
      ++st.points;
      if (std::find(seen.begin(), seen.end(), row.replicate) == seen.end()) {
        seen.push_back(row.replicate);
      }
      const double s_min = std::min(d.s_min_a, d.s_min_b);
      st.min_smin = std::min(st.min_smin, s_min);
      st.max_smax = std::max({st.max_smax, d.s_max_a, d.s_max_b});
      ks.push_back(d.ks);
      if (s_min < floor &&
          std::find(violating.begin(), violating.end(), row.replicate) == violating.end()) {
        violating.push_back(row.replicate);
      }
      if (d.singular_flag) {
        ++st.flagged_points;
      } else {
        abs_delta.push_back(std::abs(d.delta));
      }
    }
    st.replicates = seen.size();
    st.median_abs_delta = median(abs_delta);
    st.median_ks = median(ks);
    st.violating_replicates = violating.size();
    st.violation_fraction =
        st.replicates == 0 ? 0.0
                           : static_cast<double>(violating.size()) / static_cast<double>(st.replicates);
    if (st.points == 0) st.min_smin = kNaN;
    if (!abs_delta.empty()) ++usable_dims;
    total_replicates += st.replicates;
    total_violations += st.violating_replicates;
    report.per_dim.push_back(st);
  }
  report.violation_fraction =
      total_replicates == 0 ? 0.0
                            : static_cast<double>(total_violations) / static_cast<double>(total_replicates);
  if (usable_dims < 2) {
    if (!require_fit) {
      report.a_hat = report.b_hat = report.eps_hat = kNaN;
      return report;
    }
    throw Error(Errc::insufficient_data,
                "scaling: need at least two dims with a non-singular point, have " +
                    std::to_string(usable_dims));
  }

  std::vector<double> smax, smin, mks;
  for (const auto& st : report.per_dim) {
    smax.push_back(st.max_smax);
    smin.push_back(st.min_smin);
    mks.push_back(st.median_ks);
  }
  report.a_hat = loglog_slope(dims, smax);
  report.b_hat = -loglog_slope(dims, smin);
  report.eps_hat = -loglog_slope(dims, mks);
  // Negated zero slopes would print as -0.
  if (report.b_hat == 0.0) report.b_hat = 0.0;
  if (report.eps_hat == 0.0) report.eps_hat = 0.0;
  return report;
}

AssembledPair experiment_pair(const ExperimentConfig& config, std::size_t n,
                              std::size_t replicate) {
  const MatrixSample x =
      sample_matrix(config.distribution, n, derive_seed(config.master_seed, n, replicate));
  return assemble(x, build_perturbation(config.perturbation, n));
}

ScalingReport scaling_scan(const ExperimentConfig& config, unsigned workers) {
  return scaling_scan(
      config, [&config](std::size_t n, std::size_t r) { return experiment_pair(config, n, r); },
      workers);
}

ScalingReport scaling_scan(const ExperimentConfig& config, const PairSource& source,
                           unsigned workers) {
  if (config.dims.empty() || config.replicates == 0) {
    throw Error(Errc::insufficient_data, "scaling_scan: no dims or no replicates");
  }
  const ZGrid& grid = config.z_grid;
  const std::size_t per_dim = config.replicates;
  const std::size_t tasks = config.dims.size() * per_dim;
  std::vector<std::vector<DeltaDiagnostics>> results(tasks);
  detail::parallel_for(tasks, workers, [&](std::size_t t) {
    const std::size_t n = config.dims[t / per_dim];
    results[t] = delta_scan(source(n, t % per_dim), grid, 1);
  });

  std::vector<DeltaRow> rows;
  for (std::size_t t = 0; t < tasks; ++t) {
    for (const auto& d : results[t]) {
      rows.push_back({config.dims[t / per_dim], t % per_dim, d});
    }
  }
  return aggregate_scaling(config.dims, rows, config.reference_exponent_b0);
}

std::vector<double> replacement_check(const AssembledPair& pair,
                                      const std::vector<TestFunction>& test_functions) {
  const std::vector<Complex> la = eigenvalues(pair.a_matrix);
  const std::vector<Complex> lb = eigenvalues(pair.b_matrix);
  std::vector<double> out;
  out.reserve(test_functions.size());
  for (const auto& f : test_functions) {
    double sa = 0.0, sb = 0.0;
    for (Complex l : la) sa += f.value(l);
    for (Complex l : lb) sb += f.value(l);
    out.push_back(sa / static_cast<double>(la.size()) - sb / static_cast<double>(lb.size()));
  }
  return out;
}

ConstantCase constant_case(std::size_t n, const EntryDistribution& dist, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::invalid_dimension, "constant_case: n must be >= 2");
  return constant_case(sample_matrix(dist, n, seed).entries);
}

ConstantCase constant_case(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw Error(Errc::shape, "constant_case: matrix must be square");
  if (x.rows() < 2) throw Error(Errc::invalid_dimension, "constant_case: n must be >= 2");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(x.rows()));
  const ComplexMatrix b =
      (x + ComplexMatrix::Ones(x.rows(), x.cols())) * inv_sqrt_n;
  const std::vector<Complex> lambda = eigenvalues(b);
  ConstantCase out;
  out.lambda1 = lambda[0];
  out.lambda2 = lambda[1];
  out.s1_central = singular_values(x * inv_sqrt_n).front();
  return out;
}

GreenResult green_identity_residual(const std::vector<Complex>& roots, const TestFunction& f,
                                    double grid_step, const Rectangle& domain) {
  if (!(grid_step > 0.0)) throw Error(Errc::invalid_value, "green: grid_step must be positive");
  if (!f.laplacian) throw Error(Errc::invalid_value, "green: test function has no Laplacian");
  const double r = f.support_radius;
  if (!std::isfinite(r) || f.center.real() - r < domain.re_lo ||
      f.center.real() + r > domain.re_hi || f.center.imag() - r < domain.im_lo ||
      f.center.imag() + r > domain.im_hi) {
    throw Error(Errc::domain, "green: support of " + f.name + " is not inside the domain");
  }
  if (2.0 * r / grid_step < 8.0) {
    throw Error(Errc::invalid_value, "green: grid_step does not resolve the test function");
  }

  GreenResult out;
  for (Complex root : roots) out.lhs += f.value(root);

  const auto nx = static_cast<long>(std::ceil((domain.re_hi - domain.re_lo) / grid_step - 1e-9));
  const auto ny = static_cast<long>(std::ceil((domain.im_hi - domain.im_lo) / grid_step - 1e-9));
  double sum = 0.0;
  for (long i = 0; i < nx; ++i) {
    const double x = domain.re_lo + (static_cast<double>(i) + 0.5) * grid_step;
    if (std::abs(x - f.center.real()) >= r) continue;
    for (long j = 0; j < ny; ++j) {
      const Complex z(x, domain.im_lo + (static_cast<double>(j) + 0.5) * grid_step);
      if (std::abs(z - f.center) >= r) continue;
      double log_abs_p = 0.0;
      bool near_root = false;
      for (Complex root : roots) {
        const double dist = std::abs(z - root);
        if (dist < 0.5 * grid_step) {
          near_root = true;
          break;
        }
        log_abs_p += std::log(dist);
      }
      if (near_root) continue;
      sum += f.laplacian(z) * log_abs_p;
    }
  }
  out.rhs = sum * grid_step * grid_step / (2.0 * std::numbers::pi);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace circlaw
