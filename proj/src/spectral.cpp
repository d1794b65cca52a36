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

#include "circlaw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "circlaw/error.hpp"

namespace circlaw {
namespace {

void require_usable(const ComplexMatrix& a, const char* op) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(Errc::invalid_dimension, std::string(op) + ": empty matrix");
  }
  const auto cap = max_dense_dim();
  if (static_cast<std::size_t>(std::max(a.rows(), a.cols())) > cap) {
    throw Error(Errc::invalid_dimension,
                std::string(op) + ": dimension exceeds dense cap " + std::to_string(cap) +
                    " (set CIRCLAW_MAX_N to raise it)");
  }
  if (!a.allFinite()) {
    throw Error(Errc::invalid_value, std::string(op) + ": non-finite entries");
  }
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::shape, std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()) + ", expected square");
  }
}

double principal_arg(Complex z) {
  const double t = std::arg(z);
  return t <= -std::numbers::pi ? std::numbers::pi : t;
}

}  // namespace

std::size_t max_dense_dim() {
  constexpr std::size_t kDefault = 2000;
  const char* env = std::getenv("CIRCLAW_MAX_N");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw Error(Errc::validation, std::string("CIRCLAW_MAX_N is not a positive integer: ") + env);
  }
  return static_cast<std::size_t>(v);
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  require_usable(a, "eigenvalues");
  const auto n = static_cast<lapack_int>(a.rows());
  ComplexMatrix work = a;
  std::vector<Complex> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n,
                                        w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(Errc::consistency, "eigenvalues: zgeev failed, info=" + std::to_string(info));
  }

  std::sort(w.begin(), w.end(),
            [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  // Group moduli equal up to rounding and order each group by argument.
  const double tol = 1e-12 * std::abs(w.front());
  for (std::size_t lo = 0; lo < w.size();) {
    std::size_t hi = lo + 1;
    while (hi < w.size() && std::abs(w[lo]) - std::abs(w[hi]) <= tol) ++hi;
    std::sort(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi),
              [](Complex x, Complex y) { return principal_arg(x) < principal_arg(y); });
    lo = hi;
  }
  return w;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  require_usable(a, "singular_values");
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  ComplexMatrix work = a;
  std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(Errc::consistency, "singular_values: zgesdd failed, info=" + std::to_string(info));
  }
  // zgesdd already returns them nonincreasing; keep the contract explicit.
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::size_t numerical_rank(const std::vector<double>& s) {
  if (s.empty() || s.front() == 0.0) return 0;
  const double cut = kRankTolerance * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

std::size_t numerical_rank(const ComplexMatrix& a) {
  return numerical_rank(singular_values(a));
}

bool numerically_singular(const std::vector<double>& s, std::size_t rows, std::size_t cols) {
  if (s.empty()) return true;
  const double s_min = s.back();
  if (s_min == 0.0 || s.front() == 0.0) return true;
  const double eps = std::numeric_limits<double>::epsilon();
  return s_min <= static_cast<double>(std::max(rows, cols)) * eps * s.front();
}

double log_abs_det_lu(const ComplexMatrix& a) {
  require_square(a, "log_abs_det_lu");
  require_usable(a, "log_abs_det_lu");
  const auto n = static_cast<lapack_int>(a.rows());
  ComplexMatrix lu = a;
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lu.data(), n, ipiv.data());
  if (info < 0) {
    throw Error(Errc::consistency, "log_abs_det_lu: zgetrf failed, info=" + std::to_string(info));
  }
  if (info > 0) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (lapack_int k = 0; k < n; ++k) sum += std::log(std::abs(lu(k, k)));
  return sum;
}

SpectralSummary summarize(const ComplexMatrix& a) {
  require_square(a, "summarize");
  SpectralSummary out;
  out.eigenvalues = eigenvalues(a);
  out.singular_values = singular_values(a);
  out.spectral_radius = std::abs(out.eigenvalues.front());
  out.operator_norm = out.singular_values.front();
  out.hs_norm_sq = a.squaredNorm();

  const auto n = static_cast<std::size_t>(a.rows());
  out.singular = numerically_singular(out.singular_values, n, n);
  out.log_abs_det_lu = log_abs_det_lu(a);
  if (out.singular) {
    out.log_abs_det = -std::numeric_limits<double>::infinity();
    return out;
  }
  double sum = 0.0;
  double scale = 1.0;
  for (double s : out.singular_values) {
    sum += std::log(s);
    scale += std::abs(std::log(s));
  }
  out.log_abs_det = sum;
  if (!(std::abs(out.log_abs_det - out.log_abs_det_lu) <= 1e-6 * scale)) {
    throw Error(Errc::consistency,
                "summarize: log|det| from singular values (" + std::to_string(sum) +
                    ") disagrees with LU (" + std::to_string(out.log_abs_det_lu) + ")");
  }
  return out;
}

ComplexMatrix shifted(const ComplexMatrix& a, Complex z) {
  require_square(a, "shifted");
  ComplexMatrix out = a;
  out.diagonal().array() -= z;
  return out;
}

WeylCheck check_weyl(const ComplexMatrix& a) {
  require_square(a, "check_weyl");
  WeylCheck out;
  for (Complex l : eigenvalues(a)) out.lhs += std::norm(l);
  for (double s : singular_values(a)) out.rhs += s * s;
  out.holds = out.lhs <= out.rhs + 1e-8 * out.rhs;
  return out;
}

}  // namespace circlaw
