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

#include "circlaw/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "circlaw/diagnostics.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/measures.hpp"
#include "circlaw/random.hpp"
#include "circlaw/spectral.hpp"

namespace circlaw {
namespace {

constexpr EntryDistribution::Kind kKinds[] = {
    EntryDistribution::Kind::complex_gaussian,   EntryDistribution::Kind::real_gaussian,
    EntryDistribution::Kind::rademacher,         EntryDistribution::Kind::complex_rademacher,
    EntryDistribution::Kind::centered_bernoulli, EntryDistribution::Kind::centered_uniform,
};

ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    for (Eigen::Index j = 0; j < rows; ++j) m(j, k) = Complex(g(rng), g(rng));
  }
  return m;
}

// sup |F_a - F_b| by evaluating both ECDFs from scratch at every atom, at
// every midpoint between neighbouring atoms, and outside the range.
double brute_force_ks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> grid(a);
  grid.insert(grid.end(), b.begin(), b.end());
  std::sort(grid.begin(), grid.end());
  std::vector<double> probes = {grid.front() - 1.0, grid.back() + 1.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    probes.push_back(grid[i]);
    if (i + 1 < grid.size()) probes.push_back(0.5 * (grid[i] + grid[i + 1]));
  }
  const auto cdf = [](const std::vector<double>& atoms, double x) {
    std::size_t count = 0;
    for (double v : atoms) count += v <= x ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(atoms.size());
  };
  double sup = 0.0;
  for (double x : probes) sup = std::max(sup, std::abs(cdf(a, x) - cdf(b, x)));
  return sup;
}

}  // namespace

LemmaSuiteReport run_lemma_suite(std::size_t trials, std::uint64_t seed) {
  LemmaSuiteReport report;
  report.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  for (std::size_t t = 0; t < trials; ++t) {
    // Weyl.
    {
      const int n = uniform_int(2, 30);
      EntryDistribution dist{kKinds[t % std::size(kKinds)], 0.1 + 0.8 * unit(rng)};
      ComplexMatrix a = sample_matrix(dist, static_cast<std::size_t>(n), derive_seed(seed, t, 1)).entries;
      if (t % 3 == 0) {
        a += 10.0 * random_matrix(rng, n, 1) * random_matrix(rng, 1, n);
      }
      const WeylCheck w = check_weyl(a);
      if (!w.holds) ++report.weyl_violations;
      if (w.rhs > 0.0) report.worst_weyl_ratio = std::max(report.worst_weyl_ratio, w.lhs / w.rhs);
    }

    // Integration by parts.
    {
      const int n = uniform_int(1, 30);
      const bool monotone = t % 2 == 0;
      std::vector<double> coefficients(static_cast<std::size_t>(uniform_int(0, 4)) + 1);
      for (double& c : coefficients) c = monotone ? unit(rng) : 2.0 * unit(rng) - 1.0;
      const auto f = [&coefficients](double x) {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
        return acc;
      };
      const auto f_prime = [&coefficients](double x) {
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > 1;) {
          acc = acc * x + static_cast<double>(k) * coefficients[k];
        }
        return acc;
      };
      std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
      for (double& v : a) v = 1.0 + 9.0 * unit(rng);
      for (double& v : b) v = 1.0 + 9.0 * unit(rng);
      const IbpResult r = ibp_difference(f, f_prime, EmpiricalMeasure1D(a), EmpiricalMeasure1D(b), 1.0, 10.0);
      const double residual = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs));
      report.worst_ibp_residual = std::max(report.worst_ibp_residual, residual);
      if (residual > 1e-10) ++report.ibp_identity_violations;
      if (monotone && std::abs(r.lhs) > r.bound + 1e-10) ++report.ibp_bound_violations;
    }

    // Rank inequality.
    {
      const int rows = uniform_int(2, 40);
      const int cols = t % 4 == 0 ? uniform_int(1, 40) : rows;
      const int k = std::min({uniform_int(0, 5), rows, cols});
      const ComplexMatrix a = random_matrix(rng, rows, cols);
      ComplexMatrix b = a;
      if (k > 0) b += random_matrix(rng, rows, k) * random_matrix(rng, k, cols);
      const RankCheck check = verify_rank_inequality(a, b);
      if (!check.holds) ++report.rank_violations;
      report.worst_rank_margin = std::max(report.worst_rank_margin, check.ks - check.bound);
    }

    // Kolmogorov distance vs brute force; integer-valued atoms force ties.
    {
      const int n = uniform_int(1, 40);
      const int m = uniform_int(1, 40);
      const bool ties = t % 2 == 1;
      std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(m));
      for (double& v : a) v = ties ? uniform_int(0, 6) : unit(rng);
      for (double& v : b) v = ties ? uniform_int(0, 6) : unit(rng);
      const double fast = kolmogorov_distance(EmpiricalMeasure1D(a), EmpiricalMeasure1D(b));
      if (fast != brute_force_ks(a, b)) ++report.ks_oracle_mismatches;
    }
  }
  return report;
}

}  // namespace circlaw
