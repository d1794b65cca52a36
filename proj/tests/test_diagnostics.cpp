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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "circlaw/diagnostics.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/error.hpp"
#include "circlaw/measures.hpp"
#include "circlaw/spectral.hpp"
#include "oracles.hpp"

using namespace circlaw;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected circlaw::Error");
  return Errc::validation;
}

AssembledPair gaussian_pair(std::size_t n, std::uint64_t seed, PerturbationSpec::Kind kind) {
  PerturbationSpec spec;
  spec.kind = kind;
  return assemble(sample_matrix(EntryDistribution{}, n, seed), build_perturbation(spec, n));
}

ExperimentConfig config_for(std::vector<std::size_t> dims, std::size_t replicates, Complex z,
                            PerturbationSpec::Kind kind) {
  ExperimentConfig c;
  c.name = "test";
  c.dims = std::move(dims);
  c.replicates = replicates;
  c.master_seed = 11;
  c.perturbation.kind = kind;
  c.z_grid = ZGrid::at(z);
  return c;
}

// Central second difference of f at z.
double fd_laplacian(const TestFunction& f, Complex z, double h) {
  const double c = f.value(z);
  return (f.value(z + h) + f.value(z - h) + f.value(z + Complex(0, h)) +
          f.value(z - Complex(0, h)) - 4.0 * c) /
         (h * h);
}

}  // namespace

TEST_CASE("delta_at with a zero perturbation") {
  const auto pair = gaussian_pair(30, 4, PerturbationSpec::Kind::zero);
  for (Complex z : {Complex(0, 0), Complex(0.5, -0.3), Complex(2, 2)}) {
    const auto d = delta_at(pair, z);
    CHECK_FALSE(d.singular_flag);
    CHECK(d.delta == 0.0);
    CHECK(d.ks == 0.0);
    CHECK(d.rank_bound == 0.0);
    CHECK(d.consistent());
  }
}

TEST_CASE("delta_at on a 1x1 pair") {
  const Complex x(0.3, -1.2), m(2.0, 0.5), z(0.25, 0.75);
  AssembledPair pair;
  pair.a_matrix = ComplexMatrix::Constant(1, 1, x);
  pair.b_matrix = ComplexMatrix::Constant(1, 1, x + m);
  pair.dim = 1;
  pair.perturbation_rank = 1;
  const auto d = delta_at(pair, z);
  CHECK(d.delta == doctest::Approx(std::log(std::abs(x - z)) - std::log(std::abs(x + m - z))).epsilon(1e-14));
  CHECK(d.s_min_a == doctest::Approx(std::abs(x - z)));
  CHECK(d.s_max_b == doctest::Approx(std::abs(x + m - z)));
  CHECK(d.ks == 1.0);
  CHECK(d.rank_bound == 1.0);
  CHECK(d.consistent());

  const auto scan = delta_scan(pair, ZGrid::at(z));
  REQUIRE(scan.size() == 1);
  CHECK(scan[0].delta == d.delta);
  CHECK(scan[0].ks == d.ks);
}

TEST_CASE("delta_at on a 10x10 rank-one pair matches independent oracles") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    AssembledPair pair;
    pair.a_matrix = oracle::gaussian(rng, 10, 10);
    pair.b_matrix = pair.a_matrix + oracle::gaussian(rng, 10, 1) * oracle::gaussian(rng, 1, 10);
    pair.dim = 10;
    pair.perturbation_rank = 1;
    const Complex z(0.3 * trial - 3.0, 0.2);
    const auto d = delta_at(pair, z);
    REQUIRE_FALSE(d.singular_flag);
    const ComplexMatrix as = pair.a_matrix - z * ComplexMatrix::Identity(10, 10);
    const ComplexMatrix bs = pair.b_matrix - z * ComplexMatrix::Identity(10, 10);
    const double want = (oracle::log_abs_det(as) - oracle::log_abs_det(bs)) / 10.0;
    CHECK(std::abs(d.delta - want) <= 1e-10 * (1.0 + std::abs(want)));
    CHECK(std::abs(d.delta - d.delta_log_integral) <= 1e-8 * std::abs(d.delta) + 1e-12);
    const auto sa = oracle::singular_values(as);
    const auto sb = oracle::singular_values(bs);
    CHECK(d.s_min_a == doctest::Approx(sa.back()).epsilon(1e-10));
    CHECK(d.s_max_b == doctest::Approx(sb.front()).epsilon(1e-10));
    CHECK(d.ks <= 0.1 + 1e-12);
    CHECK(d.consistent());
  }
}

TEST_CASE("delta_at flags singular shifts without throwing") {
  AssembledPair pair;
  pair.a_matrix = ComplexMatrix::Identity(4, 4);
  pair.b_matrix = ComplexMatrix::Identity(4, 4);
  pair.b_matrix(0, 0) = 2.0;
  pair.dim = 4;
  pair.perturbation_rank = 1;
  const auto d = delta_at(pair, 1.0);
  CHECK(d.singular_flag);
  CHECK(std::isnan(d.delta));
  CHECK(d.s_min_a == 0.0);
  const auto ok = delta_at(pair, 0.5);
  CHECK_FALSE(ok.singular_flag);
  CHECK(ok.delta == doctest::Approx((4 * std::log(0.5) - 3 * std::log(0.5) - std::log(1.5)) / 4));
}

TEST_CASE("verify_rank_inequality examples") {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = oracle::gaussian(rng, 10, 10);
  const auto same = verify_rank_inequality(a, a);
  CHECK(same.ks == 0.0);
  CHECK(same.bound == 0.0);
  CHECK(same.holds);

  const auto ones = verify_rank_inequality(a, a + ComplexMatrix::Ones(10, 10));
  CHECK(ones.rank == 1);
  CHECK(ones.ks <= 0.1 + 1e-12);
  CHECK(ones.holds);

  const ComplexMatrix c = oracle::gaussian(rng, 20, 20);
  ComplexMatrix d = c;
  d.row(2) += oracle::gaussian(rng, 1, 20);
  d.row(7) += oracle::gaussian(rng, 1, 20);
  d.row(15) += oracle::gaussian(rng, 1, 20);
  const auto rows = verify_rank_inequality(c, d);
  CHECK(rows.rank == 3);
  CHECK(rows.bound == doctest::Approx(3.0 / 20.0));
  CHECK(rows.holds);
  CHECK(oracle::singular_values(d - c)[3] <= 1e-12);

  CHECK(code_of([&] { verify_rank_inequality(a, c); }) == Errc::shape);
}

TEST_CASE("rank inequality holds for planted ranks") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> dim(1, 40), rank(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = dim(rng);
    const auto k = std::min(rank(rng), n);
    const ComplexMatrix a = oracle::gaussian(rng, n, n);
    ComplexMatrix b = a;
    if (k > 0) b += oracle::gaussian(rng, n, k) * oracle::gaussian(rng, k, n);
    const auto r = verify_rank_inequality(a, b);
    CHECK(r.rank == static_cast<std::size_t>(k));
    CHECK(r.holds);
  }
}

TEST_CASE("delta_scan covers every grid point and respects the chain inequality") {
  const auto zero = delta_scan(gaussian_pair(40, 1, PerturbationSpec::Kind::zero), ZGrid{});
  CHECK(zero.size() == 121);
  for (const auto& d : zero) CHECK(d.delta == 0.0);

  const auto pair = gaussian_pair(200, 3, PerturbationSpec::Kind::all_ones);
  ZGrid grid;
  grid.re_range = {-2, 2};
  grid.im_range = {-2, 2};
  grid.step = 1.0;
  const auto scan = delta_scan(pair, grid, 2);
  REQUIRE(scan.size() == 25);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const auto& d = scan[i];
    CHECK(d.z == grid.points()[i]);
    if (d.singular_flag) continue;
    CHECK(std::abs(d.delta) <= d.ibp_bound + 1e-8);
    CHECK(d.ks <= 1.0 / 200.0 + 1e-12);
    CHECK(d.consistent());
  }
  // Worker count does not change the result.
  const auto serial = delta_scan(pair, grid, 1);
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(serial[i].delta == scan[i].delta);
}

TEST_CASE("scaling_scan on identity pairs has zero exponents") {
  auto config = config_for({10, 20, 40}, 2, 0.0, PerturbationSpec::Kind::zero);
  const PairSource identity = [](std::size_t n, std::size_t) {
    AssembledPair p;
    p.a_matrix = ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    p.b_matrix = p.a_matrix;
    p.dim = n;
    return p;
  };
  const auto report = scaling_scan(config, identity);
  REQUIRE(report.per_dim.size() == 3);
  for (const auto& st : report.per_dim) {
    CHECK(st.min_smin == 1.0);
    CHECK(st.max_smax == 1.0);
    CHECK(st.replicates == 2);
    CHECK(st.median_abs_delta == 0.0);
  }
  CHECK(report.a_hat == 0.0);
  CHECK(report.b_hat == 0.0);
  CHECK(report.eps_hat == 0.0);
  CHECK(report.violation_fraction == 0.0);
}

TEST_CASE("scaling_scan needs two usable dims") {
  auto config = config_for({10}, 1, 0.5, PerturbationSpec::Kind::zero);
  CHECK(code_of([&] { scaling_scan(config); }) == Errc::insufficient_data);
  const PairSource singular = [](std::size_t n, std::size_t) {
    AssembledPair p;
    p.a_matrix = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    p.b_matrix = p.a_matrix;
    p.dim = n;
    return p;
  };
  config = config_for({4, 8, 16}, 1, 0.0, PerturbationSpec::Kind::zero);
  CHECK(code_of([&] { scaling_scan(config, singular); }) == Errc::insufficient_data);
}

TEST_CASE("scaling_scan: kolmogorov distance decays with n") {
  const auto config = config_for({50, 100, 200, 400}, 10, Complex(0.5, 0.0), PerturbationSpec::Kind::all_ones);
  const auto report = scaling_scan(config);
  CHECK(report.eps_hat > 0.0);
  for (std::size_t i = 0; i + 1 < report.per_dim.size(); ++i) {
    CHECK(report.per_dim[i + 1].median_ks < report.per_dim[i].median_ks);
  }
  // ||ones / sqrt(n)|| = sqrt(n) dominates s_max.
  CHECK(report.a_hat == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("scaling_scan: no smallest singular value below n^-3") {
  const auto config = config_for({50, 100, 200}, 100, Complex(1.0, 0.0), PerturbationSpec::Kind::all_ones);
  const auto report = scaling_scan(config);
  REQUIRE(report.per_dim.back().n == 200);
  CHECK(report.per_dim.back().replicates == 100);
  CHECK(report.per_dim.back().violation_fraction == 0.0);
  CHECK(report.violation_fraction == 0.0);
}

TEST_CASE("replacement_check") {
  const auto fs = default_test_functions();
  const auto zero = replacement_check(gaussian_pair(60, 2, PerturbationSpec::Kind::zero), fs);
  REQUIRE(zero.size() == fs.size());
  for (double v : zero) CHECK(v == 0.0);

  TestFunction one;
  one.name = "one";
  one.value = [](Complex) { return 1.0; };
  const auto pair = gaussian_pair(60, 2, PerturbationSpec::Kind::all_ones);
  CHECK(std::abs(replacement_check(pair, {one})[0]) <= 1e-15);

  const auto bump = radial_bump(0.0, 1.0);
  std::vector<double> small, large;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    small.push_back(std::abs(replacement_check(gaussian_pair(100, seed, PerturbationSpec::Kind::all_ones), {bump})[0]));
    large.push_back(std::abs(replacement_check(gaussian_pair(400, seed, PerturbationSpec::Kind::all_ones), {bump})[0]));
  }
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  CHECK(large[2] < small[2]);
  CHECK(small[2] <= 0.1);
  CHECK(large[2] <= 0.1);
}

TEST_CASE("constant_case with X = 0 is exact") {
  for (Eigen::Index n : {4, 25, 100}) {
    const auto c = constant_case(ComplexMatrix::Zero(n, n));
    CHECK(std::abs(c.lambda1 - std::sqrt(static_cast<double>(n))) <= 1e-10);
    CHECK(std::abs(c.lambda2) <= 1e-10);
    CHECK(c.s1_central == 0.0);
  }
  CHECK(code_of([] { constant_case(1, EntryDistribution{}, 1); }) == Errc::invalid_dimension);
}

TEST_CASE("constant_case at n = 400, seed 1") {
  const auto c = constant_case(400, EntryDistribution{}, 1);
  CHECK(std::abs(c.lambda1 - 20.0) <= 3.0);
  CHECK(std::abs(c.lambda2) <= 2.5);
  CHECK(c.s1_central == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("test-function laplacians match finite differences") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const auto& f : default_test_functions()) {
    for (int k = 0; k < 50; ++k) {
      const Complex z = f.center + 0.9 * f.support_radius * Complex(unit(rng), unit(rng)) / std::sqrt(2.0);
      const double want = fd_laplacian(f, z, 1e-4);
      CHECK(std::abs(f.laplacian(z) - want) <= 1e-4 * (1.0 + std::abs(want)));
    }
    CHECK(f.value(f.center + 1.01 * f.support_radius) == 0.0);
  }
}

TEST_CASE("green identity examples") {
  const Rectangle box{-2, 2, -2, 2};
  const auto at_origin = radial_bump(0.0, 0.5);
  CHECK(at_origin.value(0.0) == 1.0);
  const auto z = green_identity_residual({0.0}, at_origin, 1e-2, box);
  CHECK(z.lhs == 1.0);
  CHECK(z.residual <= 1e-2);

  const auto away = green_identity_residual({0.0}, radial_bump(Complex(1, 1), 0.5), 1e-2, box);
  CHECK(away.lhs == 0.0);
  CHECK(std::abs(away.rhs) <= 1e-4);

  const auto at_one = radial_bump(1.0, 0.5);
  const auto q = green_identity_residual({1.0, -1.0}, at_one, 1e-2, box);
  CHECK(q.lhs == at_one.value(1.0));
  CHECK(q.residual <= 1e-2);

  // Non-radial test function, roots off the grid.
  const auto poly = polynomial_bump(Complex(0.1, 0.2), 0.9, {1.0, Complex(0.5, 0.5)});
  const std::vector<Complex> roots = {Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(1.5, 1.5)};
  const auto g = green_identity_residual(roots, poly, 5e-3, box);
  CHECK(g.residual <= 1e-2);
}

TEST_CASE("green identity residual contracts as the step halves") {
  const Rectangle box{-2, 2, -2, 2};
  struct Case {
    std::vector<Complex> roots;
    TestFunction f;
  };
  const std::vector<Case> cases = {{{0.0}, radial_bump(0.0, 0.5)},
                                   {{1.0, -1.0}, radial_bump(1.0, 0.5)}};
  for (const auto& c : cases) {
    double previous = green_identity_residual(c.roots, c.f, 1e-2, box).residual;
    for (double h : {5e-3, 2.5e-3}) {
      const double next = green_identity_residual(c.roots, c.f, h, box).residual;
      CHECK(next <= 0.6 * previous);
      previous = next;
    }
  }
}

TEST_CASE("green identity errors") {
  const Rectangle box{-1, 1, -1, 1};
  CHECK(code_of([&] { green_identity_residual({0.0}, radial_bump(0.8, 0.5), 1e-2, box); }) == Errc::domain);
  CHECK(code_of([&] { green_identity_residual({0.0}, radial_bump(0.0, 0.5), 0.2, box); }) == Errc::invalid_value);
  CHECK(code_of([&] { green_identity_residual({0.0}, radial_bump(0.0, 0.5), 0.0, box); }) == Errc::invalid_value);
}
