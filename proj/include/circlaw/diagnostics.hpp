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

#ifndef CIRCLAW_DIAGNOSTICS_HPP
#define CIRCLAW_DIAGNOSTICS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "circlaw/config.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/measures.hpp"
#include "circlaw/types.hpp"

namespace circlaw {

/// Smooth real test function on the plane, supported in the closed disk of
/// radius support_radius around center (infinite radius: not compact).
struct TestFunction {
  std::string name;
  std::function<double(Complex)> value;
  std::function<double(Complex)> laplacian;  // empty when not available
  Complex center{0.0, 0.0};
  double support_radius = 0.0;
};

/// exp(1 - 1/(1 - rho^2)) with rho = |z - center|/radius; equals 1 at the
/// center and vanishes with all derivatives at rho = 1.
TestFunction radial_bump(Complex center, double radius);

/// Re(p(z - center)) times radial_bump(center, radius), p given by its
/// coefficients in increasing degree.
TestFunction polynomial_bump(Complex center, double radius, std::vector<Complex> coefficients);

/// Bumps at a few centers and radii inside and around the unit disk, plus
/// polynomial-times-cutoff functions.
std::vector<TestFunction> default_test_functions();

/// Singular-value measure of a (n x m): the n eigenvalues of sqrt(a a^*),
/// i.e. the singular values padded with zeros when m < n.
EmpiricalMeasure1D singular_value_measure(const ComplexMatrix& a);

struct DeltaDiagnostics {
  Complex z{0.0, 0.0};
  double delta = 0.0;                // (log|det(A-z)| - log|det(B-z)|)/n via LU
  double delta_log_integral = 0.0;   // same quantity as int log t d(mu - nu)
  double s_max_a = 0.0, s_min_a = 0.0, s_max_b = 0.0, s_min_b = 0.0;
  double ks = 0.0;                   // ||F_{n,z} - G_{n,z}||_inf
  double rank_bound = 0.0;           // rank(M)/n
  double ibp_bound = 0.0;            // (log s_max - log s_min) ks, joint support
  bool singular_flag = false;
  // Checks recorded for every non-flagged point.
  bool cross_check_ok = true;  // the two delta routes agree to 1e-8 relative
  bool rank_ok = true;         // ks <= rank_bound + 1e-12
  bool ibp_ok = true;          // |delta| <= ibp_bound + 1e-8

  bool consistent() const { return cross_check_ok && rank_ok && ibp_ok; }
};

DeltaDiagnostics delta_at(const AssembledPair& pair, Complex z);

/// One record per grid point, in ZGrid::points() order. Flagged points are
/// kept. workers > 1 evaluates points concurrently; output is identical.
std::vector<DeltaDiagnostics> delta_scan(const AssembledPair& pair, const ZGrid& grid,
                                         unsigned workers = 1);

struct RankCheck {
  double ks = 0.0;
  double bound = 0.0;  // numerical rank(a - b) / rows
  std::size_t rank = 0;
  bool holds = false;
};

RankCheck verify_rank_inequality(const ComplexMatrix& a, const ComplexMatrix& b);

struct DimStatistics {
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::size_t points = 0;
  std::size_t flagged_points = 0;
  double median_abs_delta = 0.0;  // over non-flagged points; NaN if none
  double median_ks = 0.0;
  double min_smin = 0.0;
  double max_smax = 0.0;
  std::size_t violating_replicates = 0;  // some point has s_min < n^-b0
  double violation_fraction = 0.0;
};

struct ScalingReport {
  std::vector<std::size_t> dims;
  std::vector<DimStatistics> per_dim;
  double a_hat = 0.0;    // growth exponent of max s_max in n
  double b_hat = 0.0;    // decay exponent of min s_min in n
  double eps_hat = 0.0;  // decay exponent of median ks in n
  double reference_exponent_b0 = 3.0;
  double violation_fraction = 0.0;  // over all (dim, replicate)
};

/// One delta record tagged with where it came from.
struct DeltaRow {
  std::size_t n = 0;
  std::size_t replicate = 0;
  DeltaDiagnostics diag;
};

/// Aggregates rows into per-dim statistics and least-squares log-log
/// exponents. When fewer than two dims have a non-flagged point this throws
/// Errc::insufficient_data, or, with require_fit = false, leaves the
/// exponents NaN.
ScalingReport aggregate_scaling(const std::vector<std::size_t>& dims,
                                const std::vector<DeltaRow>& rows, double reference_exponent_b0,
                                bool require_fit = true);

/// Produces the pair for replicate r at dimension n.
using PairSource = std::function<AssembledPair(std::size_t n, std::size_t replicate)>;

/// Pair for (config, n, replicate): sample seeded by (master_seed, n, r),
/// perturbation built from the config.
AssembledPair experiment_pair(const ExperimentConfig& config, std::size_t n,
                              std::size_t replicate);

ScalingReport scaling_scan(const ExperimentConfig& config, unsigned workers = 1);
ScalingReport scaling_scan(const ExperimentConfig& config, const PairSource& source,
                           unsigned workers = 1);

/// int f dmu_A - int f dmu_B over eigenvalue atoms, one entry per function.
std::vector<double> replacement_check(const AssembledPair& pair,
                                      const std::vector<TestFunction>& test_functions);

struct ConstantCase {
  Complex lambda1{0.0, 0.0};
  Complex lambda2{0.0, 0.0};
  double s1_central = 0.0;  // s_1(X / sqrt n)
};

/// B = (X + ones)/sqrt(n) for a sampled X.
ConstantCase constant_case(std::size_t n, const EntryDistribution& dist, std::uint64_t seed);
/// Same, for a caller-supplied X (e.g. X = 0).
ConstantCase constant_case(const ComplexMatrix& x);

struct Rectangle {
  double re_lo = -1.0, re_hi = 1.0, im_lo = -1.0, im_hi = 1.0;
};

struct GreenResult {
  double lhs = 0.0;  // sum_k f(root_k)
  double rhs = 0.0;  // (1/2pi) int laplacian(f) log|P|
  double residual = 0.0;
};

/// Midpoint-rule check of int f dmu = (1/2pi) int (lap f) log|P| for the
/// root-counting measure mu of P. Nodes closer than grid_step/2 to a root
/// are skipped.
GreenResult green_identity_residual(const std::vector<Complex>& roots, const TestFunction& f,
                                    double grid_step, const Rectangle& domain);

}  // namespace circlaw

#endif  // CIRCLAW_DIAGNOSTICS_HPP
