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

#ifndef CIRCLAW_LEMMAS_HPP
#define CIRCLAW_LEMMAS_HPP

#include <cstddef>
#include <cstdint>

namespace circlaw {

/// Outcome of the randomized finite-n checks of the exact statements the
/// reduction relies on.
struct LemmaSuiteReport {
  std::size_t trials = 0;
  std::size_t weyl_violations = 0;        // sum |l|^2 > sum s^2 (1 + 1e-8)
  std::size_t ibp_identity_violations = 0;  // |lhs - rhs| > 1e-10 (1 + |lhs|)
  std::size_t ibp_bound_violations = 0;   // nondecreasing f: |lhs| > bound + 1e-10
  std::size_t rank_violations = 0;        // ks > rank(a - b)/n + 1e-12
  std::size_t ks_oracle_mismatches = 0;   // merge scan != brute-force grid

  double worst_weyl_ratio = 0.0;      // max lhs/rhs
  double worst_ibp_residual = 0.0;    // max |lhs - rhs| / (1 + |lhs|)
  double worst_rank_margin = -1.0;    // max ks - bound

  std::size_t total_violations() const {
    return weyl_violations + ibp_identity_violations + ibp_bound_violations + rank_violations +
           ks_oracle_mismatches;
  }
};

/// Each trial draws a fresh random instance for every check:
///  - Weyl: n in [2, 30], entries from a rotating distribution, sometimes
///    with a planted low-rank term (strongly non-normal matrices);
///  - integration by parts: random polynomials of degree <= 4, atoms in [1, 10];
///  - rank inequality: n x m with n, m <= 40 and planted rank 0..5;
///  - Kolmogorov distance against a brute-force grid evaluation, with ties.
LemmaSuiteReport run_lemma_suite(std::size_t trials, std::uint64_t seed);

}  // namespace circlaw

#endif  // CIRCLAW_LEMMAS_HPP
