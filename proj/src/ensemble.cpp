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

#include "circlaw/ensemble.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "circlaw/error.hpp"
#include "circlaw/random.hpp"
#include "circlaw/spectral.hpp"
#include "format.hpp"

namespace circlaw {
namespace {

constexpr struct {
  EntryDistribution::Kind kind;
  std::string_view name;
} kDistributionNames[] = {
    {EntryDistribution::Kind::complex_gaussian, "complex-gaussian"},
    {EntryDistribution::Kind::real_gaussian, "real-gaussian"},
    {EntryDistribution::Kind::rademacher, "rademacher"},
    {EntryDistribution::Kind::complex_rademacher, "complex-rademacher"},
    {EntryDistribution::Kind::centered_bernoulli, "centered-bernoulli"},
    {EntryDistribution::Kind::centered_uniform, "centered-uniform"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, const std::string& context) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(Errc::validation, context + ": cannot parse number '" + t + "'");
  }
  return v;
}

using detail::shortest;

}  // namespace

EntryDistribution EntryDistribution::parse(std::string_view name) {
  for (const auto& entry : kDistributionNames) {
    if (name == entry.name) return EntryDistribution{entry.kind, 0.5};
  }
  constexpr std::string_view prefix = "centered-bernoulli(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const auto inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    const double p = parse_double(inner, "centered-bernoulli");
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(Errc::validation, "centered-bernoulli: p must lie in (0,1), got " + shortest(p));
    }
    return EntryDistribution{Kind::centered_bernoulli, p};
  }
  throw Error(Errc::validation, "unknown distribution '" + std::string(name) + "'");
}

std::string EntryDistribution::name() const {
  if (kind == Kind::centered_bernoulli) return "centered-bernoulli(" + shortest(p) + ")";
  for (const auto& entry : kDistributionNames) {
    if (entry.kind == kind) return std::string(entry.name);
  }
  return "unknown";
}

Complex EntryDistribution::draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t row,
                                std::uint64_t col) const {
  const CounterRng rng(seed, stream);
  const auto u = [&](std::uint64_t c) { return rng.uniform(row, col, c); };
  const auto sign = [&](std::uint64_t c) { return (rng.bits(row, col, c) >> 63) ? 1.0 : -1.0; };
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  switch (kind) {
    case Kind::complex_gaussian:
    case Kind::real_gaussian: {
      // Box-Muller on two uniforms from the entry's own counter stream.
      const double radius = std::sqrt(-2.0 * std::log(u(0)));
      const double angle = 2.0 * std::numbers::pi * u(1);
      if (kind == Kind::real_gaussian) return {radius * std::cos(angle), 0.0};
      return {radius * std::cos(angle) * inv_sqrt2, radius * std::sin(angle) * inv_sqrt2};
    }
    case Kind::rademacher:
      return {sign(0), 0.0};
    case Kind::complex_rademacher:
      return {sign(0) * inv_sqrt2, sign(1) * inv_sqrt2};
    case Kind::centered_bernoulli: {
      const double beta = u(0) < p ? 1.0 : 0.0;
      return {(beta - p) / std::sqrt(p * (1.0 - p)), 0.0};
    }
    case Kind::centered_uniform:
      return {std::numbers::sqrt3 * (2.0 * u(0) - 1.0), 0.0};
  }
  return {};
}

std::optional<std::size_t> PerturbationSpec::effective_rank_budget() const {
  if (rank_budget) return rank_budget;
  switch (kind) {
    case Kind::zero: return 0;
    case Kind::all_ones: return scale == 0.0 ? 0 : 1;
    case Kind::low_rank: return left_factors.size();
    case Kind::file: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> PerturbationSpec::effective_hs_coefficient() const {
  if (hs_budget_coefficient) return hs_budget_coefficient;
  if (kind == Kind::all_ones) return scale * scale;
  if (kind == Kind::zero) return 0.0;
  return std::nullopt;
}

PerturbationSpec::Kind PerturbationSpec::parse_kind(std::string_view name) {
  if (name == "zero") return Kind::zero;
  if (name == "all-ones") return Kind::all_ones;
  if (name == "low-rank") return Kind::low_rank;
  if (name == "file") return Kind::file;
  throw Error(Errc::validation, "unknown perturbation kind '" + std::string(name) + "'");
}

std::string_view PerturbationSpec::kind_name(Kind kind) {
  switch (kind) {
    case Kind::zero: return "zero";
    case Kind::all_ones: return "all-ones";
    case Kind::low_rank: return "low-rank";
    case Kind::file: return "file";
  }
  return "unknown";
}

bool operator==(const PerturbationSpec& lhs, const PerturbationSpec& rhs) {
  const auto same_vectors = [](const std::vector<ComplexVector>& x,
                               const std::vector<ComplexVector>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].size() != y[i].size() || x[i] != y[i]) return false;
    }
    return true;
  };
  return lhs.kind == rhs.kind && lhs.scale == rhs.scale &&
         same_vectors(lhs.left_factors, rhs.left_factors) &&
         same_vectors(lhs.right_factors, rhs.right_factors) && lhs.path == rhs.path &&
         lhs.rank_budget == rhs.rank_budget &&
         lhs.hs_budget_coefficient == rhs.hs_budget_coefficient;
}

MatrixSample sample_matrix(const EntryDistribution& dist, std::size_t n, std::uint64_t seed,
                           std::uint64_t stream) {
  if (n == 0) throw Error(Errc::invalid_dimension, "sample_matrix: n must be >= 1");
  MatrixSample out;
  out.dim = n;
  out.seed = seed;
  out.stream = stream;
  out.distribution = dist;
  const auto size = static_cast<Eigen::Index>(n);
  out.entries.resize(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index j = 0; j < size; ++j) {
      out.entries(j, k) = dist.draw(seed, stream, static_cast<std::uint64_t>(j),
                                    static_cast<std::uint64_t>(k));
    }
  }
  return out;
}

ComplexMatrix build_perturbation(const PerturbationSpec& spec, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_dimension, "build_perturbation: n must be >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix m;
  switch (spec.kind) {
    case PerturbationSpec::Kind::zero:
      m = ComplexMatrix::Zero(size, size);
      break;
    case PerturbationSpec::Kind::all_ones:
      m = ComplexMatrix::Constant(size, size, Complex(spec.scale, 0.0));
      break;
    case PerturbationSpec::Kind::low_rank: {
      if (spec.left_factors.size() != spec.right_factors.size()) {
        throw Error(Errc::shape, "low-rank perturbation: " +
                                     std::to_string(spec.left_factors.size()) + " left vs " +
                                     std::to_string(spec.right_factors.size()) + " right factors");
      }
      if (spec.left_factors.size() > n) {
        throw Error(Errc::shape, "low-rank perturbation: k exceeds n");
      }
      m = ComplexMatrix::Zero(size, size);
      for (std::size_t i = 0; i < spec.left_factors.size(); ++i) {
        const auto& u = spec.left_factors[i];
        const auto& v = spec.right_factors[i];
        if (u.size() != size || v.size() != size) {
          throw Error(Errc::shape, "low-rank perturbation: factor " + std::to_string(i) +
                                       " has length " + std::to_string(u.size()) + "/" +
                                       std::to_string(v.size()) + ", expected " +
                                       std::to_string(n));
        }
        m.noalias() += u * v.adjoint();
      }
      break;
    }
    case PerturbationSpec::Kind::file:
      m = read_matrix_csv(spec.path, n);
      break;
  }

  if (const auto budget = spec.effective_rank_budget()) {
    const std::size_t rank = numerical_rank(m);
    if (rank > *budget) {
      throw Error(Errc::budget_violation, "perturbation rank " + std::to_string(rank) +
                                              " exceeds rank budget " + std::to_string(*budget));
    }
  }
  if (const auto c = spec.effective_hs_coefficient()) {
    const double hs = m.squaredNorm();
    const double limit = *c * static_cast<double>(n) * static_cast<double>(n);
    if (hs > limit * (1.0 + 1e-12)) {
      throw Error(Errc::budget_violation, "perturbation ||M||^2 = " + shortest(hs) +
                                              " exceeds c n^2 = " + shortest(limit));
    }
  }
  return m;
}

AssembledPair assemble(const MatrixSample& x, const ComplexMatrix& m) {
  const auto size = static_cast<Eigen::Index>(x.dim);
  if (x.entries.rows() != size || x.entries.cols() != size) {
    throw Error(Errc::shape, "assemble: sample entries do not match its dim");
  }
  if (m.rows() != size || m.cols() != size) {
    throw Error(Errc::shape, "assemble: perturbation is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", sample is " +
                                 std::to_string(x.dim) + "x" + std::to_string(x.dim));
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(x.dim));
  AssembledPair out;
  out.dim = x.dim;
  out.a_matrix = x.entries * inv_sqrt_n;
  out.b_matrix = (x.entries + m) * inv_sqrt_n;
  out.perturbation_rank = numerical_rank(m);
  return out;
}

ComplexMatrix read_matrix_csv(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open perturbation file " + path.string());
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix m = ComplexMatrix::Zero(size, size);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    if (lineno == 1 && t.starts_with('j')) continue;  // header

    std::vector<std::string_view> fields;
    std::string_view rest(t);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (fields.size() != 4) {
      throw Error(Errc::validation, where + ": expected 4 fields j,k,re,im");
    }
    const double j = parse_double(fields[0], where);
    const double k = parse_double(fields[1], where);
    if (j != std::floor(j) || k != std::floor(k) || j < 1 || k < 1) {
      throw Error(Errc::validation, where + ": indices must be positive integers");
    }
    if (j > static_cast<double>(n) || k > static_cast<double>(n)) {
      throw Error(Errc::shape, where + ": index outside a " + std::to_string(n) + "x" +
                                   std::to_string(n) + " matrix");
    }
    const Complex value(parse_double(fields[2], where), parse_double(fields[3], where));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw Error(Errc::invalid_value, where + ": non-finite entry");
    }
    m(static_cast<Eigen::Index>(j) - 1, static_cast<Eigen::Index>(k) - 1) = value;
  }
  return m;
}

void write_matrix_csv(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << "j,k,re,im\n";
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const Complex v = m(j, k);
      if (v == Complex(0.0, 0.0)) continue;
      out << j + 1 << ',' << k + 1 << ',' << shortest(v.real()) << ',' << shortest(v.imag())
          << '\n';
    }
  }
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

}  // namespace circlaw
