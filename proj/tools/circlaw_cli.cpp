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

// circlaw: command-line front end for the non-central circular law
// experiments. Exit codes: 0 success, 1 invalid input or I/O failure,
// 2 numerical-consistency failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "circlaw/config.hpp"
#include "circlaw/diagnostics.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/error.hpp"
#include "circlaw/harness.hpp"
#include "circlaw/lemmas.hpp"
#include "circlaw/measures.hpp"
#include "circlaw/spectral.hpp"

namespace {

using namespace circlaw;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInconsistent = 2;

struct CommonFlags {
  std::size_t n = 100;
  std::string dist = "complex-gaussian";
  std::uint64_t seed = 0;
  std::string out;
  std::string perturbation = "all-ones";
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_perturbation) {
  flags.perturbation = default_perturbation;
  cmd->add_option("--n", flags.n, "Matrix dimension")->capture_default_str();
  cmd->add_option("--dist", flags.dist, "Entry distribution")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Sample seed")->capture_default_str();
  cmd->add_option("--perturbation", flags.perturbation, "zero or all-ones")->capture_default_str();
}

PerturbationSpec perturbation_from_flag(const std::string& kind) {
  PerturbationSpec spec;
  spec.kind = PerturbationSpec::parse_kind(kind);
  if (spec.kind == PerturbationSpec::Kind::low_rank || spec.kind == PerturbationSpec::Kind::file) {
    throw Error(Errc::validation, "--perturbation " + kind + " needs a config file");
  }
  return spec;
}

AssembledPair pair_from_flags(const CommonFlags& flags) {
  const auto dist = EntryDistribution::parse(flags.dist);
  const MatrixSample x = sample_matrix(dist, flags.n, flags.seed);
  return assemble(x, build_perturbation(perturbation_from_flag(flags.perturbation), flags.n));
}

std::string fmt_complex(Complex z) {
  std::ostringstream out;
  out << std::setprecision(10) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag())
      << "i";
  return out.str();
}

int cmd_sample(const CommonFlags& flags) {
  const auto dist = EntryDistribution::parse(flags.dist);
  const MatrixSample x = sample_matrix(dist, flags.n, flags.seed);
  const double count = static_cast<double>(x.entries.size());
  const Complex mean = x.entries.sum() / count;
  const double second = x.entries.squaredNorm() / count;
  std::cout << "sample n=" << flags.n << " dist=" << dist.name() << " seed=" << flags.seed << "\n"
            << "  mean      " << fmt_complex(mean) << "\n"
            << "  E|X|^2    " << second << "\n";
  if (!flags.out.empty()) {
    write_matrix_csv(flags.out, x.entries);
    std::cout << "  wrote " << flags.out << "\n";
  }
  return kExitOk;
}

int cmd_spectrum(const CommonFlags& flags) {
  const AssembledPair pair = pair_from_flags(flags);
  const SpectralSummary s = summarize(pair.b_matrix);
  const WeylCheck w = check_weyl(pair.b_matrix);
  std::cout << "spectrum of (X + M)/sqrt(n), n=" << flags.n << " M=" << flags.perturbation << "\n"
            << "  spectral radius  " << s.spectral_radius << "\n"
            << "  lambda_1         " << fmt_complex(s.eigenvalues.front()) << "\n"
            << "  s_1, s_n         " << s.operator_norm << ", " << s.singular_values.back() << "\n"
            << "  log|det|         " << (s.singular ? std::string("singular") : std::to_string(s.log_abs_det)) << "\n"
            << "  ||B||^2          " << s.hs_norm_sq << "\n"
            << "  Weyl             " << w.lhs << " <= " << w.rhs << (w.holds ? "  ok" : "  VIOLATED") << "\n";
  if (!flags.out.empty()) {
    std::ofstream out(flags.out);
    if (!out) throw Error(Errc::io, "cannot write " + flags.out);
    out << "k,re,im,modulus\n" << std::setprecision(17);
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      out << k + 1 << ',' << s.eigenvalues[k].real() << ',' << s.eigenvalues[k].imag() << ','
          << std::abs(s.eigenvalues[k]) << '\n';
    }
    std::cout << "  wrote " << flags.out << "\n";
  }
  return w.holds ? kExitOk : kExitInconsistent;
}

int cmd_circular_law(const CommonFlags& flags) {
  const AssembledPair pair = pair_from_flags(flags);
  std::vector<Complex> lambda = eigenvalues(pair.b_matrix);
  const Complex top = lambda.front();
  const bool exclude = pair.perturbation_rank >= 1 && lambda.size() > 1;
  if (exclude) lambda.erase(lambda.begin());
  const EmpiricalMeasure2D esd(std::move(lambda));
  std::cout << "circular law, n=" << flags.n << " dist=" << flags.dist << " M=" << flags.perturbation
            << "\n"
            << "  radial KS   " << radial_disk_distance(esd) << "\n"
            << "  angular KS  " << angular_disk_distance(esd) << "\n"
            << "  |lambda_1|  " << std::abs(top) << (exclude ? "  (excluded outlier)" : "") << "\n";
  return kExitOk;
}

int cmd_constant_case(const CommonFlags& flags) {
  const ConstantCase c = constant_case(flags.n, EntryDistribution::parse(flags.dist), flags.seed);
  const double root_n = std::sqrt(static_cast<double>(flags.n));
  std::cout << "constant case, n=" << flags.n << " dist=" << flags.dist << " seed=" << flags.seed << "\n"
            << "  lambda1       " << fmt_complex(c.lambda1) << "   |lambda1 - sqrt(n)| = "
            << std::abs(c.lambda1 - root_n) << "\n"
            << "  lambda2       " << fmt_complex(c.lambda2) << "   |lambda2| = " << std::abs(c.lambda2) << "\n"
            << "  s1_central    " << c.s1_central << "\n";
  return kExitOk;
}

int cmd_verify_lemmas(std::size_t trials, std::uint64_t seed) {
  const LemmaSuiteReport r = run_lemma_suite(trials, seed);
  std::cout << "lemma suite: " << r.trials << " trials, seed " << seed << "\n"
            << "  Weyl inequality          " << r.weyl_violations << " violations (max lhs/rhs "
            << r.worst_weyl_ratio << ")\n"
            << "  IBP identity             " << r.ibp_identity_violations
            << " violations (max residual " << r.worst_ibp_residual << ")\n"
            << "  IBP bound                " << r.ibp_bound_violations << " violations\n"
            << "  rank inequality          " << r.rank_violations << " violations (max ks - bound "
            << r.worst_rank_margin << ")\n"
            << "  Kolmogorov vs brute force " << r.ks_oracle_mismatches << " mismatches\n"
            << "total: " << r.total_violations() << " violations\n";
  return r.total_violations() == 0 ? kExitOk : kExitInconsistent;
}

void print_timings(const RunReport& report) {
  std::cout << "  timings (s):";
  for (const auto& t : report.timings) std::cout << ' ' << t.stage << '=' << t.seconds;
  std::cout << "\n";
}

int cmd_delta_scan(const std::optional<std::string>& config_path, const CommonFlags& flags,
                   double step, unsigned workers) {
  ExperimentConfig config;
  if (config_path) {
    config = load_config(*config_path);
  } else {
    config.name = "delta-scan";
    config.dims = {flags.n};
    config.distribution = EntryDistribution::parse(flags.dist);
    config.perturbation = perturbation_from_flag(flags.perturbation);
    config.z_grid = ZGrid{{-2.0, 2.0}, {-2.0, 2.0}, step};
    config.master_seed = flags.seed;
    config.output_dir = ".";
  }
  if (!flags.out.empty()) config.output_dir = flags.out;
  validate_config(config);
  ensure_writable_dir(config.output_dir);

  RunReport report;
  report.config = config;
  for (std::size_t n : config.dims) {
    for (std::size_t r = 0; r < config.replicates; ++r) {
      for (const auto& d : delta_scan(experiment_pair(config, n, r), config.z_grid, workers)) {
        report.delta_rows.push_back({n, r, d});
      }
    }
  }
  const auto path = config.output_dir / "delta.csv";
  std::ofstream(path, std::ios::binary) << delta_csv(report);

  double worst = 0.0;
  for (const auto& row : report.delta_rows) {
    if (!row.diag.singular_flag) worst = std::max(worst, std::abs(row.diag.delta));
  }
  std::cout << "delta scan: " << report.delta_rows.size() << " points, "
            << report.flagged_points() << " singular-flagged, max |delta| " << worst << ", "
            << report.inconsistent_points() << " inconsistent\n"
            << "  wrote " << path.string() << "\n";
  return report.inconsistent_points() == 0 ? kExitOk : kExitInconsistent;
}

int cmd_run(const std::string& config_path, const CommonFlags& flags, bool seed_set, bool n_set,
            bool dist_set, unsigned workers) {
  ExperimentConfig config = load_config(config_path);
  if (seed_set) config.master_seed = flags.seed;
  if (n_set) config.dims = {flags.n};
  if (dist_set) config.distribution = EntryDistribution::parse(flags.dist);
  if (!flags.out.empty()) config.output_dir = flags.out;

  const RunReport report = run_experiment(config, RunOptions{workers, true});
  std::cout << "run '" << config.name << "': " << config.dims.size() << " dims x "
            << config.replicates << " replicates, " << report.delta_rows.size() << " delta rows\n";
  for (const auto& st : report.scaling.per_dim) {
    std::cout << "  n=" << st.n << "  median|delta|=" << st.median_abs_delta
              << "  median ks=" << st.median_ks << "  min s_min=" << st.min_smin
              << "  max s_max=" << st.max_smax << "\n";
  }
  std::cout << "  exponents: a_hat=" << report.scaling.a_hat << " b_hat=" << report.scaling.b_hat
            << " eps_hat=" << report.scaling.eps_hat << "\n"
            << "  singular-flagged points: " << report.flagged_points()
            << ", inconsistent points: " << report.inconsistent_points() << "\n"
            << "  wrote report.json, delta.csv, disk.csv, scaling.csv to "
            << config.output_dir.string() << "\n";
  print_timings(report);
  return report.inconsistent_points() == 0 ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-n diagnostics for the circular law of non-central random matrices"};
  app.require_subcommand(1);

  CommonFlags sample_flags, spectrum_flags, delta_flags, law_flags, constant_flags, run_flags;

  auto* sample = app.add_subcommand("sample", "Draw a standardized i.i.d. matrix");
  add_common(sample, sample_flags, "zero");
  sample->add_option("--out", sample_flags.out, "Write the matrix as j,k,re,im CSV");

  auto* spectrum = app.add_subcommand("spectrum", "Spectral summary of (X + M)/sqrt(n)");
  add_common(spectrum, spectrum_flags, "zero");
  spectrum->add_option("--out", spectrum_flags.out, "Write eigenvalues as CSV");

  auto* delta = app.add_subcommand("delta-scan", "Log-determinant comparison over a z-grid");
  add_common(delta, delta_flags, "all-ones");
  std::optional<std::string> delta_config;
  double delta_step = 1.0;
  unsigned delta_workers = 1;
  delta->add_option("--config", delta_config, "Experiment config (JSON)");
  delta->add_option("--step", delta_step, "Grid step on [-2,2]^2 when no config is given")
      ->capture_default_str();
  delta->add_option("--workers", delta_workers, "Worker threads")->capture_default_str();
  delta->add_option("--out", delta_flags.out, "Output directory for delta.csv");

  auto* law = app.add_subcommand("circular-law", "Distance of the ESD to the uniform disk law");
  add_common(law, law_flags, "all-ones");

  auto* constant = app.add_subcommand("constant-case", "Outlier of the all-ones perturbation");
  constant_flags.n = 400;
  add_common(constant, constant_flags, "all-ones");

  auto* lemmas = app.add_subcommand("verify-lemmas", "Randomized checks of the exact inequalities");
  std::size_t trials = 1000;
  std::uint64_t lemma_seed = 0;
  lemmas->add_option("--trials", trials, "Number of trials")->capture_default_str();
  lemmas->add_option("--seed", lemma_seed, "Seed")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run a full experiment from a config");
  std::string run_config;
  unsigned run_workers = 1;
  run->add_option("--config", run_config, "Experiment config (JSON)")->required();
  auto* run_seed = run->add_option("--seed", run_flags.seed, "Override master_seed");
  auto* run_n = run->add_option("--n", run_flags.n, "Override dims with a single n");
  auto* run_dist = run->add_option("--dist", run_flags.dist, "Override distribution");
  run->add_option("--out", run_flags.out, "Override output_dir");
  run->add_option("--workers", run_workers, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*sample) return cmd_sample(sample_flags);
    if (*spectrum) return cmd_spectrum(spectrum_flags);
    if (*delta) return cmd_delta_scan(delta_config, delta_flags, delta_step, delta_workers);
    if (*law) return cmd_circular_law(law_flags);
    if (*constant) return cmd_constant_case(constant_flags);
    if (*lemmas) return cmd_verify_lemmas(trials, lemma_seed);
    if (*run) {
      return cmd_run(run_config, run_flags, run_seed->count() > 0, run_n->count() > 0,
                     run_dist->count() > 0, run_workers);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == Errc::consistency ? kExitInconsistent : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
