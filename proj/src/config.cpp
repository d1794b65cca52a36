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

#include "circlaw/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "circlaw/error.hpp"
#include "circlaw/spectral.hpp"
#include "json.hpp"

namespace circlaw {
namespace {

using nlohmann::json;

std::size_t axis_count(const std::array<double, 2>& range, double step) {
  return static_cast<std::size_t>(std::floor((range[1] - range[0]) / step + 1e-9)) + 1;
}

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errors) {
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      errors.push_back("unknown key \"" + item.key() + "\"" + (where.empty() ? "" : " in " + where));
    }
  }
}

// Reads object[key] into out, recording a message instead of throwing.
template <class T>
bool read(const json& object, const char* key, T& out, std::vector<std::string>& errors,
          bool required = true) {
  const auto it = object.find(key);
  if (it == object.end()) {
    if (required) errors.push_back(std::string("missing key \"") + key + "\"");
    return false;
  }
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) throw json::type_error::create(302, "unsigned", nullptr);
    } else if constexpr (std::is_same_v<T, std::vector<std::size_t>>) {
      if (!it->is_array()) throw json::type_error::create(302, "array", nullptr);
      for (const auto& e : *it) {
        if (!e.is_number_unsigned()) throw json::type_error::create(302, "unsigned", nullptr);
      }
    }
    out = it->template get<T>();
    return true;
  } catch (const json::exception&) {
    errors.push_back(std::string("key \"") + key + "\" has the wrong type");
    return false;
  }
}

json complex_vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

ComplexVector complex_vector_from_json(const json& j) {
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j.at(i);
    if (e.is_number()) {
      v[static_cast<Eigen::Index>(i)] = Complex(e.get<double>(), 0.0);
    } else {
      if (!e.is_array() || e.size() != 2) throw json::type_error::create(302, "complex entry", nullptr);
      v[static_cast<Eigen::Index>(i)] = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return v;
}

PerturbationSpec parse_perturbation(const json& j, std::vector<std::string>& errors) {
  PerturbationSpec spec;
  if (!j.is_object()) {
    errors.push_back("perturbation must be an object");
    return spec;
  }
  check_keys(j,
             {"kind", "scale", "left_factors", "right_factors", "path", "rank_budget",
              "hs_budget_coefficient"},
             "perturbation", errors);
  std::string kind;
  if (!read(j, "kind", kind, errors)) return spec;
  try {
    spec.kind = PerturbationSpec::parse_kind(kind);
  } catch (const Error& e) {
    errors.push_back(e.what());
    return spec;
  }

  const auto forbid = [&](const char* key, PerturbationSpec::Kind owner) {
    if (j.contains(key) && spec.kind != owner) {
      errors.push_back(std::string("key \"") + key + "\" does not apply to perturbation kind " + kind);
    }
  };
  forbid("scale", PerturbationSpec::Kind::all_ones);
  forbid("left_factors", PerturbationSpec::Kind::low_rank);
  forbid("right_factors", PerturbationSpec::Kind::low_rank);
  forbid("path", PerturbationSpec::Kind::file);

  if (spec.kind == PerturbationSpec::Kind::all_ones) read(j, "scale", spec.scale, errors, false);
  if (spec.kind == PerturbationSpec::Kind::low_rank) {
    for (const char* key : {"left_factors", "right_factors"}) {
      auto& target = key[0] == 'l' ? spec.left_factors : spec.right_factors;
      const auto it = j.find(key);
      if (it == j.end()) {
        errors.push_back(std::string("missing key \"") + key + "\" for low-rank perturbation");
        continue;
      }
      try {
        if (!it->is_array()) throw json::type_error::create(302, "factors", nullptr);
        for (const auto& factor : *it) target.push_back(complex_vector_from_json(factor));
      } catch (const json::exception&) {
        errors.push_back(std::string("key \"") + key +
                         "\" must be a list of vectors of [re, im] pairs");
      }
    }
  }
  if (spec.kind == PerturbationSpec::Kind::file) {
    std::string path;
    if (read(j, "path", path, errors)) spec.path = path;
  }
  std::size_t budget = 0;
  if (read(j, "rank_budget", budget, errors, false)) spec.rank_budget = budget;
  double coefficient = 0.0;
  if (read(j, "hs_budget_coefficient", coefficient, errors, false)) {
    spec.hs_budget_coefficient = coefficient;
  }
  return spec;
}

std::vector<std::string> config_errors(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  if (c.name.empty()) errors.push_back("name must be nonempty");
  if (c.dims.empty()) errors.push_back("dims must be nonempty");
  const std::size_t cap = max_dense_dim();
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    if (c.dims[i] == 0) errors.push_back("dims must be positive");
    if (c.dims[i] > cap) {
      errors.push_back("dim " + std::to_string(c.dims[i]) + " exceeds the dense cap " +
                       std::to_string(cap));
    }
    if (i > 0 && c.dims[i] <= c.dims[i - 1]) {
      errors.push_back("dims must be strictly increasing");
    }
  }
  if (c.replicates == 0) errors.push_back("replicates must be >= 1");
  if (!std::isfinite(c.reference_exponent_b0) || c.reference_exponent_b0 <= 0.0) {
    errors.push_back("reference_exponent_b0 must be a positive number");
  }
  if (c.output_dir.empty()) errors.push_back("output_dir must be nonempty");
  const auto& g = c.z_grid;
  if (!(std::isfinite(g.step) && g.step > 0.0)) errors.push_back("z_grid.step must be positive");
  for (const auto* r : {&g.re_range, &g.im_range}) {
    if (!(std::isfinite((*r)[0]) && std::isfinite((*r)[1]) && (*r)[0] <= (*r)[1])) {
      errors.push_back("z_grid ranges must be finite with lo <= hi");
      break;
    }
  }
  const auto& p = c.perturbation;
  if (!std::isfinite(p.scale)) errors.push_back("perturbation.scale must be finite");
  if (p.hs_budget_coefficient && !(*p.hs_budget_coefficient >= 0.0)) {
    errors.push_back("perturbation.hs_budget_coefficient must be >= 0");
  }
  if (p.kind == PerturbationSpec::Kind::low_rank) {
    if (p.left_factors.size() != p.right_factors.size()) {
      errors.push_back("perturbation needs as many left_factors as right_factors");
    }
    if (p.left_factors.empty()) errors.push_back("low-rank perturbation needs k >= 1 factors");
  }
  if (p.kind == PerturbationSpec::Kind::file && p.path.empty()) {
    errors.push_back("file perturbation needs a path");
  }
  return errors;
}

[[noreturn]] void fail(const std::vector<std::string>& errors) {
  std::string message = "invalid configuration:";
  for (const auto& e : errors) message += "\n  - " + e;
  throw Error(Errc::validation, message);
}

}  // namespace

std::vector<Complex> ZGrid::points() const {
  if (!(std::isfinite(step) && step > 0.0)) throw Error(Errc::validation, "z-grid step must be positive");
  if (!(re_range[0] <= re_range[1]) || !(im_range[0] <= im_range[1])) {
    throw Error(Errc::validation, "z-grid is empty");
  }
  const std::size_t nre = axis_count(re_range, step);
  const std::size_t nim = axis_count(im_range, step);
  std::vector<Complex> out;
  out.reserve(nre * nim);
  for (std::size_t j = 0; j < nre; ++j) {
    for (std::size_t k = 0; k < nim; ++k) {
      out.emplace_back(re_range[0] + static_cast<double>(j) * step,
                       im_range[0] + static_cast<double>(k) * step);
    }
  }
  return out;
}

ZGrid ZGrid::at(Complex z) {
  return ZGrid{{z.real(), z.real()}, {z.imag(), z.imag()}, 1.0};
}

void validate_config(const ExperimentConfig& config) {
  const auto errors = config_errors(config);
  if (!errors.empty()) fail(errors);
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::validation, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::validation, "config must be a JSON object");

  std::vector<std::string> errors;
  check_keys(doc,
             {"name", "dims", "distribution", "perturbation", "z_grid", "replicates",
              "master_seed", "reference_exponent_b0", "output_dir"},
             "", errors);

  ExperimentConfig c;
  read(doc, "name", c.name, errors);
  read(doc, "dims", c.dims, errors);
  std::string dist;
  if (read(doc, "distribution", dist, errors)) {
    try {
      c.distribution = EntryDistribution::parse(dist);
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  if (const auto it = doc.find("perturbation"); it != doc.end()) {
    c.perturbation = parse_perturbation(*it, errors);
  } else {
    errors.push_back("missing key \"perturbation\"");
  }
  if (const auto it = doc.find("z_grid"); it != doc.end()) {
    if (!it->is_object()) {
      errors.push_back("z_grid must be an object");
    } else {
      check_keys(*it, {"re_range", "im_range", "step"}, "z_grid", errors);
      read(*it, "re_range", c.z_grid.re_range, errors);
      read(*it, "im_range", c.z_grid.im_range, errors);
      read(*it, "step", c.z_grid.step, errors);
    }
  }
  read(doc, "replicates", c.replicates, errors);
  read(doc, "master_seed", c.master_seed, errors);
  read(doc, "reference_exponent_b0", c.reference_exponent_b0, errors, false);
  std::string out_dir;
  if (read(doc, "output_dir", out_dir, errors)) c.output_dir = out_dir;

  for (auto& e : config_errors(c)) {
    if (std::find(errors.begin(), errors.end(), e) == errors.end()) errors.push_back(std::move(e));
  }
  if (!errors.empty()) fail(errors);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["dims"] = c.dims;
  doc["distribution"] = c.distribution.name();
  json p;
  p["kind"] = std::string(PerturbationSpec::kind_name(c.perturbation.kind));
  switch (c.perturbation.kind) {
    case PerturbationSpec::Kind::all_ones:
      p["scale"] = c.perturbation.scale;
      break;
    case PerturbationSpec::Kind::low_rank:
      p["left_factors"] = json::array();
      p["right_factors"] = json::array();
      for (const auto& v : c.perturbation.left_factors) p["left_factors"].push_back(complex_vector_to_json(v));
      for (const auto& v : c.perturbation.right_factors) p["right_factors"].push_back(complex_vector_to_json(v));
      break;
    case PerturbationSpec::Kind::file:
      p["path"] = c.perturbation.path.string();
      break;
    case PerturbationSpec::Kind::zero:
      break;
  }
  if (c.perturbation.rank_budget) p["rank_budget"] = *c.perturbation.rank_budget;
  if (c.perturbation.hs_budget_coefficient) {
    p["hs_budget_coefficient"] = *c.perturbation.hs_budget_coefficient;
  }
  doc["perturbation"] = p;
  doc["z_grid"] = {{"re_range", c.z_grid.re_range},
                   {"im_range", c.z_grid.im_range},
                   {"step", c.z_grid.step}};
  doc["replicates"] = c.replicates;
  doc["master_seed"] = c.master_seed;
  doc["reference_exponent_b0"] = c.reference_exponent_b0;
  doc["output_dir"] = c.output_dir.string();
  return doc.dump(2);
}

}  // namespace circlaw
