// Copyright 2026 The imd Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "imd/cli/config.h"

#include <charconv>
#include <cmath>
#include <string>

#include "imd/errors.h"

namespace imd::cli {

void Validate(const RunConfig& config) {
  if (config.problem.empty() == !config.problem_inline.has_value()) {
    throw ArgumentError(
        "problem: give exactly one of a built-in name or problem_inline");
  }
  if (!config.problem.empty()) {
    try {
      FindBuiltin(config.problem);
    } catch (const ArgumentError& e) {
      throw ArgumentError(std::string("problem: ") + e.what());
    }
  }
  if (!(config.eps > 0.0) || !std::isfinite(config.eps)) {
    throw ArgumentError("eps: must be a finite number > 0, got " +
                        FormatDouble(config.eps));
  }
  if (!(config.delta_noise >= 0.0) || !std::isfinite(config.delta_noise)) {
    throw ArgumentError("delta_noise: must be finite and >= 0, got " +
                        FormatDouble(config.delta_noise));
  }
  if (!(config.constraint_delta_noise >= 0.0) ||
      !std::isfinite(config.constraint_delta_noise)) {
    throw ArgumentError("constraint_delta_noise: must be finite and >= 0");
  }
  if (!(config.tolerance >= 0.0) || !std::isfinite(config.tolerance)) {
    throw ArgumentError("tolerance: must be finite and >= 0");
  }
  if (!(config.max_iter_factor >= 1.0) ||
      !std::isfinite(config.max_iter_factor)) {
    throw ArgumentError("max_iter_factor: must be finite and >= 1");
  }
}

ProblemSpec ResolveProblem(const RunConfig& config) {
  if (!config.problem_inline) return FindBuiltin(config.problem);
  ProblemSpec spec = *config.problem_inline;
  if (spec.reference &&
      spec.reference->source == ReferenceSpec::Source::kGridSearch &&
      spec.reference->x.empty()) {
    const int resolution = spec.reference->grid_resolution;
    const GridOptimum opt = GridSearchOptimum(spec, resolution);
    spec.reference = ReferenceSpec{opt.x.values(), opt.f,
                                   ReferenceSpec::Source::kGridSearch,
                                   resolution, opt.error_bound};
  }
  return spec;
}

OracleOptions MakeOracleOptions(const RunConfig& config) {
  OracleOptions o;
  o.objective_delta = config.delta_noise;
  o.constraint_delta = config.constraint_delta_noise;
  o.mode = config.oracle;
  o.seed = config.seed;
  return o;
}

std::string_view ToString(OracleOptions::Mode mode) {
  return mode == OracleOptions::Mode::kPerturbed ? "perturbed" : "inexact_max";
}

OracleOptions::Mode ParseOracleMode(std::string_view name) {
  if (name == "perturbed") return OracleOptions::Mode::kPerturbed;
  if (name == "inexact_max") return OracleOptions::Mode::kInexactMax;
  throw ArgumentError("oracle: unknown mode '" + std::string(name) +
                      "' (perturbed|inexact_max)");
}

std::string RunName(const RunConfig& config) {
  const std::string problem = config.problem_inline
                                  ? config.problem_inline->name
                                  : config.problem;
  return (problem.empty() ? std::string("inline") : problem) + "_" +
         std::string(ToString(config.algorithm)) + "_eps" +
         FormatDouble(config.eps) + "_delta" + FormatDouble(config.delta_noise) +
         "_seed" + std::to_string(config.seed);
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace imd::cli
