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


#ifndef IMD_CLI_CONFIG_H_
#define IMD_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "imd/analysis.h"
#include "imd/problems.h"
#include "imd/solver.h"

namespace imd::cli {

struct CertificateToggles {
  bool lemma1 = true;
  bool steps = true;
  bool terminal = true;
  bool corollary = true;
};

struct RunConfig {
  // Exactly one of `problem` (built-in name) and `problem_inline` is set.
  std::string problem;
  std::optional<ProblemSpec> problem_inline;
  Variant algorithm = Variant::kAdaptive;
  double eps = 0.1;
  // Target delta of the objective oracle.
  double delta_noise = 0.0;
  double constraint_delta_noise = 0.0;
  OracleOptions::Mode oracle = OracleOptions::Mode::kPerturbed;
  std::uint64_t seed = 0;
  // Empty: derived from IMD_OUT_DIR (see ResolveRunDir).
  std::string out_dir;
  CertificateToggles certificates;
  double tolerance = kDefaultCertificateTolerance;
  double max_iter_factor = 50.0;
};

// Throws ArgumentError naming the offending field.
void Validate(const RunConfig& config);

// The problem the config refers to; grid references of inline problems
// are resolved here.
ProblemSpec ResolveProblem(const RunConfig& config);
OracleOptions MakeOracleOptions(const RunConfig& config);

std::string_view ToString(OracleOptions::Mode mode);
OracleOptions::Mode ParseOracleMode(std::string_view name);

// "<problem>_<algorithm>_eps<eps>_delta<delta>_seed<seed>".
std::string RunName(const RunConfig& config);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

}  // namespace imd::cli

#endif  // IMD_CLI_CONFIG_H_
