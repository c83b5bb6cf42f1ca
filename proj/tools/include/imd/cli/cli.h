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


#ifndef IMD_CLI_CLI_H_
#define IMD_CLI_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "imd/analysis.h"
#include "imd/cli/config.h"
#include "imd/cli/json_io.h"
#include "imd/problems.h"
#include "imd/solver.h"

namespace imd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertificateFailure = 2;

struct RunOutcome {
  RunConfig config;
  ProblemSpec spec;
  Problem problem;
  SolveResult result;
  std::vector<Certificate> certificates;
  CertificateSummary summary;
  // Only CriterionMet and ZeroObjectiveSubgradient are certified exits.
  bool certified_exit = false;

  int ExitCode() const {
    return summary.failed == 0 && certified_exit ? kExitOk
                                                 : kExitCertificateFailure;
  }
};

// The enabled certificate suite for a finished run.
std::vector<Certificate> RunCertificates(const RunConfig& config,
                                         const ProblemSpec& spec,
                                         const Problem& problem,
                                         const SolveResult& result);

// Validate, build, solve and certify. No file I/O.
RunOutcome Execute(const RunConfig& config);

// trace.csv, steps.csv and report.json under `dir` (created if missing).
void WriteRun(const RunOutcome& outcome, const std::filesystem::path& dir);
Json Report(const RunOutcome& outcome);

// Explicit out_dir, else $IMD_OUT_DIR/<run name>, else imd-out/<run name>.
std::filesystem::path ResolveRunDir(const RunConfig& config);
// Explicit root, else $IMD_OUT_DIR, else imd-out.
std::filesystem::path ResolveOutRoot(const std::string& explicit_root);

// Entry point of the `imd` binary.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace imd::cli

#endif  // IMD_CLI_CLI_H_
