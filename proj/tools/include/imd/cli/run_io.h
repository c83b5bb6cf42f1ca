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


#ifndef IMD_CLI_RUN_IO_H_
#define IMD_CLI_RUN_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "imd/solver.h"

namespace imd::cli {

inline constexpr std::string_view kTraceHeader =
    "k,productive,h,sub_norm,delta,g_value,f_estimate,bregman_to_ref";

// One row per iteration; floats in shortest round-trip form, empty
// bregman_to_ref when the problem has no reference.
std::string TraceCsv(const SolveResult& result);

// Per-step data the certificates need beyond the trace:
// k,f_delta,g_delta,g_sub_norm,x0..x{n-1},p0..p{n-1}
std::string StepsCsv(const SolveResult& result);

// Rebuilds result.trace from the two files. Throws ArgumentError on
// malformed input.
std::vector<IterationRecord> ReadTrace(std::string_view trace_csv,
                                       std::string_view steps_csv);

// Write to a sibling temporary, then rename over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace imd::cli

#endif  // IMD_CLI_RUN_IO_H_
