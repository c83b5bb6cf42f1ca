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


// A second, self-contained implementation of the three solver variants for
// exact oracles. It shares no code with the library beyond the data types of
// the problem description, and is kept in the same floating-point operation
// order so that traces can be compared bit for bit.

#ifndef IMD_TESTS_SUPPORT_REFERENCE_LOOP_H_
#define IMD_TESTS_SUPPORT_REFERENCE_LOOP_H_

#include <optional>
#include <vector>

#include "imd/problems.h"
#include "imd/solver.h"

namespace imd::testing {

struct RefStep {
  long k = 0;
  bool productive = false;
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> direction;
  double sub_norm = 0.0;
  double g_value = 0.0;
  double g_sub_norm = 0.0;
  double f_value = 0.0;
  std::optional<double> bregman_to_ref;
};

struct RefRun {
  std::vector<RefStep> steps;
  std::vector<double> final_x;
  std::vector<double> output;
  long productive = 0;
  long nonproductive = 0;
  bool zero_subgradient_stop = false;
};

// Exact-oracle run; throws std::runtime_error past `max_iterations`.
RefRun ReferenceSolve(const ProblemSpec& spec, Variant variant, double eps,
                      long max_iterations = 1000000);

}  // namespace imd::testing

#endif  // IMD_TESTS_SUPPORT_REFERENCE_LOOP_H_
