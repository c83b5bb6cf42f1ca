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


#include <cstdio>

#include "imd/analysis.h"
#include "imd/problems.h"
#include "imd/solver.h"

int main() {
  const imd::Problem p = imd::BuildProblem(imd::FindBuiltin("p7-ball-linear"));
  const imd::SolveResult r = imd::SolveAdaptive(p, 0.2);
  const imd::CertificateSummary s =
      imd::Summarize(imd::CheckTerminalGuarantees(r, p));
  std::printf("iterations=%ld passed=%ld failed=%ld\n", r.iterations, s.passed,
              s.failed);
  return s.failed == 0 && s.passed > 0 ? 0 : 1;
}
