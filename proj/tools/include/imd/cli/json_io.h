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


#ifndef IMD_CLI_JSON_IO_H_
#define IMD_CLI_JSON_IO_H_

#include <json.hpp>

#include "imd/analysis.h"
#include "imd/cli/config.h"
#include "imd/problems.h"

namespace imd::cli {

using Json = nlohmann::ordered_json;

// Problem specs:
//   {"name": ..., "dimension": 2,
//    "objective": {"kind": "l1_distance", "center": [1, 1]},
//    "constraints": [{"kind": "affine", "a": [0, 1], "b": -0.5}],
//    "setup": {"kind": "euclidean_box", "lower": [...], "upper": [...]},
//    "m_g": 1, "theta0_sq": 1,
//    "reference": {"x": [1, 1], "f": 0} | {"source": "grid", "grid_resolution": 201},
//    "grad_at_star_norm": 1}
Json ToJson(const FunctionSpec& spec);
Json ToJson(const ProblemSpec& spec);
FunctionSpec FunctionSpecFromJson(const Json& j);
ProblemSpec ProblemSpecFromJson(const Json& j);

// Missing keys keep their value in `base`. Unknown keys are rejected.
RunConfig RunConfigFromJson(const Json& j, const RunConfig& base = {});
Json ToJson(const RunConfig& config);

Json ToJson(const Certificate& c);

}  // namespace imd::cli

#endif  // IMD_CLI_JSON_IO_H_
