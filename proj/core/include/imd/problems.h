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

#ifndef IMD_PROBLEMS_H_
#define IMD_PROBLEMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imd/oracle.h"
#include "imd/solver.h"

namespace imd {

// Data description of a built-in function family; `scale` multiplies the
// whole function.
struct FunctionSpec {
  enum class Kind {
    kL1Distance,           // ||x - center||_1
    kLinfDistance,         // ||x - center||_inf + b
    kAffine,               // <a, x> + b
    kHalfSquaredDistance,  // 1/2 ||x - center||_2^2
    kConstant,             // b
    kMaxAffine,            // max_i <rows_i, x> + offsets_i
    kMaxQuadratic,         // max_i curvatures_i/2 ||x - rows_i||^2 + offsets_i
  };
  Kind kind = Kind::kConstant;
  std::vector<double> center;
  std::vector<double> a;
  double b = 0.0;
  std::vector<std::vector<double>> rows;
  std::vector<double> offsets;
  std::vector<double> curvatures;
  double scale = 1.0;
};

std::string_view ToString(FunctionSpec::Kind kind);
FunctionSpec::Kind ParseFunctionKind(std::string_view name);

struct SetupSpec {
  enum class Kind { kEuclideanBox, kEuclideanBall, kEntropySimplex };
  Kind kind = Kind::kEuclideanBox;
  std::vector<double> lower;   // box
  std::vector<double> upper;   // box
  std::vector<double> center;  // ball
  double radius = 1.0;         // ball
  std::optional<std::vector<double>> anchor;  // Euclidean prox anchor
};

std::string_view ToString(SetupSpec::Kind kind);
SetupSpec::Kind ParseSetupKind(std::string_view name);

struct ReferenceSpec {
  enum class Source { kAnalytic, kGridSearch };
  std::vector<double> x;
  double f = 0.0;
  Source source = Source::kAnalytic;
  int grid_resolution = 0;  // kGridSearch
  double error_bound = 0.0;
};

struct ProblemSpec {
  std::string name;
  std::string description;
  std::size_t dimension = 0;
  FunctionSpec objective;
  std::vector<FunctionSpec> constraints;
  SetupSpec setup;
  double m_g = 1.0;
  double theta0_sq = 1.0;
  std::optional<ReferenceSpec> reference;
  // Dual norm of a subgradient at x*, for the smooth-max bound.
  std::optional<double> grad_at_star_norm;
};

ProximalSetup BuildSetup(const SetupSpec& spec, std::size_t dimension);

// Exact oracle with a dual-norm Lipschitz bound over Q.
Oracle BuildExactOracle(const FunctionSpec& spec, const ProximalSetup& setup);

struct OracleOptions {
  enum class Mode {
    kPerturbed,   // exact vector + bounded dual-norm noise
    kInexactMax,  // delta-admissible component of a max-type objective
  };
  // Target delta of the objective / constraint oracles. For kPerturbed the
  // noise dual norm is delta / diam(Q).
  double objective_delta = 0.0;
  double constraint_delta = 0.0;
  Mode mode = Mode::kPerturbed;
  std::uint64_t seed = 0;
};

// Perturbed constraints raise M_g by the noise dual norm.
Problem BuildProblem(const ProblemSpec& spec, const OracleOptions& options = {});

// Built-in benchmark problems. The grid-referenced entries run their grid
// search on first use.
const std::vector<ProblemSpec>& BuiltinCatalog();
// Throws ArgumentError for an unknown name.
const ProblemSpec& FindBuiltin(std::string_view name);

struct GridOptimum {
  Point x;
  double f = 0.0;
  double error_bound = 0.0;  // M_f * spacing * sqrt(dim) (dim for l1)
  long feasible_nodes = 0;
};

// Exhaustive scan of the feasible grid nodes (max_i g_i <= 0). Box/ball:
// `resolution` nodes per axis; simplex: lattice with resolution - 1
// divisions. Throws UnsupportedError for dim > 3, ArgumentError for
// resolution < 11 and InfeasibleError when no node is feasible.
GridOptimum GridSearchOptimum(const ProblemSpec& spec, int resolution);

}  // namespace imd

#endif  // IMD_PROBLEMS_H_
