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

#include "imd/problems.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "grid.h"
#include "imd/functions.h"

namespace imd {
namespace {

constexpr double kGridFeasibilityTolerance = 1e-12;

std::vector<double> Scaled(std::vector<double> v, double s) {
  for (double& c : v) c *= s;
  return v;
}

std::shared_ptr<const MaxOfFunctions> BuildMax(const FunctionSpec& spec) {
  const double s = spec.scale;
  if (spec.kind == FunctionSpec::Kind::kMaxAffine) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : spec.rows) rows.push_back(Scaled(r, s));
    return functions::MaxOfAffine(std::move(rows), Scaled(spec.offsets, s));
  }
  return functions::MaxOfQuadratics(spec.rows, Scaled(spec.curvatures, s),
                                    Scaled(spec.offsets, s));
}

void CheckFunctionDims(const FunctionSpec& spec, std::size_t n) {
  using K = FunctionSpec::Kind;
  switch (spec.kind) {
    case K::kL1Distance:
    case K::kLinfDistance:
    case K::kHalfSquaredDistance:
      CheckSameDim(spec.center.size(), n, "function center");
      break;
    case K::kAffine:
      CheckSameDim(spec.a.size(), n, "affine coefficients");
      break;
    case K::kConstant:
      break;
    case K::kMaxAffine:
    case K::kMaxQuadratic:
      if (spec.rows.empty()) throw ArgumentError("max function: no components");
      for (const auto& r : spec.rows) CheckSameDim(r.size(), n, "max component");
      CheckSameDim(spec.offsets.size(), spec.rows.size(), "max offsets");
      if (spec.kind == K::kMaxQuadratic) {
        CheckSameDim(spec.curvatures.size(), spec.rows.size(),
                     "max curvatures");
      }
      break;
  }
  if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale)) {
    throw ArgumentError("function scale must be finite and >= 0");
  }
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  return seed * 0x100000001b3ULL + stream;
}

std::vector<ProblemSpec> MakeCatalog() {
  using K = FunctionSpec::Kind;
  std::vector<ProblemSpec> c;
  const SetupSpec unit_box{SetupSpec::Kind::kEuclideanBox, {-1.0, -1.0},
                           {1.0, 1.0}, {}, 1.0, std::nullopt};

  {
    ProblemSpec p;
    p.name = "p1-l1-box";
    p.description = "||x - (1,1)||_1 s.t. ||x||_inf <= 1 on [-1,1]^2";
    p.dimension = 2;
    p.objective.kind = K::kL1Distance;
    p.objective.center = {1.0, 1.0};
    FunctionSpec g;
    g.kind = K::kLinfDistance;
    g.center = {0.0, 0.0};
    g.b = -1.0;
    p.constraints = {g};
    p.setup = unit_box;
    p.m_g = 1.0;
    p.theta0_sq = 1.0;
    p.reference = ReferenceSpec{{1.0, 1.0}, 0.0};
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p2-abs-halfplane";
    p.description = "max(x1, -x1) s.t. x2 <= 0.5 on [-1,1]^2";
    p.dimension = 2;
    p.objective.kind = K::kMaxAffine;
    p.objective.rows = {{1.0, 0.0}, {-1.0, 0.0}};
    p.objective.offsets = {0.0, 0.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {0.0, 1.0};
    g.b = -0.5;
    p.constraints = {g};
    p.setup = unit_box;
    p.m_g = 1.0;
    p.theta0_sq = 1.0;
    p.reference = ReferenceSpec{{0.0, 0.0}, 0.0};
    p.grad_at_star_norm = 1.0;
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p3-linear-simplex";
    p.description = "<(1,2,3), x> s.t. x3 <= 0.5 on the simplex (entropy)";
    p.dimension = 3;
    p.objective.kind = K::kAffine;
    p.objective.a = {1.0, 2.0, 3.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {0.0, 0.0, 1.0};
    g.b = -0.5;
    p.constraints = {g};
    p.setup.kind = SetupSpec::Kind::kEntropySimplex;
    p.m_g = 1.0;
    p.theta0_sq = 1.1;  // d(e1) = ln 3
    p.reference = ReferenceSpec{{1.0, 0.0, 0.0}, 1.0};
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p4-max-quadratics";
    p.description =
        "max_i 1/2 ||x - c_i||^2 with c = (0.8,0.2), (0.2,0.8) s.t. "
        "x1 + x2 <= 0.8 on [-1,1]^2";
    p.dimension = 2;
    p.objective.kind = K::kMaxQuadratic;
    p.objective.rows = {{0.8, 0.2}, {0.2, 0.8}};
    p.objective.curvatures = {1.0, 1.0};
    p.objective.offsets = {0.0, 0.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {1.0, 1.0};
    g.b = -0.8;
    p.constraints = {g};
    p.setup = unit_box;
    p.m_g = std::sqrt(2.0);
    p.theta0_sq = 0.25;
    p.reference = ReferenceSpec{{0.4, 0.4}, 0.1};
    // Both component gradients at x* have norm sqrt(0.2).
    p.grad_at_star_norm = std::sqrt(0.2);
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p5-maxaffine-active";
    p.description = "max(-x1, -x2) s.t. x1 + x2 <= 1 on [-1,1]^2";
    p.dimension = 2;
    p.objective.kind = K::kMaxAffine;
    p.objective.rows = {{-1.0, 0.0}, {0.0, -1.0}};
    p.objective.offsets = {0.0, 0.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {1.0, 1.0};
    g.b = -1.0;
    p.constraints = {g};
    p.setup = unit_box;
    p.m_g = std::sqrt(2.0);
    p.theta0_sq = 0.3;
    p.reference = ReferenceSpec{{0.5, 0.5}, -0.5};
    p.grad_at_star_norm = 1.0;
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p6-simplex-active";
    p.description = "<(1,2,3), x> s.t. x1 <= 0.5 on the simplex (entropy)";
    p.dimension = 3;
    p.objective.kind = K::kAffine;
    p.objective.a = {1.0, 2.0, 3.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {1.0, 0.0, 0.0};
    g.b = -0.5;
    p.constraints = {g};
    p.setup.kind = SetupSpec::Kind::kEntropySimplex;
    p.m_g = 1.0;
    p.theta0_sq = 0.5;  // d(x*) = ln 3 - ln 2
    p.reference = ReferenceSpec{{0.5, 0.5, 0.0}, 1.5};
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p7-ball-linear";
    p.description = "x1 + x2 s.t. x1 >= -0.5 on the unit ball";
    p.dimension = 2;
    p.objective.kind = K::kAffine;
    p.objective.a = {1.0, 1.0};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {-1.0, 0.0};
    g.b = -0.5;
    p.constraints = {g};
    p.setup.kind = SetupSpec::Kind::kEuclideanBall;
    p.setup.center = {0.0, 0.0};
    p.setup.radius = 1.0;
    p.m_g = 1.0;
    p.theta0_sq = 0.5;
    const double x2 = -std::sqrt(0.75);
    p.reference = ReferenceSpec{{-0.5, x2}, -0.5 + x2};
    c.push_back(std::move(p));
  }
  {
    ProblemSpec p;
    p.name = "p8-maxaffine-grid";
    p.description =
        "max(x1 + 2 x2, 0.3 - x1, 2 x1 - x2 - 0.2) s.t. x1 + x2 >= 0.3 on "
        "[-1,1]^2 (grid-search reference)";
    p.dimension = 2;
    p.objective.kind = K::kMaxAffine;
    p.objective.rows = {{1.0, 2.0}, {-1.0, 0.0}, {2.0, -1.0}};
    p.objective.offsets = {0.0, 0.3, -0.2};
    FunctionSpec g;
    g.kind = K::kAffine;
    g.a = {-1.0, -1.0};
    g.b = 0.3;
    p.constraints = {g};
    p.setup = unit_box;
    p.m_g = std::sqrt(2.0);
    p.theta0_sq = 0.25;
    constexpr int kResolution = 201;
    const GridOptimum opt = GridSearchOptimum(p, kResolution);
    p.reference = ReferenceSpec{opt.x.values(), opt.f,
                                ReferenceSpec::Source::kGridSearch, kResolution,
                                opt.error_bound};
    c.push_back(std::move(p));
  }
  return c;
}

}  // namespace

std::string_view ToString(FunctionSpec::Kind kind) {
  using K = FunctionSpec::Kind;
  switch (kind) {
    case K::kL1Distance:
      return "l1_distance";
    case K::kLinfDistance:
      return "linf_distance";
    case K::kAffine:
      return "affine";
    case K::kHalfSquaredDistance:
      return "half_squared_distance";
    case K::kConstant:
      return "constant";
    case K::kMaxAffine:
      return "max_affine";
    case K::kMaxQuadratic:
      return "max_quadratic";
  }
  return "?";
}

FunctionSpec::Kind ParseFunctionKind(std::string_view name) {
  using K = FunctionSpec::Kind;
  for (K k : {K::kL1Distance, K::kLinfDistance, K::kAffine,
              K::kHalfSquaredDistance, K::kConstant, K::kMaxAffine,
              K::kMaxQuadratic}) {
    if (ToString(k) == name) return k;
  }
  throw ArgumentError("unknown function kind '" + std::string(name) + "'");
}

std::string_view ToString(SetupSpec::Kind kind) {
  switch (kind) {
    case SetupSpec::Kind::kEuclideanBox:
      return "euclidean_box";
    case SetupSpec::Kind::kEuclideanBall:
      return "euclidean_ball";
    case SetupSpec::Kind::kEntropySimplex:
      return "entropy_simplex";
  }
  return "?";
}

SetupSpec::Kind ParseSetupKind(std::string_view name) {
  for (SetupSpec::Kind k :
       {SetupSpec::Kind::kEuclideanBox, SetupSpec::Kind::kEuclideanBall,
        SetupSpec::Kind::kEntropySimplex}) {
    if (ToString(k) == name) return k;
  }
  throw ArgumentError("unknown setup kind '" + std::string(name) + "'");
}

ProximalSetup BuildSetup(const SetupSpec& spec, std::size_t dimension) {
  std::optional<Point> anchor;
  if (spec.anchor) anchor = Point(*spec.anchor);
  switch (spec.kind) {
    case SetupSpec::Kind::kEuclideanBox:
      CheckSameDim(spec.lower.size(), dimension, "box bounds");
      return ProximalSetup::Euclidean(FeasibleSet::Box(spec.lower, spec.upper),
                                      anchor);
    case SetupSpec::Kind::kEuclideanBall:
      CheckSameDim(spec.center.size(), dimension, "ball center");
      return ProximalSetup::Euclidean(
          FeasibleSet::Ball(spec.center, spec.radius), anchor);
    case SetupSpec::Kind::kEntropySimplex:
      return ProximalSetup::Entropy(dimension);
  }
  throw ArgumentError("BuildSetup: bad setup kind");
}

Oracle BuildExactOracle(const FunctionSpec& spec, const ProximalSetup& setup) {
  using K = FunctionSpec::Kind;
  const std::size_t n = setup.dim();
  CheckFunctionDims(spec, n);
  const NormKind norm = setup.norm_kind();
  const FeasibleSet& q = setup.feasible_set();
  const double s = spec.scale;
  switch (spec.kind) {
    case K::kL1Distance: {
      // Sign vectors: ||.||_2 <= sqrt(n), ||.||_inf <= 1.
      const double lip =
          norm == NormKind::kL2 ? std::sqrt(static_cast<double>(n)) : 1.0;
      return Oracle::Exact(
          functions::Scaled(functions::L1Distance(spec.center), s), s * lip);
    }
    case K::kLinfDistance:
      return Oracle::Exact(
          functions::Scaled(functions::LinfDistance(spec.center, spec.b), s),
          s);
    case K::kAffine:
      return Oracle::Exact(
          functions::Scaled(functions::Affine(spec.a, spec.b), s),
          s * DualNorm(norm, DualVector(spec.a)));
    case K::kHalfSquaredDistance:
      return Oracle::Exact(
          functions::Scaled(functions::HalfSquaredDistance(spec.center), s),
          s * q.SupDualDistance(norm, spec.center));
    case K::kConstant:
      return Oracle::Exact(functions::Constant(n, s * spec.b), std::nullopt);
    case K::kMaxAffine:
    case K::kMaxQuadratic: {
      double lip = 0.0;
      for (std::size_t i = 0; i < spec.rows.size(); ++i) {
        lip = std::max(lip, spec.kind == K::kMaxAffine
                                ? DualNorm(norm, DualVector(spec.rows[i]))
                                : spec.curvatures[i] *
                                      q.SupDualDistance(norm, spec.rows[i]));
      }
      return Oracle::Exact(BuildMax(spec), s * lip);
    }
  }
  throw ArgumentError("BuildExactOracle: bad function kind");
}

Problem BuildProblem(const ProblemSpec& spec, const OracleOptions& options) {
  if (spec.dimension == 0) throw ArgumentError("problem dimension must be >= 1");
  if (!(options.objective_delta >= 0.0) || !(options.constraint_delta >= 0.0)) {
    throw ArgumentError("oracle delta must be >= 0");
  }
  ProximalSetup setup = BuildSetup(spec.setup, spec.dimension);
  const NormKind norm = setup.norm_kind();
  const double diam = setup.feasible_set().Diameter(norm);

  Oracle objective = BuildExactOracle(spec.objective, setup);
  if (options.objective_delta > 0.0) {
    if (options.mode == OracleOptions::Mode::kInexactMax) {
      auto max_f = objective.shared_max_structure();
      if (!max_f) {
        throw ArgumentError("inexact-max oracle needs a max-type objective");
      }
      objective = InexactMaxOracle(std::move(max_f), options.objective_delta,
                                   objective.lipschitz_bound());
    } else {
      objective = PerturbedOracle(objective, options.objective_delta / diam,
                                  diam, StreamSeed(options.seed, 0), norm);
    }
  }

  if (spec.constraints.empty()) {
    throw ArgumentError("problem needs at least one constraint");
  }
  std::vector<Oracle> constraints;
  const double g_noise = options.constraint_delta / diam;
  for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
    Oracle g = BuildExactOracle(spec.constraints[i], setup);
    if (g_noise > 0.0) {
      g = PerturbedOracle(g, g_noise, diam, StreamSeed(options.seed, i + 1),
                          norm);
    }
    constraints.push_back(std::move(g));
  }

  std::optional<ReferenceOptimum> ref;
  if (spec.reference) {
    const ReferenceSpec& r = *spec.reference;
    std::string source =
        r.source == ReferenceSpec::Source::kAnalytic
            ? std::string("analytic")
            : "grid:" + std::to_string(r.grid_resolution);
    ref = ReferenceOptimum{Point(r.x), r.f, std::move(source), r.error_bound};
  }
  return Problem(std::move(objective), std::move(constraints), std::move(setup),
                 spec.m_g + g_noise, spec.theta0_sq, std::move(ref));
}

const std::vector<ProblemSpec>& BuiltinCatalog() {
  static const std::vector<ProblemSpec> catalog = MakeCatalog();
  return catalog;
}

const ProblemSpec& FindBuiltin(std::string_view name) {
  for (const ProblemSpec& p : BuiltinCatalog()) {
    if (p.name == name) return p;
  }
  throw ArgumentError("unknown problem '" + std::string(name) + "'");
}

GridOptimum GridSearchOptimum(const ProblemSpec& spec, int resolution) {
  if (spec.dimension > 3) {
    throw UnsupportedError("GridSearchOptimum: dimension > 3");
  }
  if (resolution < 11) {
    throw ArgumentError("GridSearchOptimum: resolution must be >= 11");
  }
  const ProximalSetup setup = BuildSetup(spec.setup, spec.dimension);
  const FeasibleSet& q = setup.feasible_set();
  const std::size_t n = spec.dimension;
  const Oracle f = BuildExactOracle(spec.objective, setup);
  std::vector<Oracle> gs;
  for (const FunctionSpec& g : spec.constraints) {
    gs.push_back(BuildExactOracle(g, setup));
  }

  GridOptimum best{Point::Zero(n), std::numeric_limits<double>::infinity()};
  auto visit = [&](const std::vector<double>& coords) {
    const Point x(coords);
    if (!q.Contains(x)) return;
    for (const Oracle& g : gs) {
      if (g.Value(x) > kGridFeasibilityTolerance) return;
    }
    ++best.feasible_nodes;
    const double v = f.Value(x);
    if (v < best.f) {
      best.f = v;
      best.x = x;
    }
  };

  double spacing = 0.0;
  if (q.kind() == FeasibleSet::Kind::kSimplex) {
    internal::ForEachSimplexNode(n, resolution - 1, visit);
    spacing = 1.0 / (resolution - 1);
  } else {
    std::vector<double> lo(n);
    std::vector<double> hi(n);
    if (const auto* b = q.box()) {
      lo = b->lower;
      hi = b->upper;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = q.ball()->center[i] - q.ball()->radius;
        hi[i] = q.ball()->center[i] + q.ball()->radius;
      }
    }
    internal::ForEachTensorNode(lo, hi, resolution, visit);
    for (std::size_t i = 0; i < n; ++i) {
      spacing = std::max(spacing, (hi[i] - lo[i]) / (resolution - 1));
    }
  }
  if (best.feasible_nodes == 0) {
    throw InfeasibleError("GridSearchOptimum: no feasible grid node for '" +
                          spec.name + "'");
  }
  const double dim_factor = setup.norm_kind() == NormKind::kL2
                                ? std::sqrt(static_cast<double>(n))
                                : static_cast<double>(n);
  best.error_bound = f.lipschitz_bound().value_or(0.0) * spacing * dim_factor;
  return best;
}

}  // namespace imd
