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

#ifndef IMD_ORACLE_H_
#define IMD_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "imd/proximal.h"
#include "imd/vector.h"

namespace imd {

// Answer of a first-order oracle at x: a vector v with
//   f(y) - f(x) >= <v, y - x> - delta   for all y in Q,
// together with the oracle's estimate of f(x).
struct DeltaSubgradient {
  DualVector vector;
  double delta = 0.0;
  double value = 0.0;
};

// A convex function with a deterministic exact subgradient selection.
struct ConvexFunction {
  std::function<double(const Point&)> value;
  std::function<DualVector(const Point&)> subgradient;
};

struct SmoothComponent {
  std::function<double(const Point&)> value;
  std::function<DualVector(const Point&)> gradient;
};

// f(x) = max_i f_i(x) with smooth convex f_i whose gradients are
// L_i-Lipschitz (dual norm vs. primal norm).
class MaxOfFunctions {
 public:
  MaxOfFunctions(std::vector<SmoothComponent> components,
                 std::vector<double> lipschitz_grad_consts);

  std::size_t size() const { return components_.size(); }
  const SmoothComponent& component(std::size_t i) const {
    return components_[i];
  }
  std::span<const double> lipschitz_grad_consts() const {
    return lipschitz_grad_consts_;
  }
  // L = max_i L_i.
  double MaxLipschitzGradConst() const;

  std::vector<double> ComponentValues(const Point& x) const;
  double Value(const Point& x) const;
  // Gradient of the smallest-index maximizing component.
  DualVector ExactSubgradient(const Point& x) const;

 private:
  std::vector<SmoothComponent> components_;
  std::vector<double> lipschitz_grad_consts_;
};

// Objective or constraint oracle. Keeps the exact function it approximates
// (used for certificates and reference optima) next to the possibly inexact
// answer map the solver consumes. Immutable and cheap to copy.
class Oracle {
 public:
  using Answer = std::function<DeltaSubgradient(const Point&)>;

  // delta = 0 oracle over an exact subgradient selection.
  static Oracle Exact(ConvexFunction f, std::optional<double> lipschitz_bound);
  // Exact oracle of the max function; remembers the component structure.
  static Oracle Exact(std::shared_ptr<const MaxOfFunctions> f,
                      std::optional<double> lipschitz_bound);

  DeltaSubgradient Evaluate(const Point& x) const;
  // Exact function value.
  double Value(const Point& x) const { return function_.value(x); }
  const ConvexFunction& function() const { return function_; }

  double delta_bound() const { return delta_bound_; }
  std::optional<double> lipschitz_bound() const { return lipschitz_bound_; }
  // Non-null when the function is a max of smooth components.
  const MaxOfFunctions* max_structure() const { return max_structure_.get(); }
  std::shared_ptr<const MaxOfFunctions> shared_max_structure() const {
    return max_structure_;
  }

  // Same exact function, different answer map.
  Oracle WithAnswer(Answer answer, double delta_bound,
                    std::optional<double> lipschitz_bound) const;

 private:
  Oracle(ConvexFunction f, Answer answer, double delta_bound,
         std::optional<double> lipschitz_bound,
         std::shared_ptr<const MaxOfFunctions> max_structure);

  ConvexFunction function_;
  Answer answer_;
  double delta_bound_ = 0.0;
  std::optional<double> lipschitz_bound_;
  std::shared_ptr<const MaxOfFunctions> max_structure_;
};

// Exact subgradient of the oracle's function, delta = 0.
DeltaSubgradient ExactSubgradient(const Oracle& oracle, const Point& x);

// Gradient of a component f_j with max_i f_i(x) - f_j(x) <= delta. Among the
// admissible components the one with the smallest value is taken (ties: the
// smallest index). The reported delta is the actual gap and the value is
// f_j(x). Throws ArgumentError for negative delta.
DeltaSubgradient InexactMaxSubgradient(const MaxOfFunctions& f, const Point& x,
                                       double delta);
Oracle InexactMaxOracle(std::shared_ptr<const MaxOfFunctions> f, double delta,
                        std::optional<double> lipschitz_bound);

// Adds a perturbation p with ||p||_* = noise_dual_norm to the base oracle's
// vector and reports delta += noise_dual_norm * q_diameter. The direction is
// uniform on the dual unit sphere and depends only on (seed, x).
Oracle PerturbedOracle(const Oracle& base, double noise_dual_norm,
                       double q_diameter, std::uint64_t seed, NormKind norm);

struct ConstraintEvaluation {
  double value = 0.0;
  DeltaSubgradient sub;
  std::size_t index = 0;  // 0-based index of the component used.
};

// g(x) = max_i g_i(x). The subgradient comes from the smallest-index component
// with g_i(x) >= g(x) - delta; its delta is widened by that gap.
ConstraintEvaluation MaxConstraint(std::span<const Oracle> constraints,
                                   const Point& x, double delta = 0.0);

}  // namespace imd

#endif  // IMD_ORACLE_H_
