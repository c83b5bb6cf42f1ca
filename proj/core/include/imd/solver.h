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

#ifndef IMD_SOLVER_H_
#define IMD_SOLVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imd/oracle.h"
#include "imd/proximal.h"

namespace imd {

// The three adaptive mirror-descent schemes. They differ in the productivity
// test, the step-size laws and the stopping rule:
//
//   variant        productive if          h (prod.)    h (non-prod.)  stop when
//   kWeighted      g <= eps ||g'|| + dg   eps/||f'||^2  eps/||g'||    2T/eps^2 <= sum_I 1/||f'||^2 + |J|
//   kAdaptive      g <= eps + dg          eps/||f'||    eps/||g'||^2  T <= eps^2/2 (|I| + sum_J 1/||g'||^2)
//   kFixedBudget   g <= eps ||g'|| + dg   eps/||f'||    eps/||g'||    2T/eps^2 <= N
//
// with T = theta0^2. kWeighted returns the h-weighted average of productive
// iterates; the other two return the productive iterate with the smallest
// objective estimate.
enum class Variant { kWeighted, kAdaptive, kFixedBudget };

enum class OutputRule { kWeightedAverage, kArgminProductive };

enum class StopReason { kCriterionMet, kZeroObjectiveSubgradient, kIterationCap };

std::string_view ToString(Variant v);
std::string_view ToString(OutputRule r);
std::string_view ToString(StopReason r);
// Accepts "weighted" / "adaptive" / "fixed". Throws ArgumentError.
Variant ParseVariant(std::string_view name);
StopReason ParseStopReason(std::string_view name);

struct ReferenceOptimum {
  Point x;
  double f = 0.0;
  std::string source;        // e.g. "analytic", "grid:201".
  double error_bound = 0.0;  // |f_reported - f*| bound.
};

// Objective, constraints g_i(x) <= 0, proximal setup and the constants the
// schemes need. Validated on construction.
class Problem {
 public:
  Problem(Oracle objective, std::vector<Oracle> constraints,
          ProximalSetup setup, double m_g, double theta0_sq,
          std::optional<ReferenceOptimum> reference = std::nullopt);

  const Oracle& objective() const { return objective_; }
  const std::vector<Oracle>& constraints() const { return constraints_; }
  const ProximalSetup& setup() const { return setup_; }
  double m_g() const { return m_g_; }
  double theta0_sq() const { return theta0_sq_; }
  const std::optional<ReferenceOptimum>& reference() const {
    return reference_;
  }
  // max_i g_i(x) from the exact functions.
  double ConstraintValue(const Point& x) const;

 private:
  Oracle objective_;
  std::vector<Oracle> constraints_;
  ProximalSetup setup_;
  double m_g_;
  double theta0_sq_;
  std::optional<ReferenceOptimum> reference_;
};

struct IterationRecord {
  long k = 0;
  bool productive = false;
  double h = 0.0;
  Point x;
  // The vector stepped along: the objective's on productive steps, the
  // constraint's otherwise.
  DualVector direction;
  double sub_norm = 0.0;        // ||direction||_*
  double delta_reported = 0.0;  // delta of the oracle that produced direction
  double g_value = 0.0;
  double g_sub_norm = 0.0;
  double g_delta = 0.0;
  double f_value_estimate = 0.0;
  double f_delta = 0.0;
  std::optional<double> bregman_to_ref;  // V(x*, x^k)
};

struct SolveResult {
  Variant variant = Variant::kWeighted;
  double eps = 0.0;
  Point output_point;
  OutputRule output_rule = OutputRule::kWeightedAverage;
  long iterations = 0;
  long productive_count = 0;
  long nonproductive_count = 0;
  StopReason stop_reason = StopReason::kCriterionMet;
  // Set when the run ended without a single productive step.
  bool productive_empty = false;
  // The iterate the loop stopped at (x^N, or the zero-subgradient point).
  Point final_iterate;
  // At kZeroObjectiveSubgradient: the oracle answers at final_iterate
  // (productive, h = 0, zero direction). Not part of the trace.
  std::optional<IterationRecord> terminal;
  std::vector<IterationRecord> trace;

  // Next iterate after trace[i].
  const Point& NextIterate(std::size_t i) const {
    return i + 1 < trace.size() ? trace[i + 1].x : final_iterate;
  }
};

struct SolverOptions {
  // Hard cap = factor * ceil(2 max{1, M_g^2} theta0^2 / eps^2).
  double max_iter_factor = 50.0;
};

// ceil(2 max{1, M_g^2} theta0^2 / eps^2).
// ceil(2 max{1, M_g^2} theta0^2 / eps^2); values within 1e-12 (relative) of
// an integer are taken as that integer.
long IterationBound(double m_g, double theta0_sq, double eps);
// ceil(2 theta0^2 / eps^2).
long FixedBudgetIterations(double theta0_sq, double eps);
// ceil(factor * IterationBound(m_g, theta0_sq, eps)).
long IterationCap(double m_g, double theta0_sq, double eps, double factor);

bool ProductivityTest(Variant variant, double g_value, const DeltaSubgradient& g_sub,
                      double eps, const ProximalSetup& setup);

// Convex combination of productive iterates with weights h_k / sum h.
// Throws std::logic_error if there is no productive record.
Point AssembleWeightedAverage(const std::vector<IterationRecord>& trace);

SolveResult Solve(const Problem& problem, Variant variant, double eps,
                  const SolverOptions& options = {});

inline SolveResult SolveWeighted(const Problem& p, double eps,
                                 const SolverOptions& o = {}) {
  return Solve(p, Variant::kWeighted, eps, o);
}
inline SolveResult SolveAdaptive(const Problem& p, double eps,
                                 const SolverOptions& o = {}) {
  return Solve(p, Variant::kAdaptive, eps, o);
}
inline SolveResult SolveFixedBudget(const Problem& p, double eps,
                                    const SolverOptions& o = {}) {
  return Solve(p, Variant::kFixedBudget, eps, o);
}

}  // namespace imd

#endif  // IMD_SOLVER_H_
