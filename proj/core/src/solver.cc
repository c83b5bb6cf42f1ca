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

#include "imd/solver.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace imd {

std::string_view ToString(Variant v) {
  switch (v) {
    case Variant::kWeighted:
      return "weighted";
    case Variant::kAdaptive:
      return "adaptive";
    case Variant::kFixedBudget:
      return "fixed";
  }
  return "?";
}

std::string_view ToString(OutputRule r) {
  return r == OutputRule::kWeightedAverage ? "WeightedAverage"
                                           : "ArgminProductive";
}

std::string_view ToString(StopReason r) {
  switch (r) {
    case StopReason::kCriterionMet:
      return "CriterionMet";
    case StopReason::kZeroObjectiveSubgradient:
      return "ZeroObjectiveSubgradient";
    case StopReason::kIterationCap:
      return "IterationCap";
  }
  return "?";
}

Variant ParseVariant(std::string_view name) {
  if (name == "weighted") return Variant::kWeighted;
  if (name == "adaptive") return Variant::kAdaptive;
  if (name == "fixed") return Variant::kFixedBudget;
  throw ArgumentError("unknown algorithm '" + std::string(name) +
                      "' (expected weighted, adaptive or fixed)");
}

StopReason ParseStopReason(std::string_view name) {
  for (StopReason r : {StopReason::kCriterionMet,
                       StopReason::kZeroObjectiveSubgradient,
                       StopReason::kIterationCap}) {
    if (ToString(r) == name) return r;
  }
  throw ArgumentError("unknown stop reason '" + std::string(name) + "'");
}

Problem::Problem(Oracle objective, std::vector<Oracle> constraints,
                 ProximalSetup setup, double m_g, double theta0_sq,
                 std::optional<ReferenceOptimum> reference)
    : objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      setup_(std::move(setup)),
      m_g_(m_g),
      theta0_sq_(theta0_sq),
      reference_(std::move(reference)) {
  if (constraints_.empty()) {
    throw ArgumentError("Problem: need at least one constraint (use g = -1 "
                        "for an unconstrained problem)");
  }
  if (!(m_g_ > 0.0) || !std::isfinite(m_g_)) {
    throw ArgumentError("Problem: M_g must be positive");
  }
  if (!(theta0_sq_ > 0.0) || !std::isfinite(theta0_sq_)) {
    throw ArgumentError("Problem: theta0_sq must be positive");
  }
  if (reference_) {
    CheckSameDim(reference_->x.dim(), setup_.dim(), "Problem reference");
    const double d_star = ProxValue(setup_, reference_->x);
    if (theta0_sq_ < d_star - 1e-9) {
      throw ArgumentError("Problem: theta0_sq = " + std::to_string(theta0_sq_) +
                          " is below d(x*) = " + std::to_string(d_star));
    }
  }
}

double Problem::ConstraintValue(const Point& x) const {
  double v = constraints_.front().Value(x);
  for (std::size_t i = 1; i < constraints_.size(); ++i) {
    v = std::max(v, constraints_[i].Value(x));
  }
  return v;
}

long IterationBound(double m_g, double theta0_sq, double eps) {
  const double raw = 2.0 * std::max(1.0, m_g * m_g) * theta0_sq / (eps * eps);
  // M_g = sqrt(2) squares to 2 + 4e-16; without the snap the ceiling would
  // overshoot the exact bound by one.
  const double nearest = std::nearbyint(raw);
  if (std::abs(raw - nearest) <= 1e-12 * std::max(1.0, raw)) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::ceil(raw));
}

long FixedBudgetIterations(double theta0_sq, double eps) {
  return static_cast<long>(std::ceil(2.0 * theta0_sq / (eps * eps)));
}

bool ProductivityTest(Variant variant, double g_value,
                      const DeltaSubgradient& g_sub, double eps,
                      const ProximalSetup& setup) {
  if (variant == Variant::kAdaptive) return g_value <= eps + g_sub.delta;
  return g_value <= eps * DualNorm(setup, g_sub.vector) + g_sub.delta;
}

long IterationCap(double m_g, double theta0_sq, double eps, double factor) {
  return static_cast<long>(std::ceil(
      factor * static_cast<double>(IterationBound(m_g, theta0_sq, eps))));
}

Point AssembleWeightedAverage(const std::vector<IterationRecord>& trace) {
  double total = 0.0;
  std::size_t dim = 0;
  for (const IterationRecord& r : trace) {
    if (!r.productive) continue;
    total += r.h;
    dim = r.x.dim();
  }
  if (dim == 0) {
    throw std::logic_error("AssembleWeightedAverage: no productive iterate");
  }
  std::vector<double> avg(dim, 0.0);
  for (const IterationRecord& r : trace) {
    if (!r.productive) continue;
    const double w = r.h / total;
    for (std::size_t i = 0; i < dim; ++i) avg[i] += w * r.x[i];
  }
  return Point(std::move(avg));
}

SolveResult Solve(const Problem& problem, Variant variant, double eps,
                  const SolverOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ArgumentError("Solve: eps must be positive and finite");
  }
  if (!(options.max_iter_factor >= 1.0)) {
    throw ArgumentError("Solve: max_iter_factor must be >= 1");
  }
  const ProximalSetup& setup = problem.setup();
  const double theta0_sq = problem.theta0_sq();
  const long cap =
      IterationCap(problem.m_g(), theta0_sq, eps, options.max_iter_factor);
  const double budget = 2.0 * theta0_sq / (eps * eps);
  const std::optional<ReferenceOptimum>& ref = problem.reference();

  SolveResult result;
  result.variant = variant;
  result.eps = eps;
  result.output_rule = variant == Variant::kWeighted
                           ? OutputRule::kWeightedAverage
                           : OutputRule::kArgminProductive;

  Point x = ProxCenter(setup);
  // Running sums of the stopping rules.
  double inv_sq_f_productive = 0.0;     // kWeighted: sum_I 1/||f'||^2
  double inv_sq_g_nonproductive = 0.0;  // kAdaptive: sum_J 1/||g'||^2
  long k = 0;
  for (;;) {
    if (k >= cap) {
      result.stop_reason = StopReason::kIterationCap;
      break;
    }
    ConstraintEvaluation g = MaxConstraint(problem.constraints(), x);
    DeltaSubgradient f = problem.objective().Evaluate(x);
    const double g_norm = DualNorm(setup, g.sub.vector);
    const bool productive =
        ProductivityTest(variant, g.value, g.sub, eps, setup);

    IterationRecord rec;
    rec.k = k;
    rec.productive = productive;
    rec.x = x;
    rec.g_value = g.value;
    rec.g_sub_norm = g_norm;
    rec.g_delta = g.sub.delta;
    rec.f_value_estimate = f.value;
    rec.f_delta = f.delta;
    if (productive) {
      const double f_norm = DualNorm(setup, f.vector);
      if (f_norm == 0.0) {
        // A zero delta-subgradient certifies f(y) >= f(x) - delta on Q.
        result.stop_reason = StopReason::kZeroObjectiveSubgradient;
        rec.direction = std::move(f.vector);
        rec.delta_reported = f.delta;
        if (ref) rec.bregman_to_ref = Bregman(setup, ref->x, x);
        result.terminal = std::move(rec);
        break;
      }
      rec.h = variant == Variant::kWeighted ? eps / (f_norm * f_norm)
                                            : eps / f_norm;
      rec.direction = std::move(f.vector);
      rec.sub_norm = f_norm;
      rec.delta_reported = f.delta;
    } else {
      if (g_norm == 0.0) {
        throw InfeasibleError(
            "constraint delta-subgradient vanished at a violating point");
      }
      rec.h = variant == Variant::kAdaptive ? eps / (g_norm * g_norm)
                                            : eps / g_norm;
      rec.direction = std::move(g.sub.vector);
      rec.sub_norm = g_norm;
      rec.delta_reported = g.sub.delta;
    }
    if (ref) rec.bregman_to_ref = Bregman(setup, ref->x, x);

    x = MirrorStep(setup, x, rec.direction, rec.h);
    if (productive) {
      ++result.productive_count;
      inv_sq_f_productive += 1.0 / (rec.sub_norm * rec.sub_norm);
    } else {
      ++result.nonproductive_count;
      inv_sq_g_nonproductive += 1.0 / (rec.sub_norm * rec.sub_norm);
    }
    result.trace.push_back(std::move(rec));
    ++k;

    bool done = false;
    switch (variant) {
      case Variant::kWeighted:
        done = budget <= inv_sq_f_productive +
                             static_cast<double>(result.nonproductive_count);
        break;
      case Variant::kAdaptive:
        done = theta0_sq <=
               eps * eps / 2.0 *
                   (static_cast<double>(result.productive_count) +
                    inv_sq_g_nonproductive);
        break;
      case Variant::kFixedBudget:
        done = budget <= static_cast<double>(k);
        break;
    }
    if (done) {
      result.stop_reason = StopReason::kCriterionMet;
      break;
    }
  }

  result.iterations = k;
  result.final_iterate = x;
  if (result.stop_reason == StopReason::kZeroObjectiveSubgradient) {
    result.output_point = x;
  } else if (result.productive_count == 0) {
    // No certified output without a productive iterate.
    result.productive_empty = true;
    result.stop_reason = StopReason::kIterationCap;
    result.output_point = x;
  } else if (variant == Variant::kWeighted) {
    result.output_point = AssembleWeightedAverage(result.trace);
  } else {
    const IterationRecord* best = nullptr;
    for (const IterationRecord& r : result.trace) {
      if (r.productive &&
          (best == nullptr || r.f_value_estimate < best->f_value_estimate)) {
        best = &r;
      }
    }
    result.output_point = best->x;
  }
  return result;
}

}  // namespace imd
