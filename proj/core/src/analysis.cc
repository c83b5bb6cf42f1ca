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

#include "imd/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "grid.h"

namespace imd {
namespace {

// Productive iterates including the zero-subgradient stopping point.
std::vector<const IterationRecord*> ProductiveSet(const SolveResult& result) {
  std::vector<const IterationRecord*> out;
  for (const IterationRecord& r : result.trace) {
    if (r.productive) out.push_back(&r);
  }
  if (result.terminal) out.push_back(&*result.terminal);
  return out;
}

}  // namespace

std::string_view ToString(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kLemma1:
      return "Lemma1";
    case CertificateKind::kLemma2Step:
      return "Lemma2Step";
    case CertificateKind::kNonproductiveDrop:
      return "NonproductiveDrop";
    case CertificateKind::kTheorem1:
      return "Theorem1";
    case CertificateKind::kTheorem2:
      return "Theorem2";
    case CertificateKind::kTheorem3:
      return "Theorem3";
    case CertificateKind::kCorollarySmoothMax:
      return "CorollarySmoothMax";
    case CertificateKind::kIterationBound:
      return "IterationBound";
  }
  return "?";
}

Certificate MakeCertificate(CertificateKind kind, std::string quantity,
                            double lhs, double rhs, double tolerance,
                            std::optional<long> iteration) {
  Certificate c;
  c.kind = kind;
  c.quantity = std::move(quantity);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.tolerance = tolerance;
  c.satisfied = lhs <= rhs + tolerance;
  c.iteration = iteration;
  return c;
}

std::optional<double> GrowthModulus::RoundedUp(double tau) const {
  if (tau <= 0.0) return 0.0;
  const auto it = std::lower_bound(tau_grid.begin(), tau_grid.end(), tau);
  if (it == tau_grid.end()) return std::nullopt;
  return omega_values[it - tau_grid.begin()];
}

double VDelta(const ProximalSetup& setup, const DualVector& sub, const Point& x,
              const Point& x_star) {
  const double norm = DualNorm(setup, sub);
  if (norm == 0.0) return 0.0;
  return Pairing(sub, x, x_star) / norm;
}

std::vector<double> DefaultTauGrid(const Problem& problem, int nodes) {
  const ProximalSetup& setup = problem.setup();
  const double diam = setup.feasible_set().Diameter(setup.norm_kind());
  std::vector<double> grid(nodes);
  for (int i = 0; i < nodes; ++i) grid[i] = diam * i / (nodes - 1);
  return grid;
}

GrowthModulus EstimateOmega(const Problem& problem, const Point& x_star,
                            double f_star, std::vector<double> tau_grid,
                            const OmegaOptions& options) {
  if (!problem.reference()) {
    throw UnsupportedError("EstimateOmega: problem has no reference optimum");
  }
  if (tau_grid.empty()) throw ArgumentError("EstimateOmega: empty tau grid");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (tau_grid[i] < 0.0 || (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
      throw ArgumentError("EstimateOmega: tau grid must be increasing and >= 0");
    }
  }
  const ProximalSetup& setup = problem.setup();
  const FeasibleSet& set = setup.feasible_set();
  const NormKind norm = setup.norm_kind();
  const std::size_t n = set.dim();
  const Oracle& f = problem.objective();

  struct Node {
    double dist;
    double gap;
  };
  std::vector<Node> nodes;
  double observed_lipschitz = 0.0;
  // The stored Lipschitz bound only covers Q; off Q, track the observed one.
  const bool ambient = options.domain == OmegaOptions::Domain::kAmbient;
  auto record = [&](const Point& p) {
    nodes.push_back({PrimalDistance(norm, p, x_star), f.Value(p) - f_star});
    if (ambient || !f.lipschitz_bound()) {
      observed_lipschitz = std::max(
          observed_lipschitz, DualNorm(setup, f.function().subgradient(p)));
    }
  };
  auto visit = [&](const std::vector<double>& coords) {
    const Point p(coords);
    if (set.Contains(p)) record(p);
  };
  auto visit_ambient = [&](const std::vector<double>& coords) {
    record(Point(coords));
  };

  GrowthModulus gm;
  const double tau_max = tau_grid.back();
  if (ambient) {
    // |x_i - x*_i| <= ||x - x*|| for both primal norms, so the box
    // x* +- tau_max covers every tau-ball of the grid.
    std::vector<double> lo(n);
    std::vector<double> hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = x_star[i] - tau_max;
      hi[i] = x_star[i] + tau_max;
    }
    if (n <= 3) {
      const int per_axis =
          std::max(101, n == 3 ? std::min(options.grid_nodes, 101)
                               : options.grid_nodes);
      internal::ForEachTensorNode(lo, hi, per_axis, visit_ambient);
      std::vector<double> half(n, tau_max / (per_axis - 1));
      gm.mesh_radius = PrimalNorm(norm, half);
      gm.sampling = "ambient tensor grid, " + std::to_string(per_axis) +
                    " nodes/axis";
    } else {
      std::mt19937_64 rng(0x5eed);
      const FeasibleSet cube = FeasibleSet::Box(lo, hi);
      for (long s = 0; s < options.random_samples; ++s) {
        visit_ambient(SamplePoint(cube, rng).values());
      }
      gm.mesh_radius =
          cube.Diameter(norm) *
          std::pow(static_cast<double>(options.random_samples), -1.0 / n);
      gm.sampling = "ambient random samples (mesh radius is an estimate), " +
                    std::to_string(options.random_samples);
    }
  } else if (n <= 3) {
    // Keep 3-d tensor grids at ~1e6 nodes.
    const int per_axis =
        std::max(101, n == 3 ? std::min(options.grid_nodes, 101)
                             : options.grid_nodes);
    if (set.kind() == FeasibleSet::Kind::kSimplex) {
      const int divisions = per_axis - 1;
      internal::ForEachSimplexNode(n, divisions, visit);
      gm.mesh_radius = static_cast<double>(n) / divisions;
      gm.sampling = "simplex lattice, " + std::to_string(divisions) +
                    " divisions";
    } else {
      std::vector<double> lo(n);
      std::vector<double> hi(n);
      if (const auto* b = set.box()) {
        lo = b->lower;
        hi = b->upper;
      } else {
        const BallSet& ball = *set.ball();
        for (std::size_t i = 0; i < n; ++i) {
          lo[i] = ball.center[i] - ball.radius;
          hi[i] = ball.center[i] + ball.radius;
        }
      }
      internal::ForEachTensorNode(lo, hi, per_axis, visit);
      std::vector<double> half(n);
      for (std::size_t i = 0; i < n; ++i) {
        half[i] = 0.5 * (hi[i] - lo[i]) / (per_axis - 1);
      }
      gm.mesh_radius = PrimalNorm(norm, half);
      gm.sampling = "tensor grid, " + std::to_string(per_axis) + " nodes/axis";
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    for (long s = 0; s < options.random_samples; ++s) {
      visit(SamplePoint(set, rng).values());
    }
    gm.mesh_radius =
        set.Diameter(norm) *
        std::pow(static_cast<double>(options.random_samples), -1.0 / n);
    gm.sampling = "random samples (mesh radius is an estimate), " +
                  std::to_string(options.random_samples);
  }
  gm.samples = static_cast<long>(nodes.size());

  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.dist < b.dist; });
  std::vector<double> prefix_max(nodes.size());
  double running = 0.0;  // x* itself contributes 0.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    running = std::max(running, nodes[i].gap);
    prefix_max[i] = running;
  }
  gm.tau_grid = std::move(tau_grid);
  gm.omega_values.resize(gm.tau_grid.size());
  for (std::size_t j = 0; j < gm.tau_grid.size(); ++j) {
    const double tau = gm.tau_grid[j];
    if (tau <= 0.0) {
      gm.omega_values[j] = 0.0;
      continue;
    }
    const auto it = std::upper_bound(
        nodes.begin(), nodes.end(), tau + gm.mesh_radius,
        [](double d, const Node& node) { return d < node.dist; });
    gm.omega_values[j] =
        it == nodes.begin() ? 0.0 : prefix_max[it - nodes.begin() - 1];
  }
  const double m_f =
      std::max(f.lipschitz_bound().value_or(0.0), observed_lipschitz);
  gm.pad = m_f * gm.mesh_radius;
  return gm;
}

std::vector<Certificate> CheckLemma1(const Problem& problem,
                                     const SolveResult& result,
                                     const GrowthModulus& modulus,
                                     double tolerance) {
  if (!problem.reference()) {
    throw UnsupportedError("CheckLemma1: problem has no reference optimum");
  }
  const ReferenceOptimum& ref = *problem.reference();
  std::vector<Certificate> out;
  for (const IterationRecord* r : ProductiveSet(result)) {
    const double v = VDelta(problem.setup(), r->direction, r->x, ref.x);
    const double lhs = problem.objective().Value(r->x) - ref.f;
    const std::optional<double> omega = modulus.RoundedUp(v);
    if (!omega) {
      Certificate c = MakeCertificate(CertificateKind::kLemma1, "growth", lhs,
                                      std::numeric_limits<double>::infinity(),
                                      tolerance, r->k);
      c.evaluable = false;
      out.push_back(std::move(c));
      continue;
    }
    const double rhs = *omega + r->f_delta + modulus.pad + ref.error_bound;
    out.push_back(MakeCertificate(CertificateKind::kLemma1, "growth", lhs, rhs,
                                  tolerance, r->k));
  }
  return out;
}

std::vector<Certificate> CheckStepInequalities(const SolveResult& result,
                                               const Point& x_star,
                                               const ProximalSetup& setup,
                                               double tolerance) {
  std::vector<Certificate> out;
  const double eps = result.eps;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const IterationRecord& r = result.trace[i];
    const Point& y = result.NextIterate(i);
    const double norm = DualNorm(setup, r.direction);
    const double v_before = Bregman(setup, x_star, r.x);
    const double v_after = Bregman(setup, x_star, y);
    const double lhs = r.h * Pairing(r.direction, r.x, x_star);
    const double rhs = 0.5 * r.h * r.h * norm * norm + v_before - v_after;
    out.push_back(MakeCertificate(CertificateKind::kLemma2Step, "three_point",
                                  lhs, rhs, tolerance, r.k));
    if (result.variant == Variant::kWeighted && !r.productive) {
      out.push_back(MakeCertificate(CertificateKind::kNonproductiveDrop,
                                    "bregman_drop", 0.5 * eps * eps,
                                    v_before - v_after, tolerance, r.k));
    }
  }
  return out;
}

std::vector<Certificate> CheckTerminalGuarantees(const SolveResult& result,
                                                 const Problem& problem,
                                                 double tolerance) {
  std::vector<Certificate> out;
  if (result.stop_reason == StopReason::kIterationCap) return out;
  const std::vector<const IterationRecord*> prod = ProductiveSet(result);
  if (prod.empty()) return out;

  const double eps = result.eps;
  const std::optional<ReferenceOptimum>& ref = problem.reference();
  double delta_f = 0.0;
  double delta_g = 0.0;
  double max_g = -std::numeric_limits<double>::infinity();
  double min_v = std::numeric_limits<double>::infinity();
  for (const IterationRecord* r : prod) {
    delta_f = std::max(delta_f, r->f_delta);
    delta_g = std::max(delta_g, r->g_delta);
    max_g = std::max(max_g, r->g_value);
    if (ref) {
      min_v = std::min(min_v, VDelta(problem.setup(), r->direction, r->x, ref->x));
    }
  }

  switch (result.variant) {
    case Variant::kWeighted: {
      if (ref) {
        out.push_back(MakeCertificate(
            CertificateKind::kTheorem1, "objective_gap",
            problem.objective().Value(result.output_point) - ref->f,
            eps + delta_f + ref->error_bound, tolerance));
      }
      out.push_back(MakeCertificate(
          CertificateKind::kTheorem1, "constraint",
          problem.ConstraintValue(result.output_point),
          eps * problem.m_g() + delta_g, tolerance));
      break;
    }
    case Variant::kAdaptive: {
      if (ref) {
        out.push_back(MakeCertificate(CertificateKind::kTheorem2, "min_v",
                                      min_v, eps, tolerance));
      }
      out.push_back(MakeCertificate(CertificateKind::kTheorem2, "max_g", max_g,
                                    eps + delta_g, tolerance));
      out.push_back(MakeCertificate(
          CertificateKind::kIterationBound, "iterations",
          static_cast<double>(result.iterations),
          static_cast<double>(
              IterationBound(problem.m_g(), problem.theta0_sq(), eps)),
          0.0));
      break;
    }
    case Variant::kFixedBudget: {
      if (ref) {
        out.push_back(MakeCertificate(CertificateKind::kTheorem3, "min_v",
                                      min_v, eps, tolerance));
      }
      out.push_back(MakeCertificate(CertificateKind::kTheorem3, "max_g", max_g,
                                    problem.m_g() * eps + delta_g, tolerance));
      break;
    }
  }
  return out;
}

Certificate CheckCorollary(const Problem& problem, const SolveResult& result,
                           double grad_at_star_norm, double tolerance) {
  const MaxOfFunctions* max_f = problem.objective().max_structure();
  if (max_f == nullptr) {
    throw UnsupportedError("CheckCorollary: objective is not a max of smooth "
                           "components");
  }
  if (result.variant != Variant::kAdaptive) {
    throw UnsupportedError("CheckCorollary: adaptive-variant results only");
  }
  if (!problem.reference()) {
    throw UnsupportedError("CheckCorollary: problem has no reference optimum");
  }
  const ReferenceOptimum& ref = *problem.reference();
  const double eps = result.eps;
  const double l = max_f->MaxLipschitzGradConst();
  double best = std::numeric_limits<double>::infinity();
  double delta = 0.0;
  for (const IterationRecord* r : ProductiveSet(result)) {
    best = std::min(best, problem.objective().Value(r->x));
    delta = std::max(delta, r->f_delta);
  }
  const double rhs = grad_at_star_norm * eps + 0.5 * l * eps * eps + delta +
                     ref.error_bound;
  Certificate c = MakeCertificate(CertificateKind::kCorollarySmoothMax,
                                  "min_gap", best - ref.f, rhs, tolerance);
  if (result.stop_reason == StopReason::kIterationCap ||
      !std::isfinite(best)) {
    c.evaluable = false;
  }
  return c;
}

CertificateSummary Summarize(const std::vector<Certificate>& certs) {
  CertificateSummary s;
  for (const Certificate& c : certs) {
    if (!c.evaluable) {
      ++s.unevaluable;
    } else if (c.satisfied) {
      ++s.passed;
    } else {
      ++s.failed;
    }
  }
  return s;
}

}  // namespace imd
