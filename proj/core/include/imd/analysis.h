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

#ifndef IMD_ANALYSIS_H_
#define IMD_ANALYSIS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imd/solver.h"

namespace imd {

inline constexpr double kDefaultCertificateTolerance = 1e-8;

enum class CertificateKind {
  kLemma1,
  kLemma2Step,
  kNonproductiveDrop,
  kTheorem1,
  kTheorem2,
  kTheorem3,
  kCorollarySmoothMax,
  kIterationBound,
};

std::string_view ToString(CertificateKind kind);

// One checked inequality lhs <= rhs (+ tolerance).
struct Certificate {
  CertificateKind kind = CertificateKind::kLemma1;
  // Which inequality of the kind, e.g. "objective_gap" or "constraint".
  std::string quantity;
  bool satisfied = false;
  // False when the inequality could not be evaluated (e.g. v outside the
  // sampled tau range); such certificates are neither passes nor failures.
  bool evaluable = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = kDefaultCertificateTolerance;
  std::optional<long> iteration;  // nullopt: terminal

  bool failed() const { return evaluable && !satisfied; }
};

Certificate MakeCertificate(CertificateKind kind, std::string quantity,
                            double lhs, double rhs, double tolerance,
                            std::optional<long> iteration = std::nullopt);

// Sampled estimate of w(tau) = max{ f(x) - f* : x in Q, ||x - x*|| <= tau }.
// omega_values[j] is the maximum over sample nodes within tau_j + mesh_radius
// of x*, so omega_values[j] + pad bounds w(tau_j) from above whenever every
// point of Q has a node within mesh_radius.
struct GrowthModulus {
  std::vector<double> tau_grid;
  std::vector<double> omega_values;
  std::string sampling;  // description of the sample set
  long samples = 0;
  double mesh_radius = 0.0;
  double pad = 0.0;  // M_f * mesh_radius

  // omega at the first grid node >= tau (0 for tau <= 0); nullopt past the
  // last node.
  std::optional<double> RoundedUp(double tau) const;
};

// v(x, y) = <s / ||s||_*, x - y>, and 0 for s = 0.
double VDelta(const ProximalSetup& setup, const DualVector& sub, const Point& x,
              const Point& x_star);

struct OmegaOptions {
  enum class Domain {
    // Points of R^n within tau of x*. The built-in functions are convex on
    // all of R^n, and the hyperplane point the growth bound relies on may
    // leave Q, so this is the domain the kLemma1 check uses by default.
    kAmbient,
    // Points of Q within tau of x*.
    kFeasibleSet,
  };
  Domain domain = Domain::kAmbient;
  // Nodes per axis of the tensor grid for dim <= 3 (>= 101).
  int grid_nodes = 201;
  // Quasi-random samples for dim > 3.
  long random_samples = 100000;
};

// Throws UnsupportedError without a reference optimum for the problem and
// ArgumentError for a non-increasing tau grid.
GrowthModulus EstimateOmega(const Problem& problem, const Point& x_star,
                            double f_star, std::vector<double> tau_grid,
                            const OmegaOptions& options = {});
// tau grid 0, D/n, ..., D for D = diameter of Q.
std::vector<double> DefaultTauGrid(const Problem& problem, int nodes = 101);

// f(x^k) - f* <= w(v(x^k, x*)) + delta_k + pad at every productive iterate.
std::vector<Certificate> CheckLemma1(const Problem& problem,
                                     const SolveResult& result,
                                     const GrowthModulus& modulus,
                                     double tolerance = kDefaultCertificateTolerance);

// Per step: h <p, x - z> <= h^2/2 ||p||_*^2 + V(z, x) - V(z, y) with z = x*.
// Weighted variant, non-productive steps additionally:
//   eps^2/2 <= V(x*, x^k) - V(x*, x^{k+1}).
std::vector<Certificate> CheckStepInequalities(
    const SolveResult& result, const Point& x_star, const ProximalSetup& setup,
    double tolerance = kDefaultCertificateTolerance);

// Terminal guarantees of the variant that produced `result`:
//   kWeighted:    f(x_hat) - f* <= eps + delta_f,  g(x_hat) <= eps M_g + delta_g
//   kAdaptive:    min_I v <= eps,  max_I g <= eps + delta_g,  N <= bound
//   kFixedBudget: min_I v <= eps,  max_I g <= M_g eps + delta_g
// delta_f / delta_g are maxima of the per-step reported deltas over I.
// Runs stopped at the iteration cap yield no certificates.
std::vector<Certificate> CheckTerminalGuarantees(
    const SolveResult& result, const Problem& problem,
    double tolerance = kDefaultCertificateTolerance);

// min_I f(x^k) - f* <= grad_at_star_norm eps + L/2 eps^2 + delta for a max of
// smooth components. Adaptive-variant results only.
Certificate CheckCorollary(const Problem& problem, const SolveResult& result,
                           double grad_at_star_norm,
                           double tolerance = kDefaultCertificateTolerance);

struct CertificateSummary {
  long passed = 0;
  long failed = 0;
  long unevaluable = 0;
};
CertificateSummary Summarize(const std::vector<Certificate>& certs);

}  // namespace imd

#endif  // IMD_ANALYSIS_H_
