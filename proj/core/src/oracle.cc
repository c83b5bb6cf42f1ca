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

#include "imd/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace imd {
namespace {

// splitmix64 finalizer.
std::uint64_t Mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t HashPoint(std::uint64_t seed, const Point& x) {
  std::uint64_t h = Mix(seed);
  for (double c : x.coords()) {
    // +0.0 and -0.0 name the same point.
    const double canonical = c == 0.0 ? 0.0 : c;
    h = Mix(h ^ std::bit_cast<std::uint64_t>(canonical));
  }
  return h;
}

// Uniform direction on the unit sphere of the dual norm.
std::vector<double> UnitDualDirection(std::size_t n, NormKind norm,
                                      std::mt19937_64& rng) {
  std::vector<double> u(n);
  if (norm == NormKind::kL2) {
    std::normal_distribution<double> normal;
    double s = 0.0;
    do {
      s = 0.0;
      for (double& c : u) {
        c = normal(rng);
        s += c * c;
      }
    } while (s == 0.0);
    s = std::sqrt(s);
    for (double& c : u) c /= s;
    return u;
  }
  // Linf sphere: pick a face uniformly, the rest of the coordinates uniformly
  // in [-1, 1].
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double& c : u) c = unif(rng);
  const std::size_t face =
      std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  u[face] = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
  return u;
}

}  // namespace

MaxOfFunctions::MaxOfFunctions(std::vector<SmoothComponent> components,
                               std::vector<double> lipschitz_grad_consts)
    : components_(std::move(components)),
      lipschitz_grad_consts_(std::move(lipschitz_grad_consts)) {
  if (components_.empty()) {
    throw ArgumentError("MaxOfFunctions: need at least one component");
  }
  CheckSameDim(components_.size(), lipschitz_grad_consts_.size(),
               "MaxOfFunctions");
  for (double l : lipschitz_grad_consts_) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw ArgumentError("MaxOfFunctions: L_i must be finite and >= 0");
    }
  }
}

double MaxOfFunctions::MaxLipschitzGradConst() const {
  return *std::max_element(lipschitz_grad_consts_.begin(),
                           lipschitz_grad_consts_.end());
}

std::vector<double> MaxOfFunctions::ComponentValues(const Point& x) const {
  std::vector<double> v(components_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = components_[i].value(x);
  return v;
}

double MaxOfFunctions::Value(const Point& x) const {
  const std::vector<double> v = ComponentValues(x);
  return *std::max_element(v.begin(), v.end());
}

DualVector MaxOfFunctions::ExactSubgradient(const Point& x) const {
  const std::vector<double> v = ComponentValues(x);
  // max_element returns the first maximizer.
  const auto j = std::max_element(v.begin(), v.end()) - v.begin();
  return components_[j].gradient(x);
}

Oracle::Oracle(ConvexFunction f, Answer answer, double delta_bound,
               std::optional<double> lipschitz_bound,
               std::shared_ptr<const MaxOfFunctions> max_structure)
    : function_(std::move(f)),
      answer_(std::move(answer)),
      delta_bound_(delta_bound),
      lipschitz_bound_(lipschitz_bound),
      max_structure_(std::move(max_structure)) {
  if (!(delta_bound_ >= 0.0)) throw ArgumentError("Oracle: delta_bound < 0");
  if (lipschitz_bound_ && !(*lipschitz_bound_ >= 0.0)) {
    throw ArgumentError("Oracle: lipschitz_bound < 0");
  }
}

Oracle Oracle::Exact(ConvexFunction f, std::optional<double> lipschitz_bound) {
  ConvexFunction fn = f;
  Answer answer = [f = std::move(f)](const Point& x) {
    return DeltaSubgradient{f.subgradient(x), 0.0, f.value(x)};
  };
  return Oracle(std::move(fn), std::move(answer), 0.0, lipschitz_bound,
                nullptr);
}

Oracle Oracle::Exact(std::shared_ptr<const MaxOfFunctions> f,
                     std::optional<double> lipschitz_bound) {
  if (!f) throw ArgumentError("Oracle::Exact: null max structure");
  ConvexFunction fn{[f](const Point& x) { return f->Value(x); },
                    [f](const Point& x) { return f->ExactSubgradient(x); }};
  Oracle oracle = Exact(std::move(fn), lipschitz_bound);
  oracle.max_structure_ = std::move(f);
  return oracle;
}

DeltaSubgradient Oracle::Evaluate(const Point& x) const {
  DeltaSubgradient s = answer_(x);
  CheckSameDim(s.vector.dim(), x.dim(), "Oracle::Evaluate");
  if (!(s.delta >= 0.0) || s.delta > delta_bound_) {
    throw std::logic_error("Oracle::Evaluate: reported delta " +
                           std::to_string(s.delta) + " outside [0, " +
                           std::to_string(delta_bound_) + "]");
  }
  return s;
}

Oracle Oracle::WithAnswer(Answer answer, double delta_bound,
                          std::optional<double> lipschitz_bound) const {
  return Oracle(function_, std::move(answer), delta_bound, lipschitz_bound,
                max_structure_);
}

DeltaSubgradient ExactSubgradient(const Oracle& oracle, const Point& x) {
  const ConvexFunction& f = oracle.function();
  return DeltaSubgradient{f.subgradient(x), 0.0, f.value(x)};
}

DeltaSubgradient InexactMaxSubgradient(const MaxOfFunctions& f, const Point& x,
                                       double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ArgumentError("InexactMaxSubgradient: delta must be finite and >= 0");
  }
  const std::vector<double> v = f.ComponentValues(x);
  const double top = *std::max_element(v.begin(), v.end());
  std::size_t pick = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (top - v[i] > delta) continue;
    if (pick == v.size() || v[i] < v[pick]) pick = i;
  }
  return DeltaSubgradient{f.component(pick).gradient(x), top - v[pick],
                          v[pick]};
}

Oracle InexactMaxOracle(std::shared_ptr<const MaxOfFunctions> f, double delta,
                        std::optional<double> lipschitz_bound) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ArgumentError("InexactMaxOracle: delta must be finite and >= 0");
  }
  Oracle exact = Oracle::Exact(f, lipschitz_bound);
  return exact.WithAnswer(
      [f, delta](const Point& x) { return InexactMaxSubgradient(*f, x, delta); },
      delta, lipschitz_bound);
}

Oracle PerturbedOracle(const Oracle& base, double noise_dual_norm,
                       double q_diameter, std::uint64_t seed, NormKind norm) {
  if (!(noise_dual_norm >= 0.0) || !std::isfinite(noise_dual_norm)) {
    throw ArgumentError("PerturbedOracle: noise_dual_norm must be >= 0");
  }
  if (!(q_diameter > 0.0) || !std::isfinite(q_diameter)) {
    throw ArgumentError("PerturbedOracle: q_diameter must be > 0");
  }
  if (noise_dual_norm == 0.0) return base;
  const double extra_delta = noise_dual_norm * q_diameter;
  std::optional<double> lipschitz = base.lipschitz_bound();
  if (lipschitz) *lipschitz += noise_dual_norm;
  Oracle::Answer answer = [base, noise_dual_norm, extra_delta, seed,
                           norm](const Point& x) {
    DeltaSubgradient s = base.Evaluate(x);
    std::mt19937_64 rng(HashPoint(seed, x));
    const std::vector<double> u = UnitDualDirection(x.dim(), norm, rng);
    std::vector<double> v = s.vector.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += noise_dual_norm * u[i];
    return DeltaSubgradient{DualVector(std::move(v)), s.delta + extra_delta,
                            s.value};
  };
  return base.WithAnswer(std::move(answer), base.delta_bound() + extra_delta,
                         lipschitz);
}

ConstraintEvaluation MaxConstraint(std::span<const Oracle> constraints,
                                   const Point& x, double delta) {
  if (constraints.empty()) {
    throw ArgumentError("MaxConstraint: empty constraint list");
  }
  if (!(delta >= 0.0)) throw ArgumentError("MaxConstraint: delta < 0");
  std::vector<DeltaSubgradient> subs;
  subs.reserve(constraints.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const Oracle& g : constraints) {
    subs.push_back(g.Evaluate(x));
    top = std::max(top, subs.back().value);
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const double gap = top - subs[i].value;
    if (gap > delta) continue;
    DeltaSubgradient s = std::move(subs[i]);
    s.delta += gap;
    s.value = top;
    return ConstraintEvaluation{top, std::move(s), i};
  }
  throw std::logic_error("MaxConstraint: no admissible component");
}

}  // namespace imd
