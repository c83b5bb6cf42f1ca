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

#include "imd/proximal.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace imd {
namespace {

void CheckInSet(const FeasibleSet& set, const Point& x, const char* what) {
  CheckSameDim(x.dim(), set.dim(), what);
  if (!set.Contains(x)) {
    throw DomainError(std::string(what) + ": point is outside the feasible set");
  }
}

}  // namespace

double PrimalNorm(NormKind norm, std::span<const double> v) {
  double s = 0.0;
  if (norm == NormKind::kL2) {
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  for (double c : v) s += std::abs(c);
  return s;
}

double DualNorm(NormKind norm, const DualVector& p) {
  if (norm == NormKind::kL2) {
    double s = 0.0;
    for (double c : p.coords()) s += c * c;
    return std::sqrt(s);
  }
  double m = 0.0;
  for (double c : p.coords()) m = std::max(m, std::abs(c));
  return m;
}

double PrimalDistance(NormKind norm, const Point& x, const Point& y) {
  CheckSameDim(x.dim(), y.dim(), "PrimalDistance");
  std::vector<double> d(x.dim());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x[i] - y[i];
  return PrimalNorm(norm, d);
}

FeasibleSet FeasibleSet::Box(std::vector<double> lower,
                             std::vector<double> upper) {
  if (lower.empty()) throw ArgumentError("Box: dim must be >= 1");
  CheckSameDim(lower.size(), upper.size(), "Box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) ||
        lower[i] > upper[i]) {
      throw ArgumentError("Box: need finite lower <= upper in coordinate " +
                          std::to_string(i));
    }
  }
  const std::size_t dim = lower.size();
  return FeasibleSet(BoxSet{std::move(lower), std::move(upper)}, dim);
}

FeasibleSet FeasibleSet::Ball(std::vector<double> center, double radius) {
  if (center.empty()) throw ArgumentError("Ball: dim must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ArgumentError("Ball: radius must be positive");
  }
  const std::size_t dim = center.size();
  return FeasibleSet(BallSet{std::move(center), radius}, dim);
}

FeasibleSet FeasibleSet::Simplex(std::size_t dim) {
  if (dim == 0) throw ArgumentError("Simplex: dim must be >= 1");
  return FeasibleSet(SimplexSet{dim}, dim);
}

FeasibleSet::Kind FeasibleSet::kind() const {
  switch (shape_.index()) {
    case 0:
      return Kind::kBox;
    case 1:
      return Kind::kBall;
    default:
      return Kind::kSimplex;
  }
}

bool FeasibleSet::Contains(const Point& x) const {
  if (x.dim() != dim_) return false;
  if (const auto* b = box()) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] < b->lower[i] - kMembershipTolerance ||
          x[i] > b->upper[i] + kMembershipTolerance) {
        return false;
      }
    }
    return true;
  }
  if (const auto* b = ball()) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double d = x[i] - b->center[i];
      s += d * d;
    }
    return std::sqrt(s) <= b->radius + kMembershipTolerance;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] < -kSimplexSumTolerance) return false;
    sum += x[i];
  }
  return std::abs(sum - 1.0) <= kSimplexSumTolerance;
}

double FeasibleSet::Diameter(NormKind norm) const {
  if (const auto* b = box()) {
    std::vector<double> w(dim_);
    for (std::size_t i = 0; i < dim_; ++i) w[i] = b->upper[i] - b->lower[i];
    return PrimalNorm(norm, w);
  }
  if (const auto* b = ball()) {
    const double d = 2.0 * b->radius;
    return norm == NormKind::kL2 ? d : d * std::sqrt(static_cast<double>(dim_));
  }
  return norm == NormKind::kL1 ? 2.0 : std::sqrt(2.0);
}

double FeasibleSet::SupDualDistance(NormKind norm,
                                    std::span<const double> c) const {
  CheckSameDim(c.size(), dim_, "SupDualDistance");
  if (const auto* b = box()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double m =
          std::max(std::abs(b->upper[i] - c[i]), std::abs(b->lower[i] - c[i]));
      acc = norm == NormKind::kL2 ? acc + m * m : std::max(acc, m);
    }
    return norm == NormKind::kL2 ? std::sqrt(acc) : acc;
  }
  if (const auto* b = ball()) {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = b->center[i] - c[i];
    // ||.||_inf <= ||.||_2, so the radius term is the same for both duals.
    return DualNorm(norm, DualVector(d)) + b->radius;
  }
  double best = 0.0;
  for (std::size_t v = 0; v < dim_; ++v) {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = (i == v ? 1.0 : 0.0) - c[i];
    best = std::max(best, DualNorm(norm, DualVector(d)));
  }
  return best;
}

Point SamplePoint(const FeasibleSet& set, std::mt19937_64& rng) {
  const std::size_t n = set.dim();
  std::vector<double> x(n);
  if (const auto* b = set.box()) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::uniform_real_distribution<double>(b->lower[i], b->upper[i])(rng);
    }
    return Point(std::move(x));
  }
  if (const auto* b = set.ball()) {
    std::normal_distribution<double> normal;
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& c : x) {
        c = normal(rng);
        norm += c * c;
      }
      norm = std::sqrt(norm);
    } while (norm == 0.0);
    const double r =
        b->radius * std::pow(std::uniform_real_distribution<double>()(rng),
                             1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) x[i] = b->center[i] + r * x[i] / norm;
    return Point(std::move(x));
  }
  std::exponential_distribution<double> expo;
  double sum = 0.0;
  for (double& c : x) {
    c = expo(rng);
    sum += c;
  }
  for (double& c : x) c /= sum;
  return Point(std::move(x));
}

ProximalSetup ProximalSetup::Euclidean(FeasibleSet set,
                                       std::optional<Point> anchor) {
  if (set.kind() == FeasibleSet::Kind::kSimplex) {
    throw UnsupportedError(
        "Euclidean setup is available for boxes and balls only");
  }
  Point a = anchor ? *anchor
                   : (set.ball() ? Point(set.ball()->center)
                                 : Point::Zero(set.dim()));
  CheckSameDim(a.dim(), set.dim(), "ProximalSetup::Euclidean");
  const Point center = ProjectEuclidean(set, a.coords());
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = center[i] - a[i];
    s += d * d;
  }
  return ProximalSetup(Kind::kEuclidean, std::move(set), std::move(a),
                       -0.5 * s);
}

ProximalSetup ProximalSetup::Entropy(std::size_t dim) {
  FeasibleSet set = FeasibleSet::Simplex(dim);
  return ProximalSetup(Kind::kEntropy, std::move(set), Point::Zero(dim),
                       std::log(static_cast<double>(dim)));
}

Point ProjectEuclidean(const FeasibleSet& set, std::span<const double> v) {
  CheckSameDim(v.size(), set.dim(), "ProjectEuclidean");
  std::vector<double> y(v.begin(), v.end());
  if (const auto* b = set.box()) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = std::clamp(y[i], b->lower[i], b->upper[i]);
    }
    return Point(std::move(y));
  }
  if (const auto* b = set.ball()) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - b->center[i];
      s += d * d;
    }
    const double dist = std::sqrt(s);
    if (dist > b->radius) {
      const double scale = b->radius / dist;
      for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = b->center[i] + scale * (y[i] - b->center[i]);
      }
    }
    return Point(std::move(y));
  }
  throw UnsupportedError("Euclidean projection onto the simplex");
}

double ProxValue(const ProximalSetup& setup, const Point& x) {
  CheckInSet(setup.feasible_set(), x, "ProxValue");
  double s = 0.0;
  if (setup.kind() == ProximalSetup::Kind::kEuclidean) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const double d = x[i] - setup.anchor()[i];
      s += d * d;
    }
    return std::max(0.0, 0.5 * s + setup.prox_offset());
  }
  for (double c : x.coords()) {
    if (c > 0.0) s += c * std::log(c);
  }
  return std::max(0.0, s + setup.prox_offset());
}

double Bregman(const ProximalSetup& setup, const Point& y, const Point& x) {
  CheckInSet(setup.feasible_set(), y, "Bregman");
  CheckInSet(setup.feasible_set(), x, "Bregman");
  if (setup.kind() == ProximalSetup::Kind::kEuclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const double d = y[i] - x[i];
      s += d * d;
    }
    return 0.5 * s;
  }
  double kl = 0.0;
  double sum_y = 0.0;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!(x[i] > 0.0)) {
      throw DomainError("Bregman: entropy gradient undefined at a zero coordinate");
    }
    if (y[i] > 0.0) kl += y[i] * std::log(y[i] / x[i]);
    sum_y += y[i];
    sum_x += x[i];
  }
  return kl - sum_y + sum_x;
}

Point MirrorStep(const ProximalSetup& setup, const Point& x,
                 const DualVector& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ArgumentError("MirrorStep: step size must be positive and finite");
  }
  CheckSameDim(p.dim(), x.dim(), "MirrorStep");
  CheckInSet(setup.feasible_set(), x, "MirrorStep");
  const std::size_t n = x.dim();
  if (setup.kind() == ProximalSetup::Kind::kEuclidean) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i] - h * p[i];
    return ProjectEuclidean(setup.feasible_set(), v);
  }
  double p_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) {
      throw DomainError("MirrorStep: entropy iterate must be strictly positive");
    }
    p_min = std::min(p_min, p[i]);
  }
  // Shifting p by its minimum leaves the normalized update unchanged and keeps
  // every exponent <= 0.
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = x[i] * std::exp(-h * (p[i] - p_min));
    z += w[i];
  }
  for (std::size_t i = 0; i < n; ++i) w[i] = std::max(w[i] / z, kEntropyFloor);
  return Point(std::move(w));
}

Point ProxCenter(const ProximalSetup& setup) {
  if (setup.kind() == ProximalSetup::Kind::kEntropy) {
    return Point(std::vector<double>(setup.dim(),
                                     1.0 / static_cast<double>(setup.dim())));
  }
  return ProjectEuclidean(setup.feasible_set(), setup.anchor().coords());
}

}  // namespace imd
