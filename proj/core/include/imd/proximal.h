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

#ifndef IMD_PROXIMAL_H_
#define IMD_PROXIMAL_H_

#include <cstddef>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "imd/vector.h"

namespace imd {

// Primal norm of the setup. The dual norm is its conjugate: L2 <-> L2 and
// L1 <-> Linf.
enum class NormKind { kL2, kL1 };

// Coordinate tolerances for set membership.
inline constexpr double kMembershipTolerance = 1e-10;
inline constexpr double kSimplexSumTolerance = 1e-12;
// Entropy iterates are clamped to at least this value after a mirror step.
inline constexpr double kEntropyFloor = 1e-15;

double PrimalNorm(NormKind norm, std::span<const double> v);
double DualNorm(NormKind norm, const DualVector& p);
// ||x - y|| in the primal norm.
double PrimalDistance(NormKind norm, const Point& x, const Point& y);

struct BoxSet {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct BallSet {
  std::vector<double> center;
  double radius = 1.0;
};

struct SimplexSet {
  std::size_t dim = 0;
};

// The feasible set Q. Box, Euclidean ball or probability simplex.
class FeasibleSet {
 public:
  enum class Kind { kBox, kBall, kSimplex };

  static FeasibleSet Box(std::vector<double> lower, std::vector<double> upper);
  static FeasibleSet Ball(std::vector<double> center, double radius);
  static FeasibleSet Simplex(std::size_t dim);

  Kind kind() const;
  std::size_t dim() const { return dim_; }
  const BoxSet* box() const { return std::get_if<BoxSet>(&shape_); }
  const BallSet* ball() const { return std::get_if<BallSet>(&shape_); }

  bool Contains(const Point& x) const;
  // Upper bound on max_{u,v in Q} ||u - v|| in the given primal norm.
  double Diameter(NormKind norm) const;
  // Upper bound on max_{x in Q} ||x - c||_*, with ||.||_* the dual norm of
  // `norm`. Bounds gradients of the form q (x - c).
  double SupDualDistance(NormKind norm, std::span<const double> c) const;

 private:
  FeasibleSet(std::variant<BoxSet, BallSet, SimplexSet> shape, std::size_t dim)
      : shape_(std::move(shape)), dim_(dim) {}

  std::variant<BoxSet, BallSet, SimplexSet> shape_;
  std::size_t dim_;
};

// Uniform sample from Q (rejection for the ball, Dirichlet(1) for the
// simplex).
Point SamplePoint(const FeasibleSet& set, std::mt19937_64& rng);

// A prox function d on Q together with the norm pair it is 1-strongly convex
// for. Two families:
//   Euclidean: d(x) = 1/2 ||x - a||_2^2 + offset on a box or ball,
//   Entropy:   d(x) = sum_i x_i ln x_i + ln n on the simplex (l1 / linf).
// The offset makes min_Q d = 0. Immutable.
class ProximalSetup {
 public:
  enum class Kind { kEuclidean, kEntropy };

  // `anchor` defaults to the ball center, or the origin for a box.
  static ProximalSetup Euclidean(FeasibleSet set,
                                 std::optional<Point> anchor = std::nullopt);
  static ProximalSetup Entropy(std::size_t dim);

  Kind kind() const { return kind_; }
  NormKind norm_kind() const {
    return kind_ == Kind::kEuclidean ? NormKind::kL2 : NormKind::kL1;
  }
  const FeasibleSet& feasible_set() const { return set_; }
  std::size_t dim() const { return set_.dim(); }
  const Point& anchor() const { return anchor_; }
  double prox_offset() const { return prox_offset_; }

 private:
  ProximalSetup(Kind kind, FeasibleSet set, Point anchor, double offset)
      : kind_(kind), set_(std::move(set)), anchor_(std::move(anchor)),
        prox_offset_(offset) {}

  Kind kind_;
  FeasibleSet set_;
  Point anchor_;  // Euclidean only.
  double prox_offset_;
};

// Euclidean projection onto a box or ball.
Point ProjectEuclidean(const FeasibleSet& set, std::span<const double> v);

// d(x). Throws DomainError when x is not in Q.
double ProxValue(const ProximalSetup& setup, const Point& x);

// V(y, x) = d(y) - d(x) - <grad d(x), y - x>. Throws DomainError when x or y
// is outside Q, or (entropy) when x has a zero coordinate.
double Bregman(const ProximalSetup& setup, const Point& y, const Point& x);

// argmin_{u in Q} <h p, u - x> + V(u, x).
Point MirrorStep(const ProximalSetup& setup, const Point& x,
                 const DualVector& p, double h);

// argmin_{x in Q} d(x).
Point ProxCenter(const ProximalSetup& setup);

inline double DualNorm(const ProximalSetup& setup, const DualVector& p) {
  return DualNorm(setup.norm_kind(), p);
}

}  // namespace imd

#endif  // IMD_PROXIMAL_H_
