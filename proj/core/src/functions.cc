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

#include "imd/functions.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace imd::functions {
namespace {

double Sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

ConvexFunction L1Distance(std::vector<double> c) {
  auto value = [c](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "L1Distance");
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += std::abs(x[i] - c[i]);
    return s;
  };
  auto sub = [c](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "L1Distance");
    std::vector<double> g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) g[i] = Sign(x[i] - c[i]);
    return DualVector(std::move(g));
  };
  return {std::move(value), std::move(sub)};
}

ConvexFunction LinfDistance(std::vector<double> c, double offset) {
  auto value = [c, offset](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "LinfDistance");
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      m = std::max(m, std::abs(x[i] - c[i]));
    }
    return m + offset;
  };
  auto sub = [c](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "LinfDistance");
    std::size_t arg = 0;
    double m = -1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double a = std::abs(x[i] - c[i]);
      if (a > m) {
        m = a;
        arg = i;
      }
    }
    std::vector<double> g(c.size(), 0.0);
    g[arg] = Sign(x[arg] - c[arg]);
    return DualVector(std::move(g));
  };
  return {std::move(value), std::move(sub)};
}

ConvexFunction Affine(std::vector<double> a, double b) {
  DualVector grad(a);
  auto value = [grad, b](const Point& x) { return Pairing(grad, x) + b; };
  auto sub = [grad](const Point& x) {
    CheckSameDim(x.dim(), grad.dim(), "Affine");
    return grad;
  };
  return {std::move(value), std::move(sub)};
}

ConvexFunction HalfSquaredDistance(std::vector<double> c) {
  auto value = [c](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "HalfSquaredDistance");
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double d = x[i] - c[i];
      s += d * d;
    }
    return 0.5 * s;
  };
  auto sub = [c](const Point& x) {
    CheckSameDim(x.dim(), c.size(), "HalfSquaredDistance");
    std::vector<double> g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) g[i] = x[i] - c[i];
    return DualVector(std::move(g));
  };
  return {std::move(value), std::move(sub)};
}

ConvexFunction Constant(std::size_t dim, double value) {
  return {[value](const Point&) { return value; },
          [dim](const Point& x) {
            CheckSameDim(x.dim(), dim, "Constant");
            return DualVector::Zero(dim);
          }};
}

ConvexFunction Scaled(ConvexFunction f, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw ArgumentError("Scaled: scale must be finite and >= 0");
  }
  if (s == 1.0) return f;
  auto value = [v = f.value, s](const Point& x) { return s * v(x); };
  auto sub = [g = f.subgradient, s](const Point& x) {
    std::vector<double> v = g(x).values();
    for (double& c : v) c *= s;
    return DualVector(std::move(v));
  };
  return {std::move(value), std::move(sub)};
}

std::shared_ptr<const MaxOfFunctions> MaxOfAffine(
    std::vector<std::vector<double>> rows, std::vector<double> offsets) {
  CheckSameDim(rows.size(), offsets.size(), "MaxOfAffine");
  std::vector<SmoothComponent> comps;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ConvexFunction f = Affine(rows[i], offsets[i]);
    comps.push_back({std::move(f.value), std::move(f.subgradient)});
  }
  return std::make_shared<const MaxOfFunctions>(
      std::move(comps), std::vector<double>(rows.size(), 0.0));
}

std::shared_ptr<const MaxOfFunctions> MaxOfQuadratics(
    std::vector<std::vector<double>> centers, std::vector<double> curvatures,
    std::vector<double> offsets) {
  CheckSameDim(centers.size(), curvatures.size(), "MaxOfQuadratics");
  CheckSameDim(centers.size(), offsets.size(), "MaxOfQuadratics");
  std::vector<SmoothComponent> comps;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double q = curvatures[i];
    const double b = offsets[i];
    if (!(q >= 0.0)) throw ArgumentError("MaxOfQuadratics: curvature < 0");
    ConvexFunction f = HalfSquaredDistance(centers[i]);
    comps.push_back(
        {[v = f.value, q, b](const Point& x) { return q * v(x) + b; },
         [g = f.subgradient, q](const Point& x) {
           std::vector<double> d = g(x).values();
           for (double& c : d) c *= q;
           return DualVector(std::move(d));
         }});
  }
  return std::make_shared<const MaxOfFunctions>(std::move(comps),
                                                std::move(curvatures));
}

}  // namespace imd::functions
