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

#ifndef IMD_VECTOR_H_
#define IMD_VECTOR_H_

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "imd/errors.h"

namespace imd {
namespace internal {

// Finite, non-empty coordinate vector. The tag keeps primal points and
// dual-space vectors from being mixed up at compile time.
template <typename Tag>
class CoordinateVector {
 public:
  CoordinateVector() = default;
  explicit CoordinateVector(std::vector<double> coords)
      : coords_(std::move(coords)) {
    Validate();
  }
  CoordinateVector(std::initializer_list<double> coords) : coords_(coords) {
    Validate();
  }

  static CoordinateVector Zero(std::size_t dim) {
    return CoordinateVector(std::vector<double>(dim, 0.0));
  }

  std::size_t dim() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }

  bool IsZero() const {
    for (double c : coords_) {
      if (c != 0.0) return false;
    }
    return true;
  }

  friend bool operator==(const CoordinateVector&,
                         const CoordinateVector&) = default;

 private:
  void Validate() const {
    if (coords_.empty()) throw ArgumentError("vector must have dim >= 1");
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw ArgumentError("vector has a non-finite coordinate");
      }
    }
  }

  std::vector<double> coords_;
};

}  // namespace internal

// A point of the primal space.
using Point = internal::CoordinateVector<struct PointTag>;
// An element of the dual space: subgradients and step directions.
using DualVector = internal::CoordinateVector<struct DualVectorTag>;

inline void CheckSameDim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ArgumentError(std::string(what) + ": dimension mismatch (" +
                        std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// <p, x>.
inline double Pairing(const DualVector& p, const Point& x) {
  CheckSameDim(p.dim(), x.dim(), "Pairing");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += p[i] * x[i];
  return s;
}

// <p, x - z>, accumulated coordinatewise.
inline double Pairing(const DualVector& p, const Point& x, const Point& z) {
  CheckSameDim(p.dim(), x.dim(), "Pairing");
  CheckSameDim(x.dim(), z.dim(), "Pairing");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += p[i] * (x[i] - z[i]);
  return s;
}

}  // namespace imd

#endif  // IMD_VECTOR_H_
