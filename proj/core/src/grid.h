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

#ifndef IMD_SRC_GRID_H_
#define IMD_SRC_GRID_H_

#include <cstddef>
#include <vector>

namespace imd::internal {

// All nodes of a tensor grid with `nodes` points per axis over [lo, hi].
template <typename Fn>
void ForEachTensorNode(const std::vector<double>& lo,
                       const std::vector<double>& hi, int nodes, Fn&& fn) {
  const std::size_t n = lo.size();
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = nodes == 1 ? lo[i]
                        : lo[i] + (hi[i] - lo[i]) * idx[i] / (nodes - 1);
    }
    fn(x);
    std::size_t i = 0;
    while (i < n && ++idx[i] == nodes) idx[i++] = 0;
    if (i == n) return;
  }
}

// Lattice points x = m / divisions with m integer, m >= 0, sum m = divisions.
template <typename Fn>
void ForEachSimplexNode(std::size_t n, int divisions, Fn&& fn) {
  std::vector<int> m(n, 0);
  std::vector<double> x(n);
  // Recursive enumeration of compositions of `divisions` into n parts.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      m[i] = left;
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = static_cast<double>(m[j]) / divisions;
      }
      fn(x);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      m[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, divisions);
}

}  // namespace imd::internal

#endif  // IMD_SRC_GRID_H_
