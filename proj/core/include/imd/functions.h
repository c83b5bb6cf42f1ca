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

#ifndef IMD_FUNCTIONS_H_
#define IMD_FUNCTIONS_H_

#include <memory>
#include <vector>

#include "imd/oracle.h"

// Built-in convex functions. Subgradients at kinks use fixed choices:
// sign(0) = 0 for l1 terms and the smallest maximizing index elsewhere.
namespace imd::functions {

// ||x - c||_1.
ConvexFunction L1Distance(std::vector<double> c);
// ||x - c||_inf + offset.
ConvexFunction LinfDistance(std::vector<double> c, double offset);
// <a, x> + b.
ConvexFunction Affine(std::vector<double> a, double b);
// 1/2 ||x - c||_2^2.
ConvexFunction HalfSquaredDistance(std::vector<double> c);
ConvexFunction Constant(std::size_t dim, double value);
// s * f(x), s >= 0.
ConvexFunction Scaled(ConvexFunction f, double s);

// max_i <a_i, x> + b_i; all L_i = 0.
std::shared_ptr<const MaxOfFunctions> MaxOfAffine(
    std::vector<std::vector<double>> rows, std::vector<double> offsets);

// max_i q_i/2 ||x - c_i||_2^2 + b_i. L_i = q_i for both norm pairs used here.
std::shared_ptr<const MaxOfFunctions> MaxOfQuadratics(
    std::vector<std::vector<double>> centers, std::vector<double> curvatures,
    std::vector<double> offsets);

}  // namespace imd::functions

#endif  // IMD_FUNCTIONS_H_
