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


#include <gtest/gtest.h>

#include "imd/proximal.h"
#include "support/properties.h"

namespace imd::testing {
namespace {

class SetupPropertyTest : public ::testing::TestWithParam<int> {
 protected:
  const std::pair<std::string, ProximalSetup>& Setup() const {
    static const auto setups = StandardSetups();
    return setups[GetParam()];
  }
};

TEST_P(SetupPropertyTest, StronglyConvexWithModulusOne) {
  const PropertyReport r = CheckStrongConvexity(Setup().second, 10000, 101);
  EXPECT_EQ(r.samples, 10000);
  EXPECT_EQ(r.violations, 0) << Setup().first << " worst " << r.worst;
}

TEST_P(SetupPropertyTest, MirrorStepBeatsEveryGridNode) {
  const PropertyReport r = CheckMirrorStepOptimality(Setup().second, 1000, 61, 102);
  EXPECT_EQ(r.samples, 1000);
  EXPECT_EQ(r.violations, 0) << Setup().first << " worst " << r.worst;
}

TEST_P(SetupPropertyTest, ThreePointInequality) {
  const PropertyReport r = CheckThreePoint(Setup().second, 5000, 103);
  EXPECT_GT(r.samples, 4000);
  EXPECT_EQ(r.violations, 0) << Setup().first << " worst " << r.worst;
}

std::string SetupName(const ::testing::TestParamInfo<int>& info) {
  static const char* const kNames[] = {"Box", "Ball", "Simplex"};
  return kNames[info.param];
}

INSTANTIATE_TEST_SUITE_P(AllSetups, SetupPropertyTest, ::testing::Values(0, 1, 2),
                         SetupName);

TEST(DualNormPropertyTest, AxiomsForBothNorms) {
  for (NormKind norm : {NormKind::kL2, NormKind::kL1}) {
    for (std::size_t dim : {1u, 2u, 5u}) {
      const PropertyReport r = CheckDualNormAxioms(norm, dim, 1000, 104 + dim);
      EXPECT_EQ(r.violations, 0) << dim << " worst " << r.worst;
    }
  }
}

TEST(GridOverTest, CountsNodes) {
  EXPECT_EQ(GridOver(FeasibleSet::Box({0.0, 0.0}, {1.0, 1.0}), 11).size(), 121u);
  // Lattice points of the 2-simplex with 10 divisions: C(12, 2).
  EXPECT_EQ(GridOver(FeasibleSet::Simplex(3), 11).size(), 66u);
  const auto ball = GridOver(FeasibleSet::Ball({0.0, 0.0}, 1.0), 3);
  EXPECT_EQ(ball.size(), 5u);
}

}  // namespace
}  // namespace imd::testing
