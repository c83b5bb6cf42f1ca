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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "imd/errors.h"
#include "imd/functions.h"
#include "imd/problems.h"

namespace imd {
namespace {

ProximalSetup Box(double r) {
  return ProximalSetup::Euclidean(FeasibleSet::Box({-r, -r}, {r, r}));
}

Problem Unconstrained(ConvexFunction f, double lipschitz, double r) {
  return Problem(Oracle::Exact(std::move(f), lipschitz),
                 {Oracle::Exact(functions::Constant(2, -1.0), 0.0)}, Box(r),
                 1.0, 1.0, ReferenceOptimum{Point({0.0, 0.0}), 0.0, "analytic", 0.0});
}

long Failures(const std::vector<Certificate>& certs) {
  return Summarize(certs).failed;
}

TEST(VDeltaTest, NormalisedPairing) {
  const ProximalSetup s = Box(1.0);
  EXPECT_DOUBLE_EQ(VDelta(s, DualVector({2.0, 0.0}), Point({1.0, 0.0}),
                          Point({0.0, 0.0})),
                   1.0);
  EXPECT_DOUBLE_EQ(VDelta(s, DualVector({3.0, 4.0}), Point({1.0, 1.0}),
                          Point({0.0, 0.0})),
                   1.4);
}

TEST(VDeltaTest, ZeroSubgradientGivesZero) {
  EXPECT_EQ(VDelta(Box(1.0), DualVector({0.0, 0.0}), Point({1.0, 0.0}),
                   Point({0.0, 0.0})),
            0.0);
}

TEST(VDeltaTest, EntropyUsesMaxNorm) {
  const ProximalSetup s = ProximalSetup::Entropy(3);
  const double third = 1.0 / 3.0;
  EXPECT_NEAR(VDelta(s, DualVector({1.0, 2.0, 3.0}), Point({third, third, third}),
                     Point({1.0, 0.0, 0.0})),
              1.0 / 3.0, 1e-15);
}

TEST(GrowthModulusTest, L1NormOverEuclideanBall) {
  // max{||x||_1 : ||x||_2 <= 1} = sqrt(2).
  const Problem p = Unconstrained(functions::L1Distance({0.0, 0.0}),
                                  std::sqrt(2.0), 2.0);
  const GrowthModulus gm =
      EstimateOmega(p, Point({0.0, 0.0}), 0.0, {0.0, 0.5, 1.0});
  ASSERT_EQ(gm.omega_values.size(), 3u);
  EXPECT_EQ(gm.omega_values[0], 0.0);
  EXPECT_GE(gm.omega_values[2] + gm.pad, std::sqrt(2.0));
  EXPECT_LE(gm.omega_values[2], std::sqrt(2.0) + 2.0 * gm.pad);
  EXPECT_NEAR(gm.omega_values[1], std::sqrt(2.0) / 2.0, 2.0 * gm.pad);
}

TEST(GrowthModulusTest, LinearFunctionGrowsByItsNorm) {
  const Problem p = Unconstrained(functions::Affine({3.0, 4.0}, 0.0), 5.0, 2.0);
  const GrowthModulus gm = EstimateOmega(p, Point({0.0, 0.0}), 0.0, {0.0, 1.0});
  EXPECT_GE(gm.omega_values[1] + gm.pad, 5.0);
  EXPECT_LE(gm.omega_values[1], 5.0 + 2.0 * gm.pad);
}

TEST(GrowthModulusTest, RoundedUpLooksUpNextNode) {
  GrowthModulus gm;
  gm.tau_grid = {0.0, 0.5, 1.0};
  gm.omega_values = {0.0, 2.0, 3.0};
  EXPECT_EQ(gm.RoundedUp(0.0), 0.0);
  EXPECT_EQ(gm.RoundedUp(-1.0), 0.0);
  EXPECT_EQ(gm.RoundedUp(0.2), 2.0);
  EXPECT_EQ(gm.RoundedUp(0.5), 2.0);
  EXPECT_EQ(gm.RoundedUp(0.7), 3.0);
  EXPECT_FALSE(gm.RoundedUp(1.01).has_value());
}

TEST(GrowthModulusTest, RejectsBadInputs) {
  const Problem p = Unconstrained(functions::L1Distance({0.0, 0.0}), 2.0, 1.0);
  EXPECT_THROW(EstimateOmega(p, Point({0.0, 0.0}), 0.0, {0.0, 1.0, 0.5}),
               ArgumentError);
  const Problem no_ref(Oracle::Exact(functions::L1Distance({0.0, 0.0}), 2.0),
                       {Oracle::Exact(functions::Constant(2, -1.0), 0.0)},
                       Box(1.0), 1.0, 1.0);
  EXPECT_THROW(EstimateOmega(no_ref, Point({0.0, 0.0}), 0.0, {0.0, 1.0}),
               UnsupportedError);
}

TEST(Lemma1Test, HoldsAlongCatalogRuns) {
  for (const char* name : {"p1-l1-box", "p3-linear-simplex", "p4-max-quadratics"}) {
    OracleOptions o;
    o.objective_delta = 0.05;
    o.seed = 5;
    const Problem p = BuildProblem(FindBuiltin(name), o);
    const ReferenceOptimum& ref = *p.reference();
    const GrowthModulus gm = EstimateOmega(p, ref.x, ref.f, DefaultTauGrid(p));
    for (Variant v : {Variant::kWeighted, Variant::kAdaptive, Variant::kFixedBudget}) {
      const std::vector<Certificate> c = CheckLemma1(p, Solve(p, v, 0.1), gm);
      EXPECT_FALSE(c.empty());
      EXPECT_EQ(Failures(c), 0) << name << " " << ToString(v);
      EXPECT_EQ(Summarize(c).unevaluable, 0) << name;
    }
  }
}

TEST(Lemma1Test, WrongOptimalValueIsCaught) {
  ProblemSpec spec = FindBuiltin("p1-l1-box");
  spec.reference->f = -1.0;
  const Problem p = BuildProblem(spec);
  const GrowthModulus gm =
      EstimateOmega(p, p.reference()->x, 0.0, DefaultTauGrid(p));
  EXPECT_GT(Failures(CheckLemma1(p, SolveAdaptive(p, 0.1), gm)), 0);
}

TEST(Lemma1Test, FeasibleSetModulusUnderestimatesOnSimplex) {
  // Restricting the sample to Q misses the points off the simplex that the
  // growth bound is taken over; the check then fails on this problem.
  const Problem p = BuildProblem(FindBuiltin("p3-linear-simplex"));
  const ReferenceOptimum& ref = *p.reference();
  OmegaOptions o;
  o.domain = OmegaOptions::Domain::kFeasibleSet;
  const GrowthModulus restricted =
      EstimateOmega(p, ref.x, ref.f, DefaultTauGrid(p), o);
  const GrowthModulus ambient = EstimateOmega(p, ref.x, ref.f, DefaultTauGrid(p));
  const SolveResult r = SolveAdaptive(p, 0.1);
  EXPECT_GT(Failures(CheckLemma1(p, r, restricted)), 0);
  EXPECT_EQ(Failures(CheckLemma1(p, r, ambient)), 0);
}

SolveResult OneStep(double h) {
  SolveResult r;
  r.variant = Variant::kAdaptive;
  r.eps = 0.1;
  IterationRecord rec;
  rec.productive = true;
  rec.h = h;
  rec.x = Point({0.0, 0.0});
  rec.direction = DualVector({1.0, 0.0});
  r.trace.push_back(rec);
  // Unconstrained step from the origin with h = 0.5.
  r.final_iterate = Point({-0.5, 0.0});
  return r;
}

TEST(StepInequalityTest, InteriorStepIsAnEquality) {
  const std::vector<Certificate> c =
      CheckStepInequalities(OneStep(0.5), Point({0.3, 0.2}), Box(1.0));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].satisfied);
  EXPECT_NEAR(c[0].lhs, -0.15, 1e-15);
  EXPECT_NEAR(c[0].slack, 0.0, 1e-15);
}

TEST(StepInequalityTest, WrongStepSizeIsCaught) {
  const std::vector<Certificate> c =
      CheckStepInequalities(OneStep(0.25), Point({0.3, 0.2}), Box(1.0));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].failed());
}

TEST(StepInequalityTest, HoldOnCatalogRunsIncludingBregmanDrop) {
  for (const ProblemSpec& spec : BuiltinCatalog()) {
    OracleOptions o;
    o.objective_delta = 0.05;
    o.constraint_delta = 0.05;
    o.seed = 8;
    const Problem p = BuildProblem(spec, o);
    for (Variant v : {Variant::kWeighted, Variant::kAdaptive, Variant::kFixedBudget}) {
      const SolveResult r = Solve(p, v, 0.1);
      const std::vector<Certificate> c =
          CheckStepInequalities(r, p.reference()->x, p.setup());
      EXPECT_EQ(Failures(c), 0) << spec.name << " " << ToString(v);
      long drops = 0;
      for (const Certificate& x : c) {
        drops += x.kind == CertificateKind::kNonproductiveDrop;
      }
      EXPECT_EQ(drops, v == Variant::kWeighted ? r.nonproductive_count : 0);
    }
  }
}

TEST(StepInequalityTest, ShrunkBregmanDropIsCaught) {
  const Problem p = BuildProblem(FindBuiltin("p4-max-quadratics"));
  SolveResult r = SolveWeighted(p, 0.1);
  bool corrupted = false;
  for (std::size_t i = 0; i + 1 < r.trace.size() && !corrupted; ++i) {
    if (!r.trace[i].productive) {
      // Make the next iterate coincide with the current one.
      r.trace[i + 1].x = r.trace[i].x;
      corrupted = true;
    }
  }
  ASSERT_TRUE(corrupted);
  long drop_failures = 0;
  for (const Certificate& c :
       CheckStepInequalities(r, p.reference()->x, p.setup())) {
    drop_failures += c.kind == CertificateKind::kNonproductiveDrop && c.failed();
  }
  EXPECT_GT(drop_failures, 0);
}

TEST(TerminalGuaranteeTest, KindsPerVariant) {
  const Problem p = BuildProblem(FindBuiltin("p5-maxaffine-active"));
  const auto kinds = [&](Variant v) {
    std::vector<CertificateKind> k;
    for (const Certificate& c : CheckTerminalGuarantees(Solve(p, v, 0.1), p)) {
      EXPECT_TRUE(c.satisfied) << c.quantity;
      k.push_back(c.kind);
    }
    return k;
  };
  using K = CertificateKind;
  EXPECT_EQ(kinds(Variant::kWeighted), (std::vector<K>{K::kTheorem1, K::kTheorem1}));
  EXPECT_EQ(kinds(Variant::kAdaptive),
            (std::vector<K>{K::kTheorem2, K::kTheorem2, K::kIterationBound}));
  EXPECT_EQ(kinds(Variant::kFixedBudget),
            (std::vector<K>{K::kTheorem3, K::kTheorem3}));
}

TEST(TerminalGuaranteeTest, WeightedRightHandSides) {
  OracleOptions o;
  o.objective_delta = 0.05;
  o.seed = 3;
  const Problem p = BuildProblem(FindBuiltin("p1-l1-box"), o);
  const SolveResult r = SolveWeighted(p, 0.2);
  const std::vector<Certificate> c = CheckTerminalGuarantees(r, p);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0].rhs, 0.2 + 0.05);
  EXPECT_DOUBLE_EQ(c[1].rhs, 0.2 * p.m_g());
  EXPECT_TRUE(c[0].satisfied);
  EXPECT_TRUE(c[1].satisfied);
}

TEST(TerminalGuaranteeTest, NothingCertifiedAtCap) {
  const Problem p = BuildProblem(FindBuiltin("p1-l1-box"));
  SolveResult r = SolveAdaptive(p, 0.1);
  r.stop_reason = StopReason::kIterationCap;
  EXPECT_TRUE(CheckTerminalGuarantees(r, p).empty());
}

TEST(TerminalGuaranteeTest, InflatedConstraintIsCaught) {
  const Problem p = BuildProblem(FindBuiltin("p4-max-quadratics"));
  SolveResult r = SolveFixedBudget(p, 0.1);
  for (IterationRecord& rec : r.trace) {
    if (rec.productive) {
      rec.g_value = 1.0;
      break;
    }
  }
  EXPECT_GT(Failures(CheckTerminalGuarantees(r, p)), 0);
}

// max(x1, x2 - 0.5) on [-1,1]^2 with the slack constraint x1 - 2 <= 0;
// f* = -1 with gradient (1, 0) at the optimum.
Problem SlackMaxProblem() {
  ProblemSpec spec;
  spec.name = "slack-max";
  spec.dimension = 2;
  spec.objective.kind = FunctionSpec::Kind::kMaxAffine;
  spec.objective.rows = {{1.0, 0.0}, {0.0, 1.0}};
  spec.objective.offsets = {0.0, -0.5};
  FunctionSpec g;
  g.kind = FunctionSpec::Kind::kAffine;
  g.a = {1.0, 0.0};
  g.b = -2.0;
  spec.constraints = {g};
  spec.setup.lower = {-1.0, -1.0};
  spec.setup.upper = {1.0, 1.0};
  spec.m_g = 1.0;
  spec.theta0_sq = 1.0;
  spec.reference = ReferenceSpec{{-1.0, -1.0}, -1.0};
  return BuildProblem(spec);
}

TEST(CorollaryTest, AffineComponentsGiveLinearBound) {
  const Problem p = SlackMaxProblem();
  for (double eps : {0.5, 0.1}) {
    const Certificate c = CheckCorollary(p, SolveAdaptive(p, eps), 1.0);
    EXPECT_TRUE(c.satisfied) << eps;
    EXPECT_TRUE(c.evaluable);
    EXPECT_DOUBLE_EQ(c.rhs, eps);
  }
}

TEST(CorollaryTest, HoldsOnMaxOfQuadratics) {
  const Problem p = BuildProblem(FindBuiltin("p4-max-quadratics"));
  for (double eps : {0.1, 0.2}) {
    const Certificate c = CheckCorollary(p, SolveAdaptive(p, eps), std::sqrt(0.2));
    EXPECT_TRUE(c.satisfied) << eps;
    EXPECT_DOUBLE_EQ(c.rhs, std::sqrt(0.2) * eps + 0.5 * eps * eps);
  }
}

TEST(CorollaryTest, RejectsInapplicableInputs) {
  const Problem p = SlackMaxProblem();
  EXPECT_THROW(CheckCorollary(p, SolveWeighted(p, 0.1), 1.0), UnsupportedError);
  const Problem linear = BuildProblem(FindBuiltin("p7-ball-linear"));
  EXPECT_THROW(CheckCorollary(linear, SolveAdaptive(linear, 0.1), 1.0),
               UnsupportedError);
}

TEST(CertificateTest, ToleranceAndSummary) {
  const Certificate ok =
      MakeCertificate(CertificateKind::kTheorem1, "x", 1.0 + 5e-9, 1.0, 1e-8);
  const Certificate bad =
      MakeCertificate(CertificateKind::kTheorem1, "x", 1.0 + 2e-8, 1.0, 1e-8);
  EXPECT_TRUE(ok.satisfied);
  EXPECT_FALSE(bad.satisfied);
  EXPECT_NEAR(ok.slack, -5e-9, 1e-15);
  Certificate unev = bad;
  unev.evaluable = false;
  const CertificateSummary s = Summarize({ok, bad, unev});
  EXPECT_EQ(s.passed, 1);
  EXPECT_EQ(s.failed, 1);
  EXPECT_EQ(s.unevaluable, 1);
}

}  // namespace
}  // namespace imd
