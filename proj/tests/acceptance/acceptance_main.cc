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


// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "imd/analysis.h"
#include "imd/cli/cli.h"
#include "imd/cli/run_io.h"
#include "imd/problems.h"
#include "imd/solver.h"
#include "support/properties.h"
#include "support/reference_loop.h"

namespace imd {
namespace {

constexpr double kTol = 1e-8;
constexpr Variant kVariants[] = {Variant::kWeighted, Variant::kAdaptive,
                                 Variant::kFixedBudget};

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Problem Build(const ProblemSpec& spec, double delta, std::uint64_t seed) {
  OracleOptions o;
  o.objective_delta = delta;
  o.seed = seed;
  return BuildProblem(spec, o);
}

// Productive records including the zero-subgradient stopping point.
std::vector<const IterationRecord*> Productive(const SolveResult& r) {
  std::vector<const IterationRecord*> out;
  for (const IterationRecord& rec : r.trace) {
    if (rec.productive) out.push_back(&rec);
  }
  if (r.terminal) out.push_back(&*r.terminal);
  return out;
}

double MaxNorm(const DualVector& p) {
  double m = 0.0;
  for (double c : p.coords()) m = std::max(m, std::abs(c));
  return m;
}

// <p / ||p||_*, x - x*> computed here rather than through the library.
double NormalisedGap(const ProximalSetup& s, const DualVector& p, const Point& x,
                     const Point& xs) {
  double dot = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    dot += p[i] * (x[i] - xs[i]);
    sq += p[i] * p[i];
  }
  const double norm =
      s.kind() == ProximalSetup::Kind::kEntropy ? MaxNorm(p) : std::sqrt(sq);
  return norm == 0.0 ? 0.0 : dot / norm;
}

Verdict IterationBoundCriterion() {
  std::mt19937_64 rng(20261016);
  const auto& cat = BuiltinCatalog();
  const double eps_values[] = {0.05, 0.1, 0.2};
  const double delta_values[] = {0.0, 0.05};
  long met = 0, zero_sub = 0, cap = 0, violations = 0;
  for (int run = 0; run < 50; ++run) {
    const ProblemSpec& spec = cat[rng() % cat.size()];
    const double eps = eps_values[rng() % 3];
    const double delta = delta_values[rng() % 2];
    const std::uint64_t seed = rng();
    const Problem p = Build(spec, delta, seed);
    const SolveResult r = SolveAdaptive(p, eps);
    const long bound = IterationBound(p.m_g(), p.theta0_sq(), eps);
    switch (r.stop_reason) {
      case StopReason::kCriterionMet: ++met; break;
      case StopReason::kZeroObjectiveSubgradient: ++zero_sub; break;
      case StopReason::kIterationCap: ++cap; break;
    }
    if (r.iterations > bound) ++violations;
  }
  // A zero delta-subgradient at a productive point certifies the point
  // itself, so that exit is accepted alongside the stopping rule.
  return {cap == 0 && violations == 0,
          Fmt("50 runs: stop_rule=%ld zero_subgradient=%ld cap=%ld "
              "bound_violations=%ld",
              met, zero_sub, cap, violations)};
}

Verdict TerminalCriterion() {
  long runs = 0, checks = 0, failures = 0;
  std::string first;
  for (const ProblemSpec& spec : BuiltinCatalog()) {
    for (Variant v : kVariants) {
      for (double eps : {0.05, 0.1, 0.2}) {
        for (double delta : {0.0, 0.05}) {
          const Problem p = Build(spec, delta, 1);
          const SolveResult r = Solve(p, v, eps);
          const ReferenceOptimum& ref = *p.reference();
          ++runs;
          const auto check = [&](bool ok, const char* what, double lhs, double rhs) {
            ++checks;
            if (!ok) {
              ++failures;
              if (first.empty()) {
                first = Fmt(" first: %s %s eps=%g delta=%g %s %.6g > %.6g",
                            spec.name.c_str(), std::string(ToString(v)).c_str(),
                            eps, delta, what, lhs, rhs);
              }
            }
          };
          const auto prod = Productive(r);
          check(r.stop_reason != StopReason::kIterationCap && !prod.empty(),
                "certified_exit", 0, 0);
          if (prod.empty()) continue;
          double delta_max = 0.0, max_g = -std::numeric_limits<double>::infinity();
          double min_v = std::numeric_limits<double>::infinity();
          for (const IterationRecord* rec : prod) {
            delta_max = std::max(delta_max, rec->f_delta);
            max_g = std::max(max_g, p.ConstraintValue(rec->x));
            min_v = std::min(min_v, NormalisedGap(p.setup(), rec->direction,
                                                  rec->x, ref.x));
          }
          switch (v) {
            case Variant::kWeighted: {
              const double gap = p.objective().Value(r.output_point) - ref.f;
              const double rhs_f = eps + delta_max + kTol + ref.error_bound;
              check(gap <= rhs_f, "f_gap", gap, rhs_f);
              const double g = p.ConstraintValue(r.output_point);
              check(g <= eps * p.m_g() + kTol, "g", g, eps * p.m_g() + kTol);
              break;
            }
            case Variant::kAdaptive:
              check(min_v <= eps + kTol, "min_v", min_v, eps + kTol);
              check(max_g <= eps + kTol, "max_g", max_g, eps + kTol);
              break;
            case Variant::kFixedBudget: {
              const double rhs = p.m_g() * eps + delta_max + kTol;
              check(max_g <= rhs, "max_g", max_g, rhs);
              break;
            }
          }
        }
      }
    }
  }
  return {failures == 0,
          Fmt("%ld runs, %ld checks, %ld failures", runs, checks, failures) + first};
}

Verdict StepCriterion() {
  long steps = 0, drops = 0, failures = 0, controls = 0;
  bool controls_caught = true;
  for (const ProblemSpec& spec : BuiltinCatalog()) {
    for (Variant v : kVariants) {
      for (double delta : {0.0, 0.05}) {
        const Problem p = Build(spec, delta, 2);
        SolveResult r = Solve(p, v, 0.1);
        for (const Certificate& c :
             CheckStepInequalities(r, p.reference()->x, p.setup(), kTol)) {
          (c.kind == CertificateKind::kLemma2Step ? steps : drops)++;
          failures += c.failed();
        }
        if (r.trace.size() < 2) continue;
        // Negative control 1: teleport the iterate after the middle step to
        // the sampled point of Q farthest from x* in Bregman divergence.
        SolveResult bad = r;
        {
          std::mt19937_64 rng(99);
          Point far = SamplePoint(p.setup().feasible_set(), rng);
          for (int t = 0; t < 1000; ++t) {
            Point y = SamplePoint(p.setup().feasible_set(), rng);
            if (Bregman(p.setup(), p.reference()->x, y) >
                Bregman(p.setup(), p.reference()->x, far)) {
              far = std::move(y);
            }
          }
          bad.trace[bad.trace.size() / 2].x = std::move(far);
        }
        long caught = 0;
        for (const Certificate& c :
             CheckStepInequalities(bad, p.reference()->x, p.setup(), kTol)) {
          caught += c.failed();
        }
        // Negative control 2: freeze the iterate after a non-productive step.
        long caught_drop = 1;
        if (v == Variant::kWeighted && r.nonproductive_count > 0) {
          bad = r;
          for (std::size_t i = 0; i + 1 < bad.trace.size(); ++i) {
            if (!bad.trace[i].productive) {
              bad.trace[i + 1].x = bad.trace[i].x;
              break;
            }
          }
          caught_drop = 0;
          for (const Certificate& c :
               CheckStepInequalities(bad, p.reference()->x, p.setup(), kTol)) {
            caught_drop += c.kind == CertificateKind::kNonproductiveDrop && c.failed();
          }
        }
        controls_caught = controls_caught && caught > 0 && caught_drop > 0;
        controls += 1 + (v == Variant::kWeighted && r.nonproductive_count > 0);
      }
    }
  }
  return {failures == 0 && controls_caught,
          Fmt("%ld step checks, %ld drop checks, %ld failures; %ld corrupted "
              "traces %s",
              steps, drops, failures, controls,
              controls_caught ? "all rejected" : "NOT all rejected")};
}

bool SameBits(double a, double b) {
  return std::memcmp(&a, &b, sizeof a) == 0;
}

bool SameBits(const std::vector<double>& a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!SameBits(a[i], b[i])) return false;
  }
  return true;
}

Verdict ReductionCriterion() {
  long runs = 0, records = 0, mismatches = 0;
  std::string first;
  for (const ProblemSpec& spec : BuiltinCatalog()) {
    const Problem p = BuildProblem(spec);
    for (Variant v : kVariants) {
      for (double eps : {0.05, 0.1, 0.2}) {
        const SolveResult r = Solve(p, v, eps);
        const testing::RefRun ref = testing::ReferenceSolve(spec, v, eps);
        ++runs;
        bool ok = r.trace.size() == ref.steps.size() &&
                  SameBits(ref.output, r.output_point.coords()) &&
                  SameBits(ref.final_x, r.final_iterate.coords()) &&
                  r.terminal.has_value() == ref.zero_subgradient_stop;
        for (std::size_t i = 0; ok && i < r.trace.size(); ++i) {
          const IterationRecord& a = r.trace[i];
          const testing::RefStep& b = ref.steps[i];
          ++records;
          ok = a.k == b.k && a.productive == b.productive && SameBits(a.h, b.h) &&
               SameBits(a.sub_norm, b.sub_norm) && a.delta_reported == 0.0 &&
               SameBits(a.g_value, b.g_value) &&
               SameBits(a.g_sub_norm, b.g_sub_norm) &&
               SameBits(a.f_value_estimate, b.f_value) &&
               a.bregman_to_ref.has_value() == b.bregman_to_ref.has_value() &&
               SameBits(a.bregman_to_ref.value_or(0), b.bregman_to_ref.value_or(0)) &&
               SameBits(b.x, a.x.coords()) &&
               SameBits(b.direction, a.direction.coords());
        }
        if (!ok) {
          ++mismatches;
          if (first.empty()) {
            first = " first: " + spec.name + " " + std::string(ToString(v)) +
                    Fmt(" eps=%g", eps);
          }
        }
      }
    }
  }
  return {mismatches == 0, Fmt("%ld runs, %ld records compared, %ld mismatching runs",
                               runs, records, mismatches) + first};
}

Verdict DeltaMonotonicityCriterion() {
  const ProblemSpec& spec = FindBuiltin("p1-l1-box");
  const double eps = 0.1;
  bool ok = true;
  std::string detail = "gaps:";
  double gap0 = 0.0, gap_last = 0.0, err = 0.0;
  for (double delta : {0.0, 0.01, 0.05, 0.1}) {
    const Problem p = Build(spec, delta, 7);
    const SolveResult r = SolveWeighted(p, eps);
    const ReferenceOptimum& ref = *p.reference();
    err = ref.error_bound;
    const double gap = p.objective().Value(r.output_point) - ref.f;
    const bool within = r.stop_reason != StopReason::kIterationCap &&
                        gap <= eps + delta + err + kTol;
    ok = ok && within;
    detail += Fmt(" d=%g:%.4g%s", delta, gap, within ? "" : "(!)");
    if (delta == 0.0) gap0 = gap;
    gap_last = gap;
  }
  const bool growth = gap_last - gap0 <= 0.1 + 2.0 * err;
  detail += Fmt("; gap(0.1)-gap(0)=%.4g", gap_last - gap0);
  return {ok && growth, detail};
}

Verdict CorollaryCriterion() {
  const ProblemSpec& spec = FindBuiltin("p4-max-quadratics");
  const Problem p = BuildProblem(spec);
  const ReferenceOptimum& ref = *p.reference();
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.2}) {
    const SolveResult r = SolveAdaptive(p, eps);
    double best = std::numeric_limits<double>::infinity();
    for (const IterationRecord* rec : Productive(r)) {
      best = std::min(best, p.objective().Value(rec->x));
    }
    // Unit-curvature components: L = 1.
    const double rhs = std::sqrt(0.2) * eps + 0.5 * eps * eps + ref.error_bound;
    const Certificate c = CheckCorollary(p, r, *spec.grad_at_star_norm, kTol);
    const bool pass = best - ref.f <= rhs + kTol && c.satisfied && c.evaluable;
    ok = ok && pass;
    detail += Fmt("eps=%g: %.4g <= %.4g %s; ", eps, best - ref.f, rhs,
                  pass ? "ok" : "FAIL");
  }
  return {ok, detail};
}

Verdict ProximalCriterion() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 500;
  for (const auto& [name, setup] : testing::StandardSetups()) {
    const testing::PropertyReport sc = testing::CheckStrongConvexity(setup, 10000, ++seed);
    const testing::PropertyReport ms =
        testing::CheckMirrorStepOptimality(setup, 1000, 61, ++seed);
    ok = ok && sc.violations == 0 && ms.violations == 0;
    detail += Fmt("%s sc %ld/%ld ms %ld/%ld; ", name.c_str(), sc.violations,
                  sc.samples, ms.violations, ms.samples);
  }
  for (NormKind norm : {NormKind::kL2, NormKind::kL1}) {
    const testing::PropertyReport dn = testing::CheckDualNormAxioms(norm, 3, 1000, ++seed);
    ok = ok && dn.violations == 0;
    detail += Fmt("%s-dual %ld/%ld; ", norm == NormKind::kL2 ? "l2" : "linf",
                  dn.violations, dn.samples);
  }
  return {ok, detail + "(violations/samples)"};
}

Verdict DeterminismCriterion() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("imd_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const auto run = [&](const std::string& sub) {
    const std::string out = (dir / sub).string();
    const char* argv[] = {"imd", "solve", "--problem", "p8-maxaffine-grid",
                          "--algorithm", "adaptive", "--eps", "0.05",
                          "--delta-noise", "0.05", "--seed", "1234",
                          "--out-dir", out.c_str()};
    std::ostringstream o, e;
    return cli::Main(static_cast<int>(std::size(argv)), argv, o, e);
  };
  const int a = run("a"), b = run("b");
  bool same = a == cli::kExitOk && b == cli::kExitOk;
  for (const char* f : {"trace.csv", "report.json"}) {
    same = same && cli::ReadFile(dir / "a" / f) == cli::ReadFile(dir / "b" / f);
  }
  fs::remove_all(dir);
  return {same, Fmt("exit codes %d/%d, trace.csv and report.json %s", a, b,
                    same ? "byte-identical" : "differ")};
}

}  // namespace
}  // namespace imd

int main() {
  using imd::Verdict;
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1 iteration-bound", imd::IterationBoundCriterion},
      {"2 terminal-guarantees", imd::TerminalCriterion},
      {"3 per-step-checks", imd::StepCriterion},
      {"4 exact-oracle-reduction", imd::ReductionCriterion},
      {"5 delta-monotonicity", imd::DeltaMonotonicityCriterion},
      {"6 smooth-max-bound", imd::CorollaryCriterion},
      {"7 proximal-properties", imd::ProximalCriterion},
      {"8 determinism", imd::DeterminismCriterion},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < 60.0;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %s (%.2fs%s): %s\n", pass ? "PASS" : "FAIL", name,
                secs, in_time ? "" : ", over 60s", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
