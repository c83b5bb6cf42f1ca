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


#include "imd/cli/cli.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "imd/cli/run_io.h"
#include "imd/errors.h"

namespace imd::cli {
namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultOutRoot = "imd-out";
constexpr const char* kReportFormat = "imd-report/1";

Json PointJson(const Point& x) { return Json(x.values()); }

Point PointFromJson(const Json& j, const char* what) {
  try {
    return Point(j.get<std::vector<double>>());
  } catch (const std::exception& e) {
    throw ArgumentError(std::string("report.json ") + what + ": " + e.what());
  }
}

std::optional<double> ObjectiveGap(const RunOutcome& o) {
  const auto& ref = o.problem.reference();
  if (!ref) return std::nullopt;
  return o.problem.objective().Value(o.result.output_point) - ref->f;
}

void PrintFailures(const std::vector<Certificate>& certs, std::ostream& out,
                   int limit = 10) {
  int shown = 0;
  for (const Certificate& c : certs) {
    if (!c.failed()) continue;
    if (shown++ == limit) {
      out << "  ...\n";
      break;
    }
    out << "  FAIL " << ToString(c.kind) << '/' << c.quantity;
    if (c.iteration) out << " k=" << *c.iteration;
    out << std::setprecision(10) << " lhs=" << c.lhs << " rhs=" << c.rhs
        << '\n';
  }
}

void PrintOutcome(const RunOutcome& o, const fs::path& dir, std::ostream& out) {
  const SolveResult& r = o.result;
  out << "run:         " << dir.string() << '\n'
      << "stop:        " << ToString(r.stop_reason) << " after " << r.iterations
      << " iterations (" << r.productive_count << " productive)\n";
  if (const auto gap = ObjectiveGap(o)) {
    out << "f gap:       " << FormatDouble(*gap) << '\n';
  }
  out << "g(x_hat):    " << FormatDouble(o.problem.ConstraintValue(r.output_point))
      << '\n'
      << "certificates: " << o.summary.passed << " passed, " << o.summary.failed
      << " failed, " << o.summary.unevaluable << " unevaluable\n";
  PrintFailures(o.certificates, out);
  if (!o.certified_exit) out << "  no certified exit (iteration cap)\n";
  out << "verdict:     " << (o.ExitCode() == kExitOk ? "PASS" : "FAIL") << '\n';
}

// ---------------------------------------------------------------- verify

struct LoadedRun {
  RunConfig config;
  ProblemSpec spec;
  Json report;
  std::vector<IterationRecord> trace;
};

LoadedRun LoadRun(const fs::path& dir) {
  LoadedRun run;
  try {
    run.report = Json::parse(ReadFile(dir / "report.json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("report.json: ") + e.what());
  }
  if (!run.report.contains("format") || run.report["format"] != kReportFormat) {
    throw ArgumentError("report.json: not an imd report");
  }
  run.config = RunConfigFromJson(run.report.at("config"));
  run.spec = ProblemSpecFromJson(run.report.at("problem_spec"));
  run.trace = ReadTrace(ReadFile(dir / "trace.csv"), ReadFile(dir / "steps.csv"));
  return run;
}

SolveResult RebuildResult(const LoadedRun& run) {
  const Json& jr = run.report.at("result");
  SolveResult r;
  r.variant = run.config.algorithm;
  r.eps = run.config.eps;
  r.output_rule = r.variant == Variant::kWeighted ? OutputRule::kWeightedAverage
                                                  : OutputRule::kArgminProductive;
  r.iterations = jr.at("iterations").get<long>();
  r.productive_count = jr.at("productive_count").get<long>();
  r.nonproductive_count = jr.at("nonproductive_count").get<long>();
  r.stop_reason = ParseStopReason(jr.at("stop_reason").get<std::string>());
  r.productive_empty = jr.at("productive_empty").get<bool>();
  r.output_point = PointFromJson(jr.at("output_point"), "output_point");
  r.final_iterate = PointFromJson(jr.at("final_iterate"), "final_iterate");
  r.trace = run.trace;
  if (jr.contains("terminal") && !jr.at("terminal").is_null()) {
    const Json& t = jr.at("terminal");
    IterationRecord rec;
    rec.k = r.iterations;
    rec.productive = true;
    rec.x = r.final_iterate;
    rec.direction = DualVector::Zero(r.final_iterate.dim());
    rec.delta_reported = t.at("f_delta").get<double>();
    rec.f_delta = rec.delta_reported;
    rec.f_value_estimate = t.at("f_estimate").get<double>();
    rec.g_value = t.at("g_value").get<double>();
    rec.g_sub_norm = t.at("g_sub_norm").get<double>();
    rec.g_delta = t.at("g_delta").get<double>();
    if (t.contains("bregman_to_ref") && !t.at("bregman_to_ref").is_null()) {
      rec.bregman_to_ref = t.at("bregman_to_ref").get<double>();
    }
    r.terminal = std::move(rec);
  }
  return r;
}

// Structural checks of a reloaded trace; returns the problems found.
std::vector<std::string> CheckConsistency(const SolveResult& r) {
  std::vector<std::string> issues;
  if (static_cast<long>(r.trace.size()) != r.iterations) {
    issues.push_back("trace length differs from reported iterations");
  }
  long productive = 0;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    if (r.trace[i].k != static_cast<long>(i)) {
      issues.push_back("trace rows are not numbered 0..N-1");
      break;
    }
  }
  for (const IterationRecord& rec : r.trace) productive += rec.productive;
  if (productive != r.productive_count ||
      r.productive_count + r.nonproductive_count != r.iterations) {
    issues.push_back("productive/non-productive counts do not match trace");
  }
  return issues;
}

int Verify(const fs::path& dir, std::optional<double> tolerance,
           std::ostream& out) {
  LoadedRun run = LoadRun(dir);
  if (tolerance) run.config.tolerance = *tolerance;
  const Problem problem = BuildProblem(run.spec, MakeOracleOptions(run.config));
  const SolveResult result = RebuildResult(run);
  const std::vector<std::string> issues = CheckConsistency(result);
  const std::vector<Certificate> certs =
      RunCertificates(run.config, run.spec, problem, result);
  const CertificateSummary s = Summarize(certs);
  out << "verified:    " << dir.string() << '\n'
      << "certificates: " << s.passed << " passed, " << s.failed << " failed, "
      << s.unevaluable << " unevaluable\n";
  PrintFailures(certs, out);
  for (const std::string& issue : issues) out << "  INCONSISTENT " << issue << '\n';
  const bool certified = result.stop_reason != StopReason::kIterationCap;
  if (!certified) out << "  no certified exit (iteration cap)\n";
  const bool ok = s.failed == 0 && issues.empty() && certified;
  out << "verdict:     " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitCertificateFailure;
}

// ----------------------------------------------------------------- sweep

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Cartesian product of `grid` (key -> array of values) applied to `base`.
void ExpandGrid(const Json& grid, const RunConfig& base,
                std::vector<RunConfig>& out) {
  std::vector<std::pair<std::string, Json>> axes;
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array() || values.empty()) {
      throw ArgumentError("grid." + key + ": expected a non-empty array");
    }
    axes.emplace_back(key, values);
  }
  if (axes.empty()) return;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    Json point = Json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      point[axes[a].first] = axes[a].second[idx[a]];
    }
    out.push_back(RunConfigFromJson(point, base));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
  }
}

struct SweepRow {
  std::optional<RunOutcome> outcome;
  std::string error;
};

std::string SweepCsv(const std::vector<RunConfig>& configs,
                     const std::vector<SweepRow>& rows) {
  std::string csv =
      "run,problem,algorithm,eps,delta_noise,seed,iterations,bound,"
      "stop_reason,f_gap,g_value,passed,failed,unevaluable,verdict\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RunConfig& c = configs[i];
    csv += std::to_string(i) + ',' +
           (c.problem_inline ? c.problem_inline->name : c.problem) + ',' +
           std::string(ToString(c.algorithm)) + ',' + FormatDouble(c.eps) +
           ',' + FormatDouble(c.delta_noise) + ',' + std::to_string(c.seed) +
           ',';
    if (!rows[i].outcome) {
      csv += ",,error,,,,,,error\n";
      continue;
    }
    const RunOutcome& o = *rows[i].outcome;
    const auto gap = ObjectiveGap(o);
    csv += std::to_string(o.result.iterations) + ',' +
           std::to_string(IterationBound(o.problem.m_g(),
                                         o.problem.theta0_sq(), c.eps)) +
           ',' + std::string(ToString(o.result.stop_reason)) + ',' +
           (gap ? FormatDouble(*gap) : std::string()) + ',' +
           FormatDouble(o.problem.ConstraintValue(o.result.output_point)) +
           ',' + std::to_string(o.summary.passed) + ',' +
           std::to_string(o.summary.failed) + ',' +
           std::to_string(o.summary.unevaluable) + ',' +
           (o.ExitCode() == kExitOk ? "pass" : "fail") + '\n';
  }
  return csv;
}

std::string RunDirName(std::size_t index, const RunConfig& c) {
  std::ostringstream ss;
  ss << std::setw(3) << std::setfill('0') << index << '_' << RunName(c);
  return ss.str();
}

int Sweep(const std::vector<RunConfig>& configs, const fs::path& root,
          int jobs, std::ostream& out, std::ostream& err) {
  if (configs.empty()) {
    err << "error: sweep: empty run list\n";
    return kExitUsage;
  }
  // Every member must be valid before anything runs.
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      Validate(configs[i]);
      BuildProblem(ResolveProblem(configs[i]), MakeOracleOptions(configs[i]));
    } catch (const std::exception& e) {
      err << "error: sweep run " << i << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        RunOutcome o = Execute(configs[i]);
        WriteRun(o, root / RunDirName(i, configs[i]));
        rows[i].outcome = std::move(o);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  fs::create_directories(root);
  WriteFileAtomic(root / "sweep.csv", SweepCsv(configs, rows));
  int code = kExitOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].outcome) {
      err << "error: sweep run " << i << ": " << rows[i].error << '\n';
      code = kExitUsage;
    } else if (rows[i].outcome->ExitCode() != kExitOk && code == kExitOk) {
      code = kExitCertificateFailure;
    }
  }
  long passed = 0;
  for (const SweepRow& r : rows) {
    passed += r.outcome && r.outcome->ExitCode() == kExitOk;
  }
  out << "sweep:       " << (root / "sweep.csv").string() << '\n'
      << "runs:        " << rows.size() << " (" << passed << " pass)\n";
  return code;
}

// --------------------------------------------------------------- catalog

std::string Short(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

void PrintCatalog(bool as_json, std::ostream& out) {
  const std::vector<ProblemSpec>& catalog = BuiltinCatalog();
  if (as_json) {
    Json j = Json::array();
    for (const ProblemSpec& p : catalog) j.push_back(ToJson(p));
    out << j.dump(2) << '\n';
    return;
  }
  for (const ProblemSpec& p : catalog) {
    out << std::left << std::setw(20) << p.name << " n=" << p.dimension << "  "
        << std::setw(16) << ToString(p.setup.kind)
        << " M_g=" << std::setw(8) << Short(p.m_g)
        << " theta0^2=" << std::setw(5) << Short(p.theta0_sq);
    if (p.reference) out << " f*=" << Short(p.reference->f);
    out << "\n    " << p.description << '\n';
  }
}

// ------------------------------------------------------------- options

// Flags shared by `solve` and `sweep`; applied over a config file.
struct RunFlags {
  std::string config_path;
  std::string problem;
  std::string algorithm;
  std::string eps;
  std::string delta_noise;
  std::string constraint_delta_noise;
  std::string oracle;
  std::string seed;
  std::string out_dir;
  double tolerance = kDefaultCertificateTolerance;
  double max_iter_factor = 50.0;
  std::vector<std::string> skip;
  CLI::Option* tolerance_opt = nullptr;
  CLI::Option* max_iter_factor_opt = nullptr;

  void Register(CLI::App* app, bool lists) {
    const std::string suffix = lists ? " (comma-separated list)" : "";
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--problem", problem, "built-in problem name" + suffix);
    app->add_option("--algorithm", algorithm,
                    "weighted | adaptive | fixed" + suffix);
    app->add_option("--eps", eps, "accuracy eps > 0" + suffix);
    app->add_option("--delta-noise", delta_noise,
                    "objective oracle delta >= 0" + suffix);
    app->add_option("--constraint-delta-noise", constraint_delta_noise,
                    "constraint oracle delta >= 0");
    app->add_option("--oracle", oracle, "perturbed | inexact_max");
    app->add_option("--seed", seed, "oracle noise seed" + suffix);
    app->add_option("--out-dir", out_dir,
                    lists ? "output root (default $IMD_OUT_DIR)"
                          : "run directory (default $IMD_OUT_DIR/<run name>)");
    tolerance_opt = app->add_option("--tolerance", tolerance,
                                    "certificate tolerance (default 1e-8)");
    max_iter_factor_opt = app->add_option(
        "--max-iter-factor", max_iter_factor,
        "iteration cap as a multiple of the iteration bound (default 50)");
    app->add_option("--skip", skip,
                    "disable certificates: lemma1, steps, terminal, corollary");
  }

  // Scalar flags as a JSON patch over the config file.
  Json Patch() const {
    Json j = Json::object();
    auto number = [](const std::string& field, const std::string& text) {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      } catch (const std::exception&) {
        throw ArgumentError(field + ": not a number: '" + text + "'");
      }
    };
    if (!problem.empty()) j["problem"] = problem;
    if (!algorithm.empty()) j["algorithm"] = algorithm;
    if (!eps.empty()) j["eps"] = number("eps", eps);
    if (!delta_noise.empty()) j["delta_noise"] = number("delta_noise", delta_noise);
    if (!constraint_delta_noise.empty()) {
      j["constraint_delta_noise"] =
          number("constraint_delta_noise", constraint_delta_noise);
    }
    if (!oracle.empty()) j["oracle"] = oracle;
    if (!seed.empty()) {
      const double s = number("seed", seed);
      if (s < 0 || s != std::floor(s)) {
        throw ArgumentError("seed: must be a non-negative integer");
      }
      j["seed"] = static_cast<std::uint64_t>(s);
    }
    if (tolerance_opt->count()) j["tolerance"] = tolerance;
    if (max_iter_factor_opt->count()) j["max_iter_factor"] = max_iter_factor;
    if (!skip.empty()) {
      Json t = Json::object();
      for (const std::string& s : skip) {
        for (const std::string& name : SplitList(s)) t[name] = false;
      }
      j["certificates"] = t;
    }
    return j;
  }
};

Json LoadJsonFile(const std::string& path) {
  try {
    return Json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

int RunSolve(const RunFlags& flags, std::ostream& out) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    config = RunConfigFromJson(LoadJsonFile(flags.config_path));
  }
  const Json patch = flags.Patch();
  if (patch.contains("problem")) config.problem_inline.reset();
  config = RunConfigFromJson(patch, config);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  Validate(config);
  const fs::path dir = ResolveRunDir(config);
  const RunOutcome outcome = Execute(config);
  WriteRun(outcome, dir);
  PrintOutcome(outcome, dir, out);
  return outcome.ExitCode();
}

int RunSweep(const RunFlags& flags, int jobs, std::ostream& out,
             std::ostream& err) {
  Json file = Json::object();
  if (!flags.config_path.empty()) file = LoadJsonFile(flags.config_path);
  for (const auto& [key, value] : file.items()) {
    if (key != "base" && key != "grid" && key != "runs" && key != "out_dir") {
      throw ArgumentError("sweep config: unknown key '" + key + "'");
    }
  }
  RunConfig base;
  if (file.contains("base")) base = RunConfigFromJson(file["base"]);

  // List flags become grid axes; scalar-only flags patch the base.
  Json grid = file.contains("grid") ? file["grid"] : Json::object();
  RunFlags scalars = flags;
  scalars.problem.clear();
  scalars.algorithm.clear();
  scalars.eps.clear();
  scalars.delta_noise.clear();
  scalars.seed.clear();
  Json patch = scalars.Patch();
  auto axis = [&](const char* key, const std::string& text, bool numeric) {
    if (text.empty()) return;
    Json values = Json::array();
    for (const std::string& item : SplitList(text)) {
      if (numeric) {
        try {
          std::size_t used = 0;
          const double v = std::stod(item, &used);
          if (used != item.size()) throw std::invalid_argument(item);
          values.push_back(std::string(key) == "seed"
                               ? Json(static_cast<std::uint64_t>(v))
                               : Json(v));
        } catch (const std::invalid_argument&) {
          throw ArgumentError(std::string(key) + ": not a number: '" + item + "'");
        }
      } else {
        values.push_back(item);
      }
    }
    grid[key] = values;
  };
  axis("problem", flags.problem, false);
  axis("algorithm", flags.algorithm, false);
  axis("eps", flags.eps, true);
  axis("delta_noise", flags.delta_noise, true);
  axis("seed", flags.seed, true);
  base = RunConfigFromJson(patch, base);

  std::vector<RunConfig> configs;
  if (file.contains("runs")) {
    if (!file["runs"].is_array()) {
      throw ArgumentError("runs: expected an array");
    }
    for (const Json& run : file["runs"]) {
      configs.push_back(RunConfigFromJson(run, base));
    }
  }
  ExpandGrid(grid, base, configs);

  std::string root = flags.out_dir;
  if (root.empty() && file.contains("out_dir")) {
    root = file["out_dir"].get<std::string>();
  }
  return Sweep(configs, ResolveOutRoot(root), jobs, out, err);
}

}  // namespace

std::vector<Certificate> RunCertificates(const RunConfig& config,
                                         const ProblemSpec& spec,
                                         const Problem& problem,
                                         const SolveResult& result) {
  const double tol = config.tolerance;
  const auto& ref = problem.reference();
  std::vector<Certificate> certs;
  auto append = [&certs](std::vector<Certificate> more) {
    certs.insert(certs.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  };
  if (config.certificates.terminal) {
    append(CheckTerminalGuarantees(result, problem, tol));
  }
  if (config.certificates.corollary && spec.grad_at_star_norm && ref &&
      result.variant == Variant::kAdaptive &&
      problem.objective().max_structure() != nullptr) {
    certs.push_back(CheckCorollary(problem, result, *spec.grad_at_star_norm, tol));
  }
  if (config.certificates.steps && ref) {
    append(CheckStepInequalities(result, ref->x, problem.setup(), tol));
  }
  if (config.certificates.lemma1 && ref) {
    const GrowthModulus omega =
        EstimateOmega(problem, ref->x, ref->f, DefaultTauGrid(problem));
    append(CheckLemma1(problem, result, omega, tol));
  }
  return certs;
}

RunOutcome Execute(const RunConfig& config) {
  Validate(config);
  ProblemSpec spec = ResolveProblem(config);
  Problem problem = BuildProblem(spec, MakeOracleOptions(config));
  SolverOptions options;
  options.max_iter_factor = config.max_iter_factor;
  SolveResult result = Solve(problem, config.algorithm, config.eps, options);
  std::vector<Certificate> certs =
      RunCertificates(config, spec, problem, result);
  const CertificateSummary summary = Summarize(certs);
  const bool certified = result.stop_reason != StopReason::kIterationCap;
  return RunOutcome{config,           std::move(spec),  std::move(problem),
                    std::move(result), std::move(certs), summary,
                    certified};
}

Json Report(const RunOutcome& o) {
  const SolveResult& r = o.result;
  const Problem& p = o.problem;
  Json j;
  j["format"] = kReportFormat;
  j["config"] = ToJson(o.config);
  j["problem_spec"] = ToJson(o.spec);

  Json problem;
  problem["m_g"] = p.m_g();
  problem["theta0_sq"] = p.theta0_sq();
  problem["objective_delta_bound"] = p.objective().delta_bound();
  if (const auto& ref = p.reference()) {
    problem["reference"] = {{"x", PointJson(ref->x)},
                            {"f", ref->f},
                            {"source", ref->source},
                            {"error_bound", ref->error_bound}};
  } else {
    problem["reference"] = nullptr;
  }
  j["problem"] = std::move(problem);

  Json res;
  res["variant"] = std::string(ToString(r.variant));
  res["eps"] = r.eps;
  res["output_rule"] = std::string(ToString(r.output_rule));
  res["stop_reason"] = std::string(ToString(r.stop_reason));
  res["certified_exit"] = o.certified_exit;
  res["iterations"] = r.iterations;
  res["productive_count"] = r.productive_count;
  res["nonproductive_count"] = r.nonproductive_count;
  res["productive_empty"] = r.productive_empty;
  res["iteration_bound"] = IterationBound(p.m_g(), p.theta0_sq(), r.eps);
  res["iteration_cap"] =
      IterationCap(p.m_g(), p.theta0_sq(), r.eps, o.config.max_iter_factor);
  res["output_point"] = PointJson(r.output_point);
  res["final_iterate"] = PointJson(r.final_iterate);
  res["f_output"] = p.objective().Value(r.output_point);
  res["g_output"] = p.ConstraintValue(r.output_point);
  const auto gap = ObjectiveGap(o);
  res["f_gap"] = gap ? Json(*gap) : Json(nullptr);
  if (r.terminal) {
    const IterationRecord& t = *r.terminal;
    res["terminal"] = {
        {"f_estimate", t.f_value_estimate},
        {"f_delta", t.f_delta},
        {"g_value", t.g_value},
        {"g_sub_norm", t.g_sub_norm},
        {"g_delta", t.g_delta},
        {"bregman_to_ref",
         t.bregman_to_ref ? Json(*t.bregman_to_ref) : Json(nullptr)}};
  } else {
    res["terminal"] = nullptr;
  }
  j["result"] = std::move(res);

  Json certs = Json::array();
  for (const Certificate& c : o.certificates) certs.push_back(ToJson(c));
  j["certificates"] = std::move(certs);
  j["summary"] = {{"passed", o.summary.passed},
                  {"failed", o.summary.failed},
                  {"unevaluable", o.summary.unevaluable},
                  {"verdict", o.ExitCode() == kExitOk ? "pass" : "fail"}};
  return j;
}

void WriteRun(const RunOutcome& outcome, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ArgumentError("cannot create output directory " + dir.string() +
                        ": " + ec.message());
  }
  WriteFileAtomic(dir / "trace.csv", TraceCsv(outcome.result));
  WriteFileAtomic(dir / "steps.csv", StepsCsv(outcome.result));
  WriteFileAtomic(dir / "report.json", Report(outcome).dump(2) + "\n");
}

fs::path ResolveOutRoot(const std::string& explicit_root) {
  if (!explicit_root.empty()) return explicit_root;
  if (const char* env = std::getenv("IMD_OUT_DIR"); env && *env) return env;
  return kDefaultOutRoot;
}

fs::path ResolveRunDir(const RunConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  return ResolveOutRoot("") / RunName(config);
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Mirror descent with inexact subgradients and certified traces"};
  app.name("imd");
  app.require_subcommand(1);

  RunFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "run one solve and certify it");
  solve_flags.Register(solve, false);

  RunFlags sweep_flags;
  int jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "run a list or grid of solves");
  sweep_flags.Register(sweep, true);
  sweep->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);

  bool catalog_json = false;
  CLI::App* catalog = app.add_subcommand("catalog", "list built-in problems");
  catalog->add_flag("--json", catalog_json, "print full problem specs");

  std::string run_dir;
  double verify_tol = kDefaultCertificateTolerance;
  CLI::App* verify =
      app.add_subcommand("verify", "re-run certificates on a written run");
  verify->add_option("--run-dir", run_dir, "directory written by solve")
      ->required();
  CLI::Option* verify_tol_opt =
      verify->add_option("--tolerance", verify_tol, "certificate tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return RunSolve(solve_flags, out);
    if (sweep->parsed()) return RunSweep(sweep_flags, jobs, out, err);
    if (catalog->parsed()) {
      PrintCatalog(catalog_json, out);
      return kExitOk;
    }
    if (verify->parsed()) {
      std::optional<double> tol;
      if (verify_tol_opt->count()) tol = verify_tol;
      return Verify(run_dir, tol, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace imd::cli
