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


#include "imd/cli/json_io.h"

#include <initializer_list>
#include <string>
#include <vector>

#include "imd/errors.h"

namespace imd::cli {
namespace {

void RejectUnknownKeys(const Json& j, std::string_view where,
                       std::initializer_list<std::string_view> known) {
  if (!j.is_object()) {
    throw ArgumentError(std::string(where) + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (std::string_view k : known) found = found || k == key;
    if (!found) {
      throw ArgumentError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

// Typed read of j[key] with the field path in the error message.
template <typename T>
T Get(const Json& j, std::string_view where, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string(where) + "." + key + ": " + e.what());
  }
}

template <typename T>
void GetIf(const Json& j, std::string_view where, const char* key, T& out) {
  if (j.contains(key)) out = Get<T>(j, where, key);
}

Json ToJson(const ReferenceSpec& r) {
  Json j;
  j["x"] = r.x;
  j["f"] = r.f;
  j["source"] =
      r.source == ReferenceSpec::Source::kAnalytic ? "analytic" : "grid";
  if (r.source == ReferenceSpec::Source::kGridSearch) {
    j["grid_resolution"] = r.grid_resolution;
  }
  j["error_bound"] = r.error_bound;
  return j;
}

ReferenceSpec ReferenceSpecFromJson(const Json& j) {
  constexpr std::string_view kWhere = "reference";
  RejectUnknownKeys(j, kWhere,
                    {"x", "f", "source", "grid_resolution", "error_bound"});
  ReferenceSpec r;
  std::string source = "analytic";
  GetIf(j, kWhere, "source", source);
  if (source == "analytic") {
    r.source = ReferenceSpec::Source::kAnalytic;
    r.x = Get<std::vector<double>>(j, kWhere, "x");
    r.f = Get<double>(j, kWhere, "f");
  } else if (source == "grid") {
    r.source = ReferenceSpec::Source::kGridSearch;
    r.grid_resolution = 201;
    GetIf(j, kWhere, "grid_resolution", r.grid_resolution);
    // A grid reference with x present is taken as already computed.
    GetIf(j, kWhere, "x", r.x);
    GetIf(j, kWhere, "f", r.f);
  } else {
    throw ArgumentError("reference.source: expected 'analytic' or 'grid', got '" +
                        source + "'");
  }
  GetIf(j, kWhere, "error_bound", r.error_bound);
  return r;
}

Json ToJson(const SetupSpec& s) {
  Json j;
  j["kind"] = std::string(ToString(s.kind));
  switch (s.kind) {
    case SetupSpec::Kind::kEuclideanBox:
      j["lower"] = s.lower;
      j["upper"] = s.upper;
      break;
    case SetupSpec::Kind::kEuclideanBall:
      j["center"] = s.center;
      j["radius"] = s.radius;
      break;
    case SetupSpec::Kind::kEntropySimplex:
      break;
  }
  if (s.anchor) j["anchor"] = *s.anchor;
  return j;
}

SetupSpec SetupSpecFromJson(const Json& j) {
  constexpr std::string_view kWhere = "setup";
  RejectUnknownKeys(j, kWhere,
                    {"kind", "lower", "upper", "center", "radius", "anchor"});
  SetupSpec s;
  s.kind = ParseSetupKind(Get<std::string>(j, kWhere, "kind"));
  GetIf(j, kWhere, "lower", s.lower);
  GetIf(j, kWhere, "upper", s.upper);
  GetIf(j, kWhere, "center", s.center);
  GetIf(j, kWhere, "radius", s.radius);
  if (j.contains("anchor")) {
    s.anchor = Get<std::vector<double>>(j, kWhere, "anchor");
  }
  return s;
}

}  // namespace

Json ToJson(const FunctionSpec& spec) {
  using K = FunctionSpec::Kind;
  Json j;
  j["kind"] = std::string(ToString(spec.kind));
  switch (spec.kind) {
    case K::kL1Distance:
    case K::kHalfSquaredDistance:
      j["center"] = spec.center;
      break;
    case K::kLinfDistance:
      j["center"] = spec.center;
      j["b"] = spec.b;
      break;
    case K::kAffine:
      j["a"] = spec.a;
      j["b"] = spec.b;
      break;
    case K::kConstant:
      j["b"] = spec.b;
      break;
    case K::kMaxAffine:
      j["rows"] = spec.rows;
      j["offsets"] = spec.offsets;
      break;
    case K::kMaxQuadratic:
      j["rows"] = spec.rows;
      j["curvatures"] = spec.curvatures;
      j["offsets"] = spec.offsets;
      break;
  }
  if (spec.scale != 1.0) j["scale"] = spec.scale;
  return j;
}

FunctionSpec FunctionSpecFromJson(const Json& j) {
  constexpr std::string_view kWhere = "function";
  RejectUnknownKeys(j, kWhere, {"kind", "center", "a", "b", "rows", "offsets",
                                "curvatures", "scale"});
  FunctionSpec f;
  f.kind = ParseFunctionKind(Get<std::string>(j, kWhere, "kind"));
  GetIf(j, kWhere, "center", f.center);
  GetIf(j, kWhere, "a", f.a);
  GetIf(j, kWhere, "b", f.b);
  GetIf(j, kWhere, "rows", f.rows);
  GetIf(j, kWhere, "offsets", f.offsets);
  GetIf(j, kWhere, "curvatures", f.curvatures);
  GetIf(j, kWhere, "scale", f.scale);
  return f;
}

Json ToJson(const ProblemSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["description"] = spec.description;
  j["dimension"] = spec.dimension;
  j["objective"] = ToJson(spec.objective);
  Json constraints = Json::array();
  for (const FunctionSpec& g : spec.constraints) constraints.push_back(ToJson(g));
  j["constraints"] = std::move(constraints);
  j["setup"] = ToJson(spec.setup);
  j["m_g"] = spec.m_g;
  j["theta0_sq"] = spec.theta0_sq;
  if (spec.reference) j["reference"] = ToJson(*spec.reference);
  if (spec.grad_at_star_norm) j["grad_at_star_norm"] = *spec.grad_at_star_norm;
  return j;
}

ProblemSpec ProblemSpecFromJson(const Json& j) {
  constexpr std::string_view kWhere = "problem_inline";
  RejectUnknownKeys(j, kWhere,
                    {"name", "description", "dimension", "objective",
                     "constraints", "setup", "m_g", "theta0_sq", "reference",
                     "grad_at_star_norm"});
  ProblemSpec p;
  p.name = "inline";
  GetIf(j, kWhere, "name", p.name);
  GetIf(j, kWhere, "description", p.description);
  p.dimension = Get<std::size_t>(j, kWhere, "dimension");
  p.objective = FunctionSpecFromJson(j.at("objective"));
  if (!j.contains("constraints") || !j.at("constraints").is_array()) {
    throw ArgumentError("problem_inline.constraints: expected an array");
  }
  for (const Json& g : j.at("constraints")) {
    p.constraints.push_back(FunctionSpecFromJson(g));
  }
  if (!j.contains("setup")) {
    throw ArgumentError("problem_inline.setup: missing");
  }
  p.setup = SetupSpecFromJson(j.at("setup"));
  p.m_g = Get<double>(j, kWhere, "m_g");
  p.theta0_sq = Get<double>(j, kWhere, "theta0_sq");
  if (j.contains("reference")) p.reference = ReferenceSpecFromJson(j.at("reference"));
  if (j.contains("grad_at_star_norm")) {
    p.grad_at_star_norm = Get<double>(j, kWhere, "grad_at_star_norm");
  }
  return p;
}

RunConfig RunConfigFromJson(const Json& j, const RunConfig& base) {
  constexpr std::string_view kWhere = "config";
  RejectUnknownKeys(j, kWhere,
                    {"problem", "problem_inline", "algorithm", "eps",
                     "delta_noise", "constraint_delta_noise", "oracle", "seed",
                     "out_dir", "certificates", "tolerance", "max_iter_factor"});
  RunConfig c = base;
  if (j.contains("problem")) {
    c.problem = Get<std::string>(j, kWhere, "problem");
    c.problem_inline.reset();
  }
  if (j.contains("problem_inline")) {
    c.problem_inline = ProblemSpecFromJson(j.at("problem_inline"));
    if (!j.contains("problem")) c.problem.clear();
  }
  if (j.contains("algorithm")) {
    try {
      c.algorithm = ParseVariant(Get<std::string>(j, kWhere, "algorithm"));
    } catch (const ArgumentError& e) {
      throw ArgumentError(std::string("algorithm: ") + e.what());
    }
  }
  GetIf(j, kWhere, "eps", c.eps);
  GetIf(j, kWhere, "delta_noise", c.delta_noise);
  GetIf(j, kWhere, "constraint_delta_noise", c.constraint_delta_noise);
  if (j.contains("oracle")) {
    c.oracle = ParseOracleMode(Get<std::string>(j, kWhere, "oracle"));
  }
  GetIf(j, kWhere, "seed", c.seed);
  GetIf(j, kWhere, "out_dir", c.out_dir);
  if (j.contains("certificates")) {
    const Json& t = j.at("certificates");
    constexpr std::string_view kCerts = "certificates";
    RejectUnknownKeys(t, kCerts, {"lemma1", "steps", "terminal", "corollary"});
    GetIf(t, kCerts, "lemma1", c.certificates.lemma1);
    GetIf(t, kCerts, "steps", c.certificates.steps);
    GetIf(t, kCerts, "terminal", c.certificates.terminal);
    GetIf(t, kCerts, "corollary", c.certificates.corollary);
  }
  GetIf(j, kWhere, "tolerance", c.tolerance);
  GetIf(j, kWhere, "max_iter_factor", c.max_iter_factor);
  return c;
}

Json ToJson(const RunConfig& c) {
  Json j;
  if (c.problem_inline) {
    j["problem_inline"] = ToJson(*c.problem_inline);
  } else {
    j["problem"] = c.problem;
  }
  j["algorithm"] = std::string(ToString(c.algorithm));
  j["eps"] = c.eps;
  j["delta_noise"] = c.delta_noise;
  j["constraint_delta_noise"] = c.constraint_delta_noise;
  j["oracle"] = std::string(ToString(c.oracle));
  j["seed"] = c.seed;
  j["certificates"] = {{"lemma1", c.certificates.lemma1},
                       {"steps", c.certificates.steps},
                       {"terminal", c.certificates.terminal},
                       {"corollary", c.certificates.corollary}};
  j["tolerance"] = c.tolerance;
  j["max_iter_factor"] = c.max_iter_factor;
  return j;
}

Json ToJson(const Certificate& c) {
  Json j;
  j["kind"] = std::string(ToString(c.kind));
  j["quantity"] = c.quantity;
  j["iteration"] = c.iteration ? Json(*c.iteration) : Json(nullptr);
  j["satisfied"] = c.satisfied;
  j["evaluable"] = c.evaluable;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["tolerance"] = c.tolerance;
  return j;
}

}  // namespace imd::cli
