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


#include "imd/cli/run_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "imd/cli/config.h"
#include "imd/errors.h"

namespace imd::cli {
namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double ParseDouble(std::string_view field, std::string_view what) {
  double v = 0.0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ArgumentError(std::string(what) + ": bad number '" +
                        std::string(field) + "'");
  }
  return v;
}

long ParseLong(std::string_view field, std::string_view what) {
  long v = 0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ArgumentError(std::string(what) + ": bad integer '" +
                        std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string TraceCsv(const SolveResult& result) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const IterationRecord& r : result.trace) {
    out += std::to_string(r.k);
    out += r.productive ? ",1," : ",0,";
    out += FormatDouble(r.h) + ',' + FormatDouble(r.sub_norm) + ',' +
           FormatDouble(r.delta_reported) + ',' + FormatDouble(r.g_value) +
           ',' + FormatDouble(r.f_value_estimate) + ',';
    if (r.bregman_to_ref) out += FormatDouble(*r.bregman_to_ref);
    out += '\n';
  }
  return out;
}

std::string StepsCsv(const SolveResult& result) {
  const std::size_t n = result.final_iterate.dim();
  std::string out = "k,f_delta,g_delta,g_sub_norm";
  for (std::size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) out += ",p" + std::to_string(i);
  out += '\n';
  for (const IterationRecord& r : result.trace) {
    out += std::to_string(r.k) + ',' + FormatDouble(r.f_delta) + ',' +
           FormatDouble(r.g_delta) + ',' + FormatDouble(r.g_sub_norm);
    for (double v : r.x.coords()) out += ',' + FormatDouble(v);
    for (double v : r.direction.coords()) out += ',' + FormatDouble(v);
    out += '\n';
  }
  return out;
}

std::vector<IterationRecord> ReadTrace(std::string_view trace_csv,
                                       std::string_view steps_csv) {
  const std::vector<std::string_view> trace = SplitLines(trace_csv);
  const std::vector<std::string_view> steps = SplitLines(steps_csv);
  if (trace.empty() || trace[0] != kTraceHeader) {
    throw ArgumentError("trace.csv: missing or unexpected header");
  }
  if (steps.empty() || trace.size() != steps.size()) {
    throw ArgumentError("steps.csv: row count differs from trace.csv");
  }
  const std::size_t step_cols = SplitFields(steps[0]).size();
  if (step_cols < 6 || (step_cols - 4) % 2 != 0) {
    throw ArgumentError("steps.csv: unexpected header");
  }
  const std::size_t n = (step_cols - 4) / 2;

  std::vector<IterationRecord> out;
  out.reserve(trace.size() - 1);
  for (std::size_t row = 1; row < trace.size(); ++row) {
    const std::vector<std::string_view> t = SplitFields(trace[row]);
    const std::vector<std::string_view> s = SplitFields(steps[row]);
    if (t.size() != 8) throw ArgumentError("trace.csv: expected 8 columns");
    if (s.size() != step_cols) throw ArgumentError("steps.csv: ragged row");
    IterationRecord r;
    r.k = ParseLong(t[0], "trace.csv k");
    if (ParseLong(s[0], "steps.csv k") != r.k) {
      throw ArgumentError("steps.csv: k does not match trace.csv");
    }
    if (t[1] != "0" && t[1] != "1") {
      throw ArgumentError("trace.csv: productive must be 0 or 1");
    }
    r.productive = t[1] == "1";
    r.h = ParseDouble(t[2], "trace.csv h");
    r.sub_norm = ParseDouble(t[3], "trace.csv sub_norm");
    r.delta_reported = ParseDouble(t[4], "trace.csv delta");
    r.g_value = ParseDouble(t[5], "trace.csv g_value");
    r.f_value_estimate = ParseDouble(t[6], "trace.csv f_estimate");
    if (!t[7].empty()) r.bregman_to_ref = ParseDouble(t[7], "trace.csv bregman");
    r.f_delta = ParseDouble(s[1], "steps.csv f_delta");
    r.g_delta = ParseDouble(s[2], "steps.csv g_delta");
    r.g_sub_norm = ParseDouble(s[3], "steps.csv g_sub_norm");
    std::vector<double> x(n);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ParseDouble(s[4 + i], "steps.csv x");
      p[i] = ParseDouble(s[4 + n + i], "steps.csv p");
    }
    r.x = Point(std::move(x));
    r.direction = DualVector(std::move(p));
    out.push_back(std::move(r));
  }
  return out;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ArgumentError("cannot write " + tmp.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw ArgumentError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw ArgumentError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace imd::cli
