// Copyright 2026 The chi2cavity Authors
//
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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chi2cavity/errors.hpp"
#include "chi2cavity/sweep.hpp"

namespace chi2 {

using nlohmann::json;

namespace {

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json axis_to_json(const SweepAxis& axis) {
  return {{"parameter", to_string(axis.parameter)},
          {"start", axis.start},
          {"stop", axis.stop},
          {"count", axis.count}};
}

SweepAxis axis_from_json(const json& j, SweepAxis axis) {
  if (j.contains("parameter")) {
    axis.parameter = parse_sweep_parameter(j.at("parameter").get<std::string>());
  } else if (j.contains("name")) {
    axis.parameter = parse_sweep_parameter(j.at("name").get<std::string>());
  }
  if (j.contains("start")) axis.start = j.at("start").get<double>();
  if (j.contains("stop")) axis.stop = j.at("stop").get<double>();
  if (j.contains("count")) axis.count = j.at("count").get<int>();
  return axis;
}

json spec_to_json(const SweepSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["axis1"] = axis_to_json(spec.axis1);
  j["axis2"] = spec.axis2 ? axis_to_json(*spec.axis2) : json(nullptr);
  const SystemParams& p = spec.fixed;
  j["fixed"] = {{"delta", p.delta},
                {"g", p.g},
                {"kappa1", p.kappa1},
                {"kappa2", p.kappa2},
                {"drive_strength", p.drive_strength},
                {"delta_f", p.delta_f},
                {"direction", to_string(p.direction)}};
  j["directions"] = json::array();
  for (DriveDirection d : spec.effective_directions()) j["directions"].push_back(to_string(d));
  j["outputs"] = json::array();
  for (Output o : spec.outputs) j["outputs"].push_back(to_string(o));
  j["cutoffs"] = {{"na_cut", spec.cutoffs.na_cut}, {"nb_cut", spec.cutoffs.nb_cut}};
  j["convergence_check"] = spec.convergence_check;
  j["optimal_g_overlay"] = spec.optimal_g_overlay;
  return j;
}

bool multi_direction(const SweepResult& r) { return r.spec.effective_directions().size() > 1; }

}  // namespace

double round_significant12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

std::string to_csv(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const bool dir_col = multi_direction(result);
  std::ostringstream out;

  std::vector<std::string> header;
  if (dir_col) header.emplace_back("direction");
  header.emplace_back(to_string(spec.axis1.parameter));
  if (spec.axis2) header.emplace_back(to_string(spec.axis2->parameter));
  for (Output o : spec.outputs) header.emplace_back(to_string(o));
  if (spec.convergence_check) {
    for (Output o : spec.outputs) header.push_back(std::string(to_string(o)) + "_rel_change");
  }
  if (spec.optimal_g_overlay) header.emplace_back("optimal_g");
  header.emplace_back("status");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';

  auto field = [](const std::optional<double>& v) { return v ? format12(*v) : std::string(); };
  for (const SweepRow& row : result.rows) {
    std::vector<std::string> cells;
    if (dir_col) cells.emplace_back(to_string(row.direction));
    cells.push_back(format12(row.axis1));
    if (spec.axis2) cells.push_back(field(row.axis2));
    for (Output o : spec.outputs) cells.push_back(field(row.values[static_cast<std::size_t>(o)]));
    if (spec.convergence_check) {
      for (Output o : spec.outputs) cells.push_back(field(row.rel_change[static_cast<std::size_t>(o)]));
    }
    if (spec.optimal_g_overlay) cells.push_back(field(row.optimal_g));
    cells.emplace_back(to_string(row.status));
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
  return out.str();
}

std::string to_json(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  auto number = [](const std::optional<double>& v) {
    return v && std::isfinite(*v) ? json(round_significant12(*v)) : json(nullptr);
  };

  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    json r;
    r["direction"] = to_string(row.direction);
    r[std::string(to_string(spec.axis1.parameter))] = round_significant12(row.axis1);
    if (spec.axis2) r[std::string(to_string(spec.axis2->parameter))] = number(row.axis2);
    for (Output o : spec.outputs) r[std::string(to_string(o))] = number(row.values[static_cast<std::size_t>(o)]);
    if (spec.convergence_check) {
      for (Output o : spec.outputs) {
        r[std::string(to_string(o)) + "_rel_change"] = number(row.rel_change[static_cast<std::size_t>(o)]);
      }
    }
    if (spec.optimal_g_overlay) r["optimal_g"] = number(row.optimal_g);
    r["status"] = to_string(row.status);
    if (!row.message.empty()) r["message"] = row.message;
    rows.push_back(std::move(r));
  }
  json doc;
  doc["metadata"] = {{"spec", spec_to_json(spec)}, {"generated_at", utc_timestamp()}};
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "' (expected csv|json)");
}

void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path) {
  const std::string text = format == OutputFormat::Csv ? to_csv(result) : to_json(result);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string sweep_spec_to_json(const SweepSpec& spec) { return spec_to_json(spec).dump(2); }

SweepSpec parse_sweep_spec_json(std::string_view text, SweepSpec spec) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed sweep config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("sweep config must be a JSON object");
  try {
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
    if (j.contains("axis1")) spec.axis1 = axis_from_json(j.at("axis1"), spec.axis1);
    if (j.contains("axis2")) {
      const json& a2 = j.at("axis2");
      spec.axis2 = a2.is_null() ? std::nullopt : std::optional(axis_from_json(a2, spec.axis2.value_or(SweepAxis{})));
    }
    if (j.contains("fixed")) {
      const json& f = j.at("fixed");
      SystemParams& p = spec.fixed;
      if (f.contains("delta")) p.delta = f.at("delta").get<double>();
      if (f.contains("g")) p.g = f.at("g").get<double>();
      if (f.contains("kappa1")) p.kappa1 = f.at("kappa1").get<double>();
      if (f.contains("kappa2")) p.kappa2 = f.at("kappa2").get<double>();
      if (f.contains("drive_strength")) p.drive_strength = f.at("drive_strength").get<double>();
      if (f.contains("delta_f")) p.delta_f = f.at("delta_f").get<double>();
      if (f.contains("direction")) p.direction = parse_direction(f.at("direction").get<std::string>());
    }
    if (j.contains("directions")) {
      spec.directions.clear();
      for (const auto& d : j.at("directions")) spec.directions.push_back(parse_direction(d.get<std::string>()));
    }
    if (j.contains("outputs")) {
      spec.outputs.clear();
      for (const auto& o : j.at("outputs")) spec.outputs.push_back(parse_output(o.get<std::string>()));
    }
    if (j.contains("cutoffs")) {
      const json& c = j.at("cutoffs");
      if (c.contains("na_cut")) spec.cutoffs.na_cut = c.at("na_cut").get<int>();
      if (c.contains("nb_cut")) spec.cutoffs.nb_cut = c.at("nb_cut").get<int>();
    }
    if (j.contains("convergence_check")) spec.convergence_check = j.at("convergence_check").get<bool>();
    if (j.contains("optimal_g_overlay")) spec.optimal_g_overlay = j.at("optimal_g_overlay").get<bool>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid sweep config: ") + e.what());
  }
  return spec;
}

}  // namespace chi2
