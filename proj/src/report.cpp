#include "ordgne/report.hpp"

#include <cmath>

#include <json.hpp>

namespace ordgne {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinities or NaN; keep them readable as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json vec(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

json certificate_json(const Certificate& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["passed"] = c.passed;
  j["expected_failure"] = c.expected_failure;
  j["resolution"] = c.resolution ? num(*c.resolution) : json(nullptr);
  j["margin"] = c.margin ? num(*c.margin) : json(nullptr);
  if (c.witness) {
    json w;
    w["player"] = c.witness->player ? json(*c.witness->player) : json(nullptr);
    w["game_index"] = c.witness->game_index ? json(*c.witness->game_index) : json(nullptr);
    w["point"] = vec(c.witness->point);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  json counts = json::object();
  for (const auto& [k, v] : c.counts) counts[k] = v;
  j["counts"] = counts;
  j["detail"] = c.detail;
  return j;
}

json solution_json(const SvipSolution& s) {
  json j;
  j["point"] = vec(s.point.stacked());
  j["operator_value"] = vec(s.operator_value.stacked);
  json sources = json::array();
  for (auto src : s.operator_value.sources) sources.push_back(to_string(src));
  j["selection_sources"] = sources;
  j["residual"] = num(s.residual);
  j["iterations"] = s.iters;
  j["converged"] = s.converged;
  j["restart"] = s.restart;
  if (!s.trace.empty()) {
    json trace = json::array();
    for (const auto& t : s.trace) trace.push_back(json::array({t.iteration, num(t.residual)}));
    j["trace"] = trace;
  }
  return j;
}

json report_json(const Report& r, bool with_time) {
  json j;
  j["command"] = r.command;
  j["tool_version"] = r.tool_version;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["spec_digest"] = r.spec_digest ? json(*r.spec_digest) : json(nullptr);
  j["solution"] = r.solution ? solution_json(*r.solution) : json(nullptr);
  json certs = json::array();
  for (const auto& nc : r.certificates) {
    json c;
    c["label"] = nc.label;
    c.update(certificate_json(nc.certificate));
    certs.push_back(c);
  }
  j["certificates"] = certs;
  j["warnings"] = r.warnings;
  j["errors"] = r.errors;
  if (with_time) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

}  // namespace

std::string report_to_json(const Report& report) { return report_json(report, true).dump(2) + "\n"; }

std::string report_to_json_without_time(const Report& report) {
  return report_json(report, false).dump(2) + "\n";
}

}  // namespace ordgne
