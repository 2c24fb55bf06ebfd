#include "tscale/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "tscale/error.hpp"

namespace tscale {
namespace {

double bound(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(Errc::parse_error, "expected a number or \"inf\"/\"-inf\", got " + v.dump());
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

}  // namespace

json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

TimeScale scale_from_json(const json& j) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw Error(Errc::parse_error, "time scale JSON needs a \"components\" array");
  std::vector<Component> comps;
  for (const auto& c : j["components"]) {
    if (c.contains("interval")) {
      const auto& iv = c["interval"];
      if (!iv.is_array() || iv.size() != 2) throw Error(Errc::parse_error, "interval needs [lo, hi]");
      comps.push_back(Component::interval(bound(iv[0]), bound(iv[1])));
    } else if (c.contains("point")) {
      if (!c["point"].is_number()) throw Error(Errc::parse_error, "point must be a number");
      comps.push_back(Component::point(c["point"].get<double>()));
    } else {
      throw Error(Errc::parse_error, "component must be {\"interval\":...} or {\"point\":...}");
    }
  }
  return TimeScale::canonicalize(comps);
}

json to_json(const TimeScale& ts) {
  json comps = json::array();
  for (const auto& c : ts.components()) {
    if (c.is_point()) comps.push_back({{"point", c.lo}});
    else comps.push_back({{"interval", {number(c.lo), number(c.hi)}}});
  }
  return {{"components", comps}};
}

TimeScale load_scale_file(const std::string& path) { return scale_from_json(read_file(path)); }

BorelSet borel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw Error(Errc::parse_error, "Borel set JSON needs a \"pieces\" array");
  BorelSet set;
  for (const auto& p : j["pieces"]) {
    if (p.contains("interval")) {
      const auto& iv = p["interval"];
      if (!iv.is_array() || iv.size() != 2) throw Error(Errc::parse_error, "interval needs [a, b]");
      BorelPiece piece{bound(iv[0]), bound(iv[1]), true, true};
      if (p.contains("closed")) {
        const auto& cl = p["closed"];
        if (!cl.is_array() || cl.size() != 2 || !cl[0].is_boolean() || !cl[1].is_boolean())
          throw Error(Errc::parse_error, "closed needs [bool, bool]");
        piece.lo_closed = cl[0].get<bool>();
        piece.hi_closed = cl[1].get<bool>();
      }
      set.add(piece);
    } else if (p.contains("point")) {
      if (!p["point"].is_number()) throw Error(Errc::parse_error, "point must be a number");
      set.add(BorelPiece::point(p["point"].get<double>()));
    } else {
      throw Error(Errc::parse_error, "piece must be {\"interval\":...} or {\"point\":...}");
    }
  }
  return set;
}

json to_json(const BorelSet& set) {
  json pieces = json::array();
  for (const auto& p : set.pieces()) {
    if (p.lo == p.hi && p.lo_closed && p.hi_closed) pieces.push_back({{"point", p.lo}});
    else
      pieces.push_back({{"interval", {number(p.lo), number(p.hi)}}, {"closed", {p.lo_closed, p.hi_closed}}});
  }
  return {{"pieces", pieces}};
}

BorelSet load_borel_file(const std::string& path) { return borel_from_json(read_file(path)); }

json to_json(const PointClass& pc) {
  auto word = [](Density d) { return d == Density::scattered ? "scattered" : "dense"; };
  return {{"right", word(pc.right)}, {"left", word(pc.left)}};
}

json to_json(const LimitResult& r) {
  return {{"value", number(r.value)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"last_delta", number(r.last_delta)},
          {"epsilon_sequence", r.epsilon_sequence}};
}

json to_json(const IntervalFamily& family) {
  json out = json::array();
  for (auto [lo, hi] : family) out.push_back({number(lo), number(hi)});
  return out;
}

json to_json(const ACReport& report) {
  json trials = json::array();
  for (const auto& t : report.epsilon_delta_trials)
    trials.push_back({{"delta", number(t.delta)},
                      {"worst_family", to_json(t.worst_family)},
                      {"worst_sum", number(t.worst_sum)}});
  json out = {{"verdict", report.verdict == Verdict::consistent ? "consistent" : "violated"},
              {"note", report.verdict == Verdict::consistent
                           ? "no violation found; evidence, not proof"
                           : "witness family re-checkable"},
              {"epsilons", report.epsilons},
              {"epsilon_delta_trials", trials},
              {"ftc_max_residual", report.ftc_max_residual ? number(*report.ftc_max_residual) : json(nullptr)}};
  if (report.witness) {
    out["witness"] = {{"epsilon", number(report.witness->epsilon)},
                      {"delta", number(report.witness->delta)},
                      {"family", to_json(report.witness->family)},
                      {"sum", number(report.witness->sum)}};
  }
  return out;
}

json to_json(const EquivalenceReport& report) {
  return {{"delta_ac", report.delta_ac},
          {"measure_ac", report.measure_ac},
          {"left_continuous", report.left_continuous},
          {"left_discontinuities", report.left_discontinuities},
          {"measure_residual", number(report.measure_residual)},
          {"max_derivative_gap", number(report.max_derivative_gap)},
          {"agree", report.agree},
          {"delta_side", to_json(report.delta_side)}};
}

}  // namespace tscale
