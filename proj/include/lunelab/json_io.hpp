#pragma once

#include "lunelab/bounds.hpp"
#include "lunelab/lune.hpp"
#include "lunelab/scenario.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace lunelab {

using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& q) { return format_rat(q); }

inline Json opt_rat_json(const std::optional<Rat>& q) {
  return q ? Json(format_rat(*q)) : Json("inf");
}

inline Rat rat_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw std::invalid_argument(std::string(what) + ": expected a rational as \"num/den\" or integer");
}

inline Json pt_json(const Pt& p) { return Json{{"x", rat_json(p.x)}, {"y", rat_json(p.y)}}; }

inline Pt pt_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw std::invalid_argument("point: expected {\"x\": ..., \"y\": ...}");
  return Pt{rat_from_json(j.at("x"), "point.x"), rat_from_json(j.at("y"), "point.y")};
}

inline Json window_json(const Window& w) {
  return Json{{"x_min", rat_json(w.x_min)},
              {"x_max", rat_json(w.x_max)},
              {"y_min", rat_json(w.y_min)},
              {"y_max", rat_json(w.y_max)}};
}

inline Window window_from_json(const Json& j) {
  for (const char* k : {"x_min", "x_max", "y_min", "y_max"})
    if (!j.contains(k)) throw std::invalid_argument(std::string("window: missing ") + k);
  return Window{rat_from_json(j.at("x_min"), "window.x_min"),
                rat_from_json(j.at("x_max"), "window.x_max"),
                rat_from_json(j.at("y_min"), "window.y_min"),
                rat_from_json(j.at("y_max"), "window.y_max")};
}

inline Json scenario_config_json(const ScenarioConfig& cfg) {
  Json j{{"name", cfg.name},
         {"epsilon", rat_json(cfg.epsilon)},
         {"s", rat_json(cfg.s)},
         {"t", rat_json(cfg.t)},
         {"perturbation_delta", rat_json(cfg.perturbation_delta)}};
  if (cfg.window) j["window"] = window_json(*cfg.window);
  if (!cfg.marked_points.empty()) {
    j["marked_points"] = Json::array();
    for (const Pt& p : cfg.marked_points) j["marked_points"].push_back(pt_json(p));
  }
  return j;
}

inline ScenarioConfig scenario_config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario: expected a JSON object");
  ScenarioConfig cfg;
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  if (j.contains("epsilon")) cfg.epsilon = rat_from_json(j.at("epsilon"), "epsilon");
  if (j.contains("s")) cfg.s = rat_from_json(j.at("s"), "s");
  if (j.contains("t")) cfg.t = rat_from_json(j.at("t"), "t");
  if (j.contains("window") && !j.at("window").is_null())
    cfg.window = window_from_json(j.at("window"));
  if (j.contains("marked_points"))
    for (const Json& p : j.at("marked_points")) cfg.marked_points.push_back(pt_from_json(p));
  if (j.contains("perturbation_delta"))
    cfg.perturbation_delta = rat_from_json(j.at("perturbation_delta"), "perturbation_delta");
  validate_config(cfg);
  return cfg;
}

inline Json xpoint_json(const XPoint& x) {
  return Json{{"x", rat_json(x.location.x)},
              {"y", rat_json(x.location.y)},
              {"param_a", rat_json(x.param_a)},
              {"param_b", rat_json(x.param_b)},
              {"sign", x.sign}};
}

inline Json certificate_json(const LuneCertificate& c) {
  Json j;
  if (c.label) j["label"] = std::string(1, *c.label);
  j["energy"] = rat_json(c.energy);
  j["direction"] = c.direction == LuneDirection::p_to_q ? "p-to-q" : "q-to-p";
  j["p"] = xpoint_json(c.endpoint_p);
  j["q"] = xpoint_json(c.endpoint_q);
  j["faces"] = c.face_table.faces.size();
  j["homotopy_by_simple_connectivity"] = c.homotopy_by_simple_connectivity;
  return j;
}

inline Json bound_report_json(const BoundReport& r) {
  return Json{{"scenario", r.scenario},
              {"lune_count", r.lune_count},
              {"sigma_p", opt_rat_json(r.sigma_p)},
              {"esep_lower", opt_rat_json(r.esep_lower)},
              {"lower", opt_rat_json(r.lower)},
              {"upper", rat_json(r.upper)},
              {"flags", r.flags}};
}

inline Json run_result_json(const RunResult& r) {
  Json j{{"report", bound_report_json(r.report)},
         {"window", window_json(r.scenario.window)},
         {"crossings_in_window", r.scenario.crossings.size()},
         {"p", xpoint_json(r.scenario.p)},
         {"complete_in_window", r.lunes.complete_in_window},
         {"retried", r.retried}};
  j["lunes"] = Json::array();
  for (const LuneCertificate& c : r.viable) j["lunes"].push_back(certificate_json(c));
  return j;
}

inline Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace lunelab
