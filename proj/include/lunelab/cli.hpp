#pragma once

#include "lunelab/bounds.hpp"
#include "lunelab/json_io.hpp"
#include "lunelab/scenario.hpp"
#include "lunelab/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lunelab {

struct CliCommand {
  enum class Verb { flows, intersections, lunes, bound, sweep, svg } verb = Verb::bound;
  ScenarioConfig config;
  std::vector<Rat> sweep_times = {Rat(2), Rat(3), Rat(7, 2)};
  std::string out_path;  // empty writes to stdout
  bool count_only = false;
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline Pt parse_point_arg(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 2) throw std::invalid_argument("point: expected \"x,y\"");
  return Pt{parse_rat(parts[0]), parse_rat(parts[1])};
}

inline Window parse_window_arg(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 4)
    throw std::invalid_argument("window: expected \"x_min,x_max,y_min,y_max\"");
  return Window{parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2]),
                parse_rat(parts[3])};
}

}  // namespace detail

// throws CLI::ParseError for usage problems; rational and JSON errors propagate
inline CliCommand parse_args(int argc, const char* const* argv) {
  CLI::App app{"exact lune enumeration and commutator norm bounds for sheared torus circles\n"
               "worker threads come from LUNELAB_THREADS when set"};
  app.require_subcommand(1);

  CliCommand cmd;
  std::string scenario_path, epsilon, s, t, name, delta, window, times;
  std::vector<std::string> marked;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file");
    sub->add_option("--epsilon", epsilon, "ramp half-width, rational in (0, 1/8)");
    sub->add_option("--s", s, "horizontal flow time");
    sub->add_option("--t", t, "vertical flow time");
    sub->add_option("--name", name, "scenario name for reports");
    sub->add_option("--delta", delta, "retry nudge for the vertical flow time");
    sub->add_option("--window", window, "clip window as x_min,x_max,y_min,y_max");
    sub->add_option("--marked", marked, "marked point as x,y (repeatable)");
    sub->add_option("--out", cmd.out_path, "output file (default stdout)");
  };

  CLI::App* v_flows = app.add_subcommand("flows", "profile and flow data for the configuration");
  CLI::App* v_inter = app.add_subcommand("intersections", "crossings of the sheared curves");
  v_inter->add_flag("--count-only", cmd.count_only, "omit the crossing list");
  CLI::App* v_lunes = app.add_subcommand("lunes", "enumerate and certify lunes");
  CLI::App* v_bound = app.add_subcommand("bound", "commutator norm bound report");
  CLI::App* v_sweep = app.add_subcommand("sweep", "bound consistency over a grid of flow times");
  v_sweep->add_option("--times", times, "comma-separated flow times (default 2,3,7/2)");
  CLI::App* v_svg = app.add_subcommand("svg", "render the configuration and lunes");
  for (CLI::App* sub : {v_flows, v_inter, v_lunes, v_bound, v_sweep, v_svg}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    throw;
  }

  if (app.got_subcommand(v_flows)) cmd.verb = CliCommand::Verb::flows;
  else if (app.got_subcommand(v_inter)) cmd.verb = CliCommand::Verb::intersections;
  else if (app.got_subcommand(v_lunes)) cmd.verb = CliCommand::Verb::lunes;
  else if (app.got_subcommand(v_bound)) cmd.verb = CliCommand::Verb::bound;
  else if (app.got_subcommand(v_sweep)) cmd.verb = CliCommand::Verb::sweep;
  else cmd.verb = CliCommand::Verb::svg;

  if (!scenario_path.empty()) {
    std::ifstream in(scenario_path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + scenario_path);
    Json j;
    in >> j;
    cmd.config = scenario_config_from_json(j);
  }
  if (!epsilon.empty()) cmd.config.epsilon = parse_rat(epsilon);
  if (!s.empty()) cmd.config.s = parse_rat(s);
  if (!t.empty()) cmd.config.t = parse_rat(t);
  if (!name.empty()) cmd.config.name = name;
  if (!delta.empty()) cmd.config.perturbation_delta = parse_rat(delta);
  if (!window.empty()) cmd.config.window = detail::parse_window_arg(window);
  for (const std::string& m : marked) cmd.config.marked_points.push_back(detail::parse_point_arg(m));
  if (!times.empty()) {
    cmd.sweep_times.clear();
    for (const std::string& part : detail::split_commas(times))
      cmd.sweep_times.push_back(parse_rat(part));
  }
  validate_config(cmd.config);
  return cmd;
}

namespace detail {

inline std::pair<Scenario, bool> build_scenario_retry(const ScenarioConfig& cfg) {
  try {
    return {build_scenario(cfg), false};
  } catch (const DegenerateInputError&) {
    if (cfg.perturbation_delta == 0) throw;
    ScenarioConfig nudged = cfg;
    nudged.t = cfg.t + cfg.perturbation_delta;
    return {build_scenario(nudged), true};
  }
}

inline Json flows_json(const ScenarioConfig& cfg) {
  const Profile prof = make_profile(cfg.epsilon);
  Json pj{{"breakpoints", Json::array()}, {"values", Json::array()}};
  for (const Rat& b : prof.breakpoints) pj["breakpoints"].push_back(rat_json(b));
  for (const Rat& v : prof.values) pj["values"].push_back(rat_json(v));

  const TorusCurve l = meridian(1 - 2 * cfg.epsilon);
  const TorusCurve lp = meridian(1 - cfg.epsilon);
  const ShearMap g_s = horizontal_shear(cfg.s, prof);
  const ShearMap f_t = vertical_shear(cfg.t, prof);
  const TorusCurve a = apply_shear(l, g_s);
  const TorusCurve b = apply_shear(apply_shear(lp, g_s), f_t);

  return Json{{"name", cfg.name},
              {"epsilon", rat_json(cfg.epsilon)},
              {"s", rat_json(cfg.s)},
              {"t", rat_json(cfg.t)},
              {"profile", pj},
              {"integral", rat_json(profile_integral(prof))},
              {"oscillation", rat_json(antiderivative_oscillation(prof))},
              {"reduction_fixed", verify_reduction(cfg)},
              {"upper", rat_json(hofer_upper_bound(cfg.s, cfg.t, antiderivative_oscillation(prof)))},
              {"images", Json{{"sheared_circle_vertices", a.vertices.size()},
                              {"double_sheared_circle_vertices", b.vertices.size()}}}};
}

inline Json intersections_json(const CliCommand& cmd) {
  auto [sc, retried] = build_scenario_retry(cmd.config);
  Json j{{"name", sc.config.name},
         {"window", window_json(sc.window)},
         {"count", sc.crossings.size()},
         {"p", xpoint_json(sc.p)},
         {"retried", retried}};
  if (!cmd.count_only) {
    j["crossings"] = Json::array();
    for (const XPoint& x : sc.crossings) j["crossings"].push_back(xpoint_json(x));
  }
  return j;
}

inline std::optional<std::string> report_violation(const BoundReport& r) {
  if (!r.lower) return "no finite lower bound";
  if (*r.lower > r.upper) return "lower bound exceeds upper bound";
  return std::nullopt;
}

inline Json sweep_json(const CliCommand& cmd) {
  const auto cells = bound_consistency_grid(cmd.config, cmd.sweep_times);
  Json j{{"times", Json::array()}, {"cells", Json::array()}};
  for (const Rat& t : cmd.sweep_times) j["times"].push_back(rat_json(t));
  bool all = true;
  for (const GridCell& c : cells) {
    all = all && c.consistent;
    j["cells"].push_back(Json{{"s", rat_json(c.s)},
                              {"t", rat_json(c.t)},
                              {"consistent", c.consistent},
                              {"report", bound_report_json(c.report)}});
  }
  j["all_consistent"] = all;
  return j;
}

}  // namespace detail

// 0 success, 2 usage, 3 degenerate after the retry policy, 4 internal
inline int run_cli(int argc, const char* const* argv) {
  std::optional<CliCommand> cmd;
  try {
    cmd = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return 0;  // parse_args already printed the help text
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    std::cerr << error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  }

  try {
    std::ostringstream body;
    std::optional<std::string> violation;
    switch (cmd->verb) {
      case CliCommand::Verb::flows:
        body << detail::flows_json(cmd->config).dump(2) << "\n";
        break;
      case CliCommand::Verb::intersections:
        body << detail::intersections_json(*cmd).dump(2) << "\n";
        break;
      case CliCommand::Verb::lunes: {
        const RunResult r = run_scenario(cmd->config);
        body << run_result_json(r).dump(2) << "\n";
        violation = detail::report_violation(r.report);
        break;
      }
      case CliCommand::Verb::bound: {
        const RunResult r = run_scenario(cmd->config);
        body << bound_report_json(r.report).dump(2) << "\n";
        violation = detail::report_violation(r.report);
        break;
      }
      case CliCommand::Verb::sweep: {
        const Json j = detail::sweep_json(*cmd);
        body << j.dump(2) << "\n";
        if (!j["all_consistent"].get<bool>()) violation = "grid cell outside the bound sandwich";
        break;
      }
      case CliCommand::Verb::svg: {
        const RunResult r = run_scenario(cmd->config);
        emit_svg(body, r);
        break;
      }
    }
    if (cmd->out_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream out(cmd->out_path);
      if (!out) {
        std::cerr << error_json("internal", "cannot write: " + cmd->out_path).dump(2) << "\n";
        return 4;
      }
      out << body.str();
    }
    if (violation) {
      std::cerr << error_json("inconsistent-report", *violation).dump(2) << "\n";
      return 4;
    }
    return 0;
  } catch (const DegenerateInputError& e) {
    std::cerr << error_json("degenerate-input", e.what()).dump(2) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump(2) << "\n";
    return 4;
  }
}

}  // namespace lunelab
