#pragma once

#include "lunelab/lune.hpp"
#include "lunelab/scenario.hpp"
#include "lunelab/shear.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace lunelab {

// minimum of the four separation quantities; the three holomorphic-curve ones
// are absent (+infinity) for these configurations, so the lune minimum decides
struct BoundInputs {
  std::optional<Rat> sigma_m, sigma_l, sigma_lp;  // empty means +infinity
  SigmaP sigma_p;
};

inline std::optional<Rat> separation_lower_bound(const BoundInputs& in) {
  std::optional<Rat> e;
  for (const auto& v : {in.sigma_m, in.sigma_l, in.sigma_lp, in.sigma_p.value})
    if (v && (!e || *v < *e)) e = v;
  return e;
}

// both circles must sit inside the annulus where the profile vanishes,
// otherwise the sheared pair no longer reduces to the model configuration
inline bool verify_reduction(const Rat& epsilon) {
  const Profile prof = make_profile(epsilon);
  return rho_at(prof, 1 - 2 * epsilon) == 0 && rho_at(prof, 1 - epsilon) == 0;
}

inline bool verify_reduction(const ScenarioConfig& cfg) { return verify_reduction(cfg.epsilon); }

struct BoundReport {
  std::string scenario;
  std::size_t lune_count = 0;
  std::optional<Rat> sigma_p;     // minimal lune energy, empty means +infinity
  std::optional<Rat> esep_lower;  // separation energy bound, empty means +infinity
  std::optional<Rat> lower;       // certified commutator lower bound, equals esep_lower
  Rat upper;                      // 2 * min(s,t) * oscillation
  std::vector<std::string> flags;
};

struct RunResult {
  Scenario scenario;
  LuneEnumeration lunes;            // every certificate in the window
  std::vector<LuneCertificate> viable;  // after the marked-point filter
  SigmaP sigma;
  BoundReport report;
  bool retried = false;
};

namespace detail {

inline RunResult run_once(const ScenarioConfig& cfg) {
  RunResult r;
  r.scenario = build_scenario(cfg);
  r.lunes = enumerate_lunes(r.scenario.A, r.scenario.B, r.scenario.p, r.scenario.window,
                            r.scenario.crossings, r.scenario.crossings_all);
  r.viable = r.lunes.certificates;
  if (!cfg.marked_points.empty()) {
    std::erase_if(r.viable, [&](const LuneCertificate& c) {
      return !filter_forbidden(c, cfg.marked_points);
    });
  }
  r.sigma = sigma_p(r.viable, r.scenario.window, r.lunes.complete_in_window);

  r.report.scenario = cfg.name;
  r.report.lune_count = r.viable.size();
  r.report.sigma_p = r.sigma.value;
  r.report.esep_lower = separation_lower_bound(BoundInputs{{}, {}, {}, r.sigma});
  r.report.lower = r.report.esep_lower;
  const Rat target = rat_min(cfg.s, cfg.t) - 1;
  r.report.upper = hofer_upper_bound(cfg.s, cfg.t, antiderivative_oscillation(r.scenario.profile));
  if (!r.lunes.complete_in_window) r.report.flags.push_back("window-incomplete");
  if (!r.report.esep_lower) r.report.flags.push_back("separation-unbounded");
  if (!cfg.marked_points.empty()) {
    r.report.flags.push_back("marked-points-filtered");
    if (r.viable.size() != r.lunes.certificates.size())
      r.report.flags.push_back("lunes-removed-by-filter");
  }
  if (target <= 0) r.report.flags.push_back("vacuous-lower-bound");
  r.report.flags.push_back(r.report.lower && *r.report.lower >= target ? "lower-bound-met"
                                                                       : "lower-bound-miss");
  if (!verify_reduction(cfg)) r.report.flags.push_back("reduction-violated");
  return r;
}

}  // namespace detail

// one automatic retry with a nudged vertical flow time when the configuration
// is degenerate (tangency, shared vertex, collinear overlap, coincident pair)
inline RunResult run_scenario(const ScenarioConfig& cfg) {
  try {
    return detail::run_once(cfg);
  } catch (const DegenerateInputError&) {
    if (cfg.perturbation_delta == 0) throw;
    ScenarioConfig nudged = cfg;
    nudged.t = cfg.t + cfg.perturbation_delta;
    RunResult r = detail::run_once(nudged);
    r.retried = true;
    r.report.flags.insert(r.report.flags.begin(), "perturbed-retry");
    return r;
  }
}

struct GridCell {
  Rat s, t;
  BoundReport report;
  bool consistent = false;  // min(s,t)-1-4e <= lower <= upper and upper == 2*min(s,t)
};

// the bound sandwich over a small grid of flow times
inline std::vector<GridCell> bound_consistency_grid(const ScenarioConfig& base,
                                                    const std::vector<Rat>& times) {
  std::vector<GridCell> cells;
  for (const Rat& s : times)
    for (const Rat& t : times) {
      ScenarioConfig cfg = base;
      cfg.s = s;
      cfg.t = t;
      cfg.name = base.name + "-s" + format_rat(s) + "-t" + format_rat(t);
      GridCell cell;
      cell.s = s;
      cell.t = t;
      RunResult r = run_scenario(cfg);
      cell.report = r.report;
      const Rat two_min = 2 * rat_min(s, t);
      const Rat threshold = rat_min(s, t) - 1 - 4 * cfg.epsilon;
      cell.consistent = cell.report.lower &&
                        *cell.report.lower >= threshold &&
                        *cell.report.lower <= cell.report.upper &&
                        cell.report.upper == two_min;
      cells.push_back(std::move(cell));
    }
  return cells;
}

}  // namespace lunelab
