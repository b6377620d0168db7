#pragma once

// Single-plant unit commitment under perfect price foresight, solved exactly
// over a discretized power grid by dynamic programming on the time-expanded
// state graph.
//
// Output below the stable export limit (SEL) is only allowed on a start-up
// trajectory (strictly increasing from off until SEL is reached) or a
// shut-down trajectory (strictly decreasing from SEL until off). A
// trajectory may be cut by the end of the horizon. If the plant is
// committed below SEL before the first period, it may continue in either
// direction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"

namespace plantfit {

struct UcInstance {
  PlantParameters params;
  const PlantDynamics& dynamics;
  const MarketSeries& market;
  bool initial_committed = false;
  double initial_power = 0.0;  // MW, before period 0

  std::size_t horizon() const { return market.size(); }
};

struct SolverOptions {
  int power_levels = 21;    // evenly spaced levels over [sel_t, mel_t]
  double tolerance = 1e-9;  // relative profit optimality tolerance

  void check() const {
    if (power_levels < 2) throw ConfigError("power_levels must be at least 2");
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) throw ConfigError("tolerance must be >= 0");
  }
};

/// Clean spark spread net of variable cost, GBP per MWh of output.
inline double marginal_value(const PlantParameters& p, const MarketSeries& market, std::size_t t) {
  if (t >= market.size()) throw ConfigError("period index outside horizon");
  if (!(p.eta > 0.0)) throw ValidationError("eta out of range");
  return market.electricity()[t] - p.nu - market.fuel()[t] / p.eta -
         market.emissions()[t] * p.epsilon / p.eta;
}

namespace detail {

inline constexpr double kPowerEps = 1e-9;

// Committed output strictly below SEL (the ramp-only band).
inline bool below_sel(double power, double sel) { return power < sel - kPowerEps; }

// Cap on ramp-transit levels per period; beyond this the grid is unusable.
inline constexpr std::size_t kMaxTransitLevels = 512;

inline void sort_unique(std::vector<double>& levels) {
  std::sort(levels.begin(), levels.end());
  std::vector<double> out;
  out.reserve(levels.size());
  for (double v : levels) {
    if (out.empty() || v - out.back() > kPowerEps) out.push_back(v);
  }
  levels = std::move(out);
}

}  // namespace detail

/// Checks the instance invariants; throws SolverError for infeasible
/// dynamics and an empty horizon.
inline void check_instance(const UcInstance& inst) {
  const std::size_t n = inst.market.size();
  if (n == 0) throw SolverError("empty horizon");
  if (inst.dynamics.size() != n) throw SolverError("dynamics and market horizons differ");
  const auto& mel = inst.dynamics.mel();
  const auto& sel = inst.dynamics.sel();
  for (std::size_t t = 0; t < n; ++t) {
    if (!(sel[t] >= 0.0 && sel[t] <= mel[t]))
      throw SolverError("infeasible dynamics: sel > mel at period " + std::to_string(t));
  }
  if (!(inst.dynamics.ramp_up() > 0.0) || !(inst.dynamics.ramp_dn() > 0.0))
    throw SolverError("infeasible dynamics: ramp rates must be positive");
  if (!std::isfinite(inst.initial_power) || inst.initial_power < 0.0)
    throw SolverError("initial power must be finite and non-negative");
  if (!inst.initial_committed && inst.initial_power != 0.0)
    throw SolverError("initial power must be zero when the plant starts uncommitted");
  if (!(inst.params.eta > 0.0)) throw SolverError("eta must be positive");
}

/// Candidate output levels [MW] for period `t`, sorted ascending, always
/// starting with 0. Contains `power_levels` evenly spaced values over
/// [sel_t, mel_t], the full-rate start-up and shut-down levels below SEL
/// (multiples of the per-period ramp), and the full-rate trajectories that
/// continue from the initial state.
inline std::vector<double> power_grid(const UcInstance& inst, const SolverOptions& opts, std::size_t t) {
  const double mel = inst.dynamics.mel()[t];
  const double sel = inst.dynamics.sel()[t];
  const double dt = inst.market.dt();
  const double ru = inst.dynamics.ramp_up() * dt;
  const double rd = inst.dynamics.ramp_dn() * dt;

  std::vector<double> levels{0.0};
  if (mel > 0.0) {
    if (mel - sel > detail::kPowerEps) {
      const int n = opts.power_levels;
      for (int k = 0; k < n; ++k) levels.push_back(sel + (mel - sel) * k / (n - 1));
    } else {
      levels.push_back(mel);
    }
  }
  for (double step : {ru, rd}) {
    std::size_t count = 0;
    for (double v = step; detail::below_sel(v, sel); v += step) {
      if (++count > detail::kMaxTransitLevels)
        throw SolverError("ramp rate too small relative to SEL to build the transit grid");
      levels.push_back(v);
    }
  }
  if (inst.initial_committed && inst.initial_power > 0.0) {
    const double p0 = inst.initial_power;
    const double k = static_cast<double>(t + 1);
    for (double v : {p0, p0 + k * ru, p0 - k * rd}) {
      if (v > detail::kPowerEps && v <= mel + detail::kPowerEps) levels.push_back(std::min(v, mel));
    }
  }
  detail::sort_unique(levels);
  return levels;
}

/// Profit of a schedule, GBP: output times marginal value minus fixed cost
/// while committed minus start-up cost per start.
inline double schedule_profit(const Schedule& s, const UcInstance& inst) {
  const std::size_t n = inst.horizon();
  if (s.power.size() != n || s.committed.size() != n || s.started.size() != n)
    throw SolverError("schedule length differs from horizon");
  const double dt = inst.market.dt();
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    total += s.power[t] * marginal_value(inst.params, inst.market, t) * dt;
    if (s.committed[t]) total -= inst.params.phi * dt;
    if (s.started[t]) total -= inst.params.sigma;
  }
  return total;
}

struct Violation {
  enum class Kind { start_indicator, ramp_up, ramp_down, mel_coupling, negative_power, sel_rule };
  Kind kind;
  std::size_t period;
  double magnitude;
  std::string message;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::start_indicator: return "start indicator";
    case Violation::Kind::ramp_up: return "ramp up";
    case Violation::Kind::ramp_down: return "ramp down";
    case Violation::Kind::mel_coupling: return "MEL coupling";
    case Violation::Kind::negative_power: return "negative power";
    case Violation::Kind::sel_rule: return "SEL rule";
  }
  return "unknown";
}

namespace detail {

// Validates the first `n` periods, treating period n-1 as the end of the
// horizon. Feasibility is prefix-closed under this reading, which the
// enumeration oracle relies on.
inline std::vector<Violation> validate_prefix(const Schedule& s, const UcInstance& inst, std::size_t n) {
  std::vector<Violation> out;
  const auto& mel = inst.dynamics.mel();
  const auto& sel = inst.dynamics.sel();
  const double dt = inst.market.dt();
  const double ru = inst.dynamics.ramp_up() * dt;
  const double rd = inst.dynamics.ramp_dn() * dt;
  auto add = [&](Violation::Kind k, std::size_t t, double mag, std::string msg) {
    out.push_back(Violation{k, t, mag, std::move(msg)});
  };

  for (std::size_t t = 0; t < n; ++t) {
    const double p = s.power[t];
    const bool c = s.committed[t] != 0;
    const bool prev_c = t == 0 ? inst.initial_committed : s.committed[t - 1] != 0;
    const double prev_p = t == 0 ? inst.initial_power : s.power[t - 1];

    if (p < 0.0) add(Violation::Kind::negative_power, t, -p, "power is negative");
    const double cap = c ? mel[t] : 0.0;
    if (p > cap + kPowerEps) add(Violation::Kind::mel_coupling, t, p - cap, "power exceeds mel * committed");
    const int need_start = static_cast<int>(c) - static_cast<int>(prev_c);
    if (static_cast<int>(s.started[t] != 0) < need_start)
      add(Violation::Kind::start_indicator, t, 1.0, "commitment without start indicator");
    if (s.started[t] && !c) add(Violation::Kind::start_indicator, t, 1.0, "start indicator while off");
    if (p - prev_p > ru + kPowerEps) add(Violation::Kind::ramp_up, t, p - prev_p - ru, "ramp up limit exceeded");
    if (prev_p - p > rd + kPowerEps)
      add(Violation::Kind::ramp_down, t, prev_p - p - rd, "ramp down limit exceeded");
  }

  // Runs of committed output below SEL.
  enum class Cls { off, on, sub };
  auto cls_at = [&](std::size_t t) {
    if (!s.committed[t]) return Cls::off;
    return below_sel(s.power[t], sel[t]) ? Cls::sub : Cls::on;
  };
  const Cls initial_cls = !inst.initial_committed                         ? Cls::off
                          : below_sel(inst.initial_power, sel.empty() ? 0.0 : sel[0]) ? Cls::sub
                                                                                    : Cls::on;
  std::size_t t = 0;
  while (t < n) {
    if (cls_at(t) != Cls::sub) {
      ++t;
      continue;
    }
    const std::size_t a = t;
    while (t < n && cls_at(t) == Cls::sub) ++t;
    const std::size_t b = t;  // one past the run
    const Cls pred = a == 0 ? initial_cls : cls_at(a - 1);
    const bool at_end = b == n;
    const Cls succ = at_end ? Cls::sub : cls_at(b);

    std::vector<double> seq;
    if (pred == Cls::sub) seq.push_back(inst.initial_power);
    for (std::size_t k = a; k < b; ++k) seq.push_back(s.power[k]);

    for (std::size_t k = a; k < b; ++k) {
      if (s.power[k] <= kPowerEps)
        add(Violation::Kind::sel_rule, k, sel[k], "committed at zero output below SEL");
    }

    bool inc = true;
    bool dec = true;
    for (std::size_t k = 1; k < seq.size(); ++k) {
      if (!(seq[k] > seq[k - 1] + kPowerEps)) inc = false;
      if (!(seq[k] < seq[k - 1] - kPowerEps)) dec = false;
    }
    // A start-up run follows an off state (or an ambiguous initial state)
    // and hands over to output at or above SEL. A shut-down run is the
    // mirror image.
    const bool start_ok = inc && (pred == Cls::off || pred == Cls::sub) && (at_end || succ == Cls::on);
    const bool stop_ok = dec && (pred == Cls::on || pred == Cls::sub) && (at_end || succ == Cls::off);
    if (!start_ok && !stop_ok) {
      double depth = 0.0;
      for (std::size_t k = a; k < b; ++k) depth = std::max(depth, sel[k] - s.power[k]);
      std::ostringstream msg;
      msg << "output below SEL outside a monotone start-up/shut-down trajectory (periods " << a << ".."
          << (b - 1) << ")";
      add(Violation::Kind::sel_rule, a, depth, msg.str());
    }
  }
  return out;
}

}  // namespace detail

/// Lists every violated constraint; an empty result means feasible.
inline std::vector<Violation> validate_schedule(const Schedule& s, const UcInstance& inst) {
  const std::size_t n = inst.horizon();
  if (s.power.size() != n || s.committed.size() != n || s.started.size() != n)
    throw SolverError("schedule length differs from horizon");
  if (inst.dynamics.size() != n) throw SolverError("dynamics and market horizons differ");
  return detail::validate_prefix(s, inst, n);
}

namespace detail {

// Lexicographic DP score: profit (max), then committed periods (min),
// then energy (min).
struct Score {
  double profit = -std::numeric_limits<double>::infinity();
  int committed = 0;
  double energy = 0.0;
};

inline bool better(const Score& a, const Score& b, double tie_eps) {
  if (a.profit > b.profit + tie_eps) return true;
  if (b.profit > a.profit + tie_eps) return false;
  if (a.committed != b.committed) return a.committed < b.committed;
  return a.energy < b.energy - kPowerEps;
}

enum class Phase : unsigned char { off, on, rise, fall };

struct Node {
  double power;
  Phase phase;
};

inline std::vector<Node> nodes_for(const std::vector<double>& levels, double sel) {
  std::vector<Node> nodes;
  nodes.reserve(2 * levels.size() + 1);
  nodes.push_back({0.0, Phase::off});
  for (double v : levels) {
    if (!below_sel(v, sel)) {
      nodes.push_back({v, Phase::on});
    } else if (v > kPowerEps) {
      nodes.push_back({v, Phase::rise});
      nodes.push_back({v, Phase::fall});
    }
  }
  return nodes;
}

inline bool committed(Phase p) { return p != Phase::off; }

// Whether the phase pair is allowed, ignoring ramp limits.
inline bool phase_transition_ok(Phase from, double p, Phase to, double q) {
  switch (from) {
    case Phase::off: return to != Phase::fall;
    case Phase::on: return to != Phase::rise;
    case Phase::rise:
      if (to == Phase::on) return true;
      return to == Phase::rise && q > p + kPowerEps;
    case Phase::fall:
      if (to == Phase::off) return true;
      return to == Phase::fall && q < p - kPowerEps;
  }
  return false;
}

}  // namespace detail

/// Profit-maximal schedule over the discretized power grid. Among
/// profit-equal optima the one with fewer committed periods, then less
/// energy, is returned.
inline Schedule solve_uc(const UcInstance& inst, const SolverOptions& opts = {}) {
  using namespace detail;
  check_instance(inst);
  opts.check();

  const std::size_t n = inst.horizon();
  const double dt = inst.market.dt();
  const double ru = inst.dynamics.ramp_up() * dt + kPowerEps;
  const double rd = inst.dynamics.ramp_dn() * dt + kPowerEps;
  const auto& sel = inst.dynamics.sel();
  const double phi_cost = inst.params.phi * dt;
  const double sigma = inst.params.sigma;

  std::vector<std::vector<Node>> nodes(n);
  std::vector<double> value(n);
  double scale = sigma;
  for (std::size_t t = 0; t < n; ++t) {
    nodes[t] = nodes_for(power_grid(inst, opts, t), sel[t]);
    value[t] = marginal_value(inst.params, inst.market, t) * dt;
    scale += std::abs(value[t]) * inst.dynamics.mel()[t] + phi_cost;
  }
  const double tie_eps = opts.tolerance * 1e-3 * (1.0 + scale) / static_cast<double>(n);

  auto stage_gain = [&](std::size_t t, const Node& to, bool start) {
    double g = to.power * value[t];
    if (committed(to.phase)) g -= phi_cost;
    if (start) g -= sigma;
    return g;
  };

  // Virtual predecessor of period 0.
  Phase init_phase = Phase::off;
  if (inst.initial_committed)
    init_phase = below_sel(inst.initial_power, sel[0]) ? Phase::rise : Phase::on;
  const bool init_ambiguous = inst.initial_committed && init_phase == Phase::rise;
  const double p0 = inst.initial_power;

  std::vector<std::vector<Score>> score(n);
  std::vector<std::vector<int>> pred(n);

  score[0].assign(nodes[0].size(), Score{});
  pred[0].assign(nodes[0].size(), -1);
  for (std::size_t j = 0; j < nodes[0].size(); ++j) {
    const Node& to = nodes[0][j];
    if (to.power - p0 > ru || p0 - to.power > rd) continue;
    bool ok;
    if (init_ambiguous) {
      ok = to.phase == Phase::on || to.phase == Phase::off ||
           (to.phase == Phase::rise && to.power > p0 + kPowerEps) ||
           (to.phase == Phase::fall && to.power < p0 - kPowerEps);
    } else {
      ok = phase_transition_ok(init_phase, p0, to.phase, to.power);
    }
    if (!ok) continue;
    const bool start = committed(to.phase) && !inst.initial_committed;
    const bool c = committed(to.phase);
    score[0][j] = Score{stage_gain(0, to, start), c ? 1 : 0, to.power};
  }

  for (std::size_t t = 1; t < n; ++t) {
    const auto& from_nodes = nodes[t - 1];
    const auto& to_nodes = nodes[t];
    score[t].assign(to_nodes.size(), Score{});
    pred[t].assign(to_nodes.size(), -1);
    for (std::size_t j = 0; j < to_nodes.size(); ++j) {
      const Node& to = to_nodes[j];
      const bool c = committed(to.phase);
      Score best;
      int best_i = -1;
      for (std::size_t i = 0; i < from_nodes.size(); ++i) {
        const Score& s = score[t - 1][i];
        if (s.profit == -std::numeric_limits<double>::infinity()) continue;
        const Node& from = from_nodes[i];
        if (to.power - from.power > ru || from.power - to.power > rd) continue;
        if (!phase_transition_ok(from.phase, from.power, to.phase, to.power)) continue;
        const bool start = c && !committed(from.phase);
        const Score cand{s.profit + stage_gain(t, to, start), s.committed + (c ? 1 : 0),
                         s.energy + to.power};
        if (best_i < 0 || better(cand, best, tie_eps)) {
          best = cand;
          best_i = static_cast<int>(i);
        }
      }
      score[t][j] = best;
      pred[t][j] = best_i;
    }
  }

  int best_j = -1;
  for (std::size_t j = 0; j < nodes[n - 1].size(); ++j) {
    const Score& s = score[n - 1][j];
    if (s.profit == -std::numeric_limits<double>::infinity()) continue;
    if (best_j < 0 || better(s, score[n - 1][static_cast<std::size_t>(best_j)], tie_eps))
      best_j = static_cast<int>(j);
  }
  if (best_j < 0) throw SolverError("no feasible schedule on the power grid");

  Schedule out = Schedule::all_off(n);
  int j = best_j;
  for (std::size_t t = n; t-- > 0;) {
    const Node& node = nodes[t][static_cast<std::size_t>(j)];
    out.power[t] = node.power;
    out.committed[t] = committed(node.phase) ? 1 : 0;
    j = pred[t][static_cast<std::size_t>(j)];
  }
  for (std::size_t t = 0; t < n; ++t) {
    const bool prev = t == 0 ? inst.initial_committed : out.committed[t - 1] != 0;
    out.started[t] = (out.committed[t] && !prev) ? 1 : 0;
  }
  out.profit = schedule_profit(out, inst);
  return out;
}

}  // namespace plantfit
