#pragma once

// Exhaustive reference solver for small unit commitment instances. It
// shares only the power grid with solve_uc: feasibility comes from
// validate_schedule's prefix check and the objective from schedule_profit.

#include <cstddef>
#include <limits>
#include <vector>

#include "plantfit/uc_solver.hpp"

namespace plantfit {

inline constexpr std::size_t kOracleMaxHorizon = 10;
inline constexpr int kOracleMaxLevels = 6;

inline Schedule enumerate_uc_oracle(const UcInstance& inst, const SolverOptions& opts = {}) {
  check_instance(inst);
  opts.check();
  const std::size_t n = inst.horizon();
  if (n > kOracleMaxHorizon || opts.power_levels > kOracleMaxLevels)
    throw SolverError("instance too large for exhaustive enumeration");

  struct Choice {
    double power;
    unsigned char committed;
  };
  std::vector<std::vector<Choice>> choices(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (double v : power_grid(inst, opts, t)) {
      if (v > detail::kPowerEps) {
        choices[t].push_back({v, 1});
      } else {
        choices[t].push_back({0.0, 0});
        choices[t].push_back({0.0, 1});
      }
    }
  }

  Schedule cur = Schedule::all_off(n);
  Schedule best;
  double best_profit = -std::numeric_limits<double>::infinity();
  int best_committed = 0;
  double best_energy = 0.0;

  // Depth-first over all per-period choices; start indicators are implied
  // (a start is charged exactly when commitment switches on).
  auto recurse = [&](auto&& self, std::size_t t) -> void {
    if (t == n) {
      const double profit = schedule_profit(cur, inst);
      int committed = 0;
      double energy = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        committed += cur.committed[k];
        energy += cur.power[k];
      }
      const bool take = profit > best_profit ||
                        (profit == best_profit &&
                         (committed < best_committed || (committed == best_committed && energy < best_energy)));
      if (take) {
        best = cur;
        best_profit = profit;
        best_committed = committed;
        best_energy = energy;
      }
      return;
    }
    const bool prev = t == 0 ? inst.initial_committed : cur.committed[t - 1] != 0;
    for (const Choice& ch : choices[t]) {
      cur.power[t] = ch.power;
      cur.committed[t] = ch.committed;
      cur.started[t] = (ch.committed && !prev) ? 1 : 0;
      if (!detail::validate_prefix(cur, inst, t + 1).empty()) continue;
      self(self, t + 1);
    }
    cur.power[t] = 0.0;
    cur.committed[t] = 0;
    cur.started[t] = 0;
  };
  recurse(recurse, 0);

  if (best_profit == -std::numeric_limits<double>::infinity())
    throw SolverError("no feasible schedule on the power grid");
  best.profit = best_profit;
  return best;
}

}  // namespace plantfit
