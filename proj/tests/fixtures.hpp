#pragma once

// Shared generators for unit tests and the acceptance suite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/ingest.hpp"
#include "plantfit/objective.hpp"
#include "plantfit/synthetic.hpp"
#include "plantfit/uc_solver.hpp"

namespace plantfit::fixtures {

inline Timestamp epoch_2018() { return synthetic_epoch(); }

// Owns the pieces a UcInstance refers to.
struct OwnedInstance {
  PlantParameters params;
  PlantDynamics dynamics;
  MarketSeries market;
  bool initial_committed = false;
  double initial_power = 0.0;

  UcInstance view() const { return UcInstance{params, dynamics, market, initial_committed, initial_power}; }
};

inline MarketSeries flat_market(std::vector<double> w, double fuel, double carbon, double dt) {
  const std::size_t n = w.size();
  return MarketSeries(make_grid(epoch_2018(), dt, n), dt, std::move(w), std::vector<double>(n, fuel),
                      std::vector<double>(n, carbon));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return uniform(rng, 0.0, 1.0) < p; }

// Random instance with `periods` periods. Prices straddle the plant's
// break-even so that both on and off periods are common; ramps are kept
// large enough relative to SEL that the transit grid stays small.
inline OwnedInstance random_instance(std::mt19937_64& rng, std::size_t periods, double dt) {
  const double cap = uniform(rng, 50.0, 400.0);
  const double sel_frac = coin(rng, 0.15) ? 0.0 : uniform(rng, 0.2, 0.8);
  std::vector<double> mel(periods), sel(periods);
  for (std::size_t t = 0; t < periods; ++t) {
    mel[t] = coin(rng, 0.85) ? cap : cap * uniform(rng, 0.6, 1.0);
    sel[t] = std::min(mel[t], sel_frac * cap);
  }
  const double ramp_floor = std::max(sel_frac * cap / 3.0, 0.05 * cap) / dt;
  const double ramp_up = uniform(rng, ramp_floor, 1.5 * cap / dt);
  const double ramp_dn = uniform(rng, ramp_floor, 1.5 * cap / dt);

  PlantParameters p;
  p.eta = uniform(rng, 0.3, 0.6);
  p.nu = uniform(rng, 0.0, 5.0);
  p.epsilon = uniform(rng, 0.0, 0.4);
  p.phi = uniform(rng, 0.0, 5.0) * cap;
  p.sigma = uniform(rng, 0.0, 60.0) * cap;

  const double fuel_level = uniform(rng, 10.0, 30.0);
  const double carbon_level = uniform(rng, 0.0, 30.0);
  std::vector<double> w(periods), f(periods), e(periods);
  for (std::size_t t = 0; t < periods; ++t) {
    f[t] = fuel_level * uniform(rng, 0.9, 1.1);
    e[t] = carbon_level * uniform(rng, 0.9, 1.1);
    const double breakeven = p.nu + (f[t] + e[t] * p.epsilon) / p.eta;
    w[t] = breakeven + uniform(rng, -25.0, 25.0);
  }

  OwnedInstance inst{p, PlantDynamics(std::move(mel), std::move(sel), ramp_up, ramp_dn),
                     MarketSeries(make_grid(epoch_2018(), dt, periods), dt, std::move(w), std::move(f), std::move(e))};
  const double r = uniform(rng, 0.0, 1.0);
  if (r < 0.5) {
    inst.initial_committed = false;
    inst.initial_power = 0.0;
  } else {
    inst.initial_committed = true;
    const double m0 = inst.dynamics.mel()[0];
    const double s0 = inst.dynamics.sel()[0];
    inst.initial_power = r < 0.85 ? uniform(rng, s0, m0) : uniform(rng, 0.05 * m0, std::max(s0, 0.06 * m0));
  }
  return inst;
}

// Closed-loop fixture: observations generated by the UC model at `truth`
// on synthetic half-hourly data. Period 0 is unprofitable, so the initial
// state inferred from the observations (off) is the one used to generate
// them.
struct ClosedLoopFixture {
  PlantParameters truth;
  PlantDynamics dynamics;
  MarketSeries market;
  FitContext context;
};

inline ClosedLoopFixture make_closed_loop(const PlantParameters& truth, std::size_t days, const SolverOptions& opts,
                                          double noise_sd = 0.0, std::uint64_t seed = 7) {
  MarketSeries market = synthetic_market(days, seed, truth);
  PlantDynamics dynamics = synthetic_dynamics(market.size());
  auto synth = synthesize(truth, dynamics, market, opts, noise_sd, seed + 1);
  FitContext ctx = make_context(dynamics, market, std::move(synth.observed));
  return ClosedLoopFixture{truth, std::move(dynamics), std::move(market), std::move(ctx)};
}

// Reference plant for the closed-loop checks: a CCGT of 400 MW with
// costs in the range of the published best fits.
inline PlantParameters reference_truth() {
  PlantParameters p;
  p.eta = 0.53;
  p.sigma = 40.0 * 400.0;
  p.phi = 6.0 * 400.0;
  p.nu = 2.0;
  p.epsilon = 0.184;
  return p;
}

}  // namespace plantfit::fixtures
