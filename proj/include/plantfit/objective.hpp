#pragma once

// Outer-level error between a UC schedule and observed production, and
// two-dimensional slices of that error over the parameter space.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"
#include "plantfit/parallel.hpp"
#include "plantfit/uc_solver.hpp"

namespace plantfit {

/// Everything a candidate evaluation needs besides the parameters. Shared
/// read-only between concurrent evaluations.
struct FitContext {
  PlantDynamics dynamics;
  MarketSeries market;
  ObservedProduction observed;
  bool initial_committed = false;
  double initial_power = 0.0;

  std::size_t horizon() const { return market.size(); }

  UcInstance instance(const PlantParameters& p) const {
    return UcInstance{p, dynamics, market, initial_committed, initial_power};
  }
};

/// Builds a context and infers the initial state from the first observed
/// value: committed iff it is positive, with that value as initial output.
inline FitContext make_context(PlantDynamics dynamics, MarketSeries market, ObservedProduction observed) {
  if (observed.size() == 0) throw DataError("observed production is empty");
  if (observed.size() != market.size() || dynamics.size() != market.size())
    throw DataError("observed, dynamics and market series have different lengths");
  if (observed.grid() != market.grid()) throw DataError("observed production grid differs from market grid");
  const double p0 = observed.power().front();
  FitContext ctx{std::move(dynamics), std::move(market), std::move(observed), p0 > 0.0, p0 > 0.0 ? p0 : 0.0};
  return ctx;
}

inline double sse(std::span<const double> predicted, std::span<const double> observed) {
  if (predicted.size() != observed.size()) throw DataError("predicted and observed lengths differ");
  double total = 0.0;
  for (std::size_t t = 0; t < predicted.size(); ++t) {
    const double d = predicted[t] - observed[t];
    total += d * d;
  }
  return total;
}

inline double sse(const Schedule& predicted, const ObservedProduction& observed) {
  return sse(predicted.power, observed.power());
}

inline double rms_from_sse(double sse_value, std::size_t periods) {
  if (periods == 0) throw DataError("rms of an empty series");
  return std::sqrt(sse_value / static_cast<double>(periods));
}

inline double rms(std::span<const double> predicted, std::span<const double> observed) {
  return rms_from_sse(sse(predicted, observed), predicted.size());
}

inline double rms(const Schedule& predicted, const ObservedProduction& observed) {
  return rms(predicted.power, observed.power());
}

struct FitnessRecord {
  PlantParameters params;
  double sse = 0.0;       // MW^2 summed over periods
  double rms = 0.0;       // MW
  double uc_profit = 0.0; // GBP
};

/// Solves the inner UC at `params` and scores it against the observations.
inline FitnessRecord evaluate_candidate(const PlantParameters& params, const FitContext& ctx,
                                        const SolverOptions& opts = {}) {
  const Schedule s = solve_uc(ctx.instance(params), opts);
  const double e = sse(s, ctx.observed);
  return FitnessRecord{params, e, rms_from_sse(e, ctx.horizon()), s.profit};
}

struct LandscapeAxis {
  Param param = Param::eta;
  std::vector<double> values;
};

struct LandscapeSlice {
  LandscapeAxis axis1;
  LandscapeAxis axis2;
  PlantParameters fixed;                 // values of the two remaining parameters
  std::vector<std::vector<double>> rms;  // rms[i][j] at (axis1[i], axis2[j])
};

/// `n` evenly spaced values over [lo, hi]; a single value when n == 1.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

/// RMS error at every point of the axis1 x axis2 grid with the other two
/// parameters held at `fixed`. Points are independent and evaluated on up
/// to `jobs` threads.
inline LandscapeSlice landscape_slice(const LandscapeAxis& axis1, const LandscapeAxis& axis2,
                                      const PlantParameters& fixed, const FitContext& ctx,
                                      const SolverOptions& opts = {}, std::size_t jobs = 1) {
  if (axis1.param == axis2.param) throw ConfigError("axes must differ");
  if (axis1.values.empty() || axis2.values.empty()) throw ConfigError("landscape grids must be non-empty");
  const std::size_t rows = axis1.values.size();
  const std::size_t cols = axis2.values.size();
  auto flat = parallel_map(rows * cols, jobs, [&](std::size_t k) {
    PlantParameters p = fixed;
    set(p, axis1.param, axis1.values[k / cols]);
    set(p, axis2.param, axis2.values[k % cols]);
    return evaluate_candidate(p, ctx, opts).rms;
  });
  LandscapeSlice out{axis1, axis2, fixed, std::vector<std::vector<double>>(rows, std::vector<double>(cols))};
  for (std::size_t k = 0; k < flat.size(); ++k) out.rms[k / cols][k % cols] = flat[k];
  return out;
}

}  // namespace plantfit
