#pragma once

// Derivative-free outer search: differential evolution (DE/rand/1/bin) for
// global exploration, then compass search from the DE incumbent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"
#include "plantfit/objective.hpp"
#include "plantfit/parallel.hpp"
#include "plantfit/uc_solver.hpp"

namespace plantfit {

/// Axis-aligned box for the generic optimizers.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }

  void check() const {
    if (lower.size() != upper.size() || lower.empty()) throw ConfigError("box bounds malformed");
    for (std::size_t d = 0; d < lower.size(); ++d) {
      if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d]))
        throw ConfigError("box bounds must be finite with lower < upper");
    }
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t d = 0; d < dim(); ++d) {
      if (!(x[d] >= lower[d] && x[d] <= upper[d])) return false;
    }
    return true;
  }

  double clip(std::size_t d, double v) const { return std::clamp(v, lower[d], upper[d]); }
};

inline Box to_box(const SearchBounds& b) {
  return Box{{b.lower.begin(), b.lower.end()}, {b.upper.begin(), b.upper.end()}};
}

using Fitness = std::function<double(std::span<const double>)>;
// Called once per evaluation, in a deterministic order.
using EvalObserver = std::function<void(std::span<const double>, double)>;

namespace detail {

// Fitness errors and non-finite values score +inf.
inline double safe_score(const Fitness& f, std::span<const double> x) {
  try {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline std::vector<double> evaluate_batch(const Fitness& f, const std::vector<std::vector<double>>& xs,
                                          std::size_t jobs, const EvalObserver& observer) {
  auto scores = parallel_map(xs.size(), jobs, [&](std::size_t i) { return safe_score(f, xs[i]); });
  if (observer) {
    for (std::size_t i = 0; i < xs.size(); ++i) observer(xs[i], scores[i]);
  }
  return scores;
}

}  // namespace detail

struct DeConfig {
  std::size_t population = 32;
  double weight = 0.8;     // differential weight F
  double crossover = 0.9;  // CR
  std::size_t generations = 150;
  std::uint64_t seed = 1;
  // Stop as soon as the best score is <= target.
  double target = -std::numeric_limits<double>::infinity();

  void check() const {
    if (population < 4) throw ConfigError("DE population must be at least 4");
    if (!(weight > 0.0 && weight <= 2.0)) throw ConfigError("DE weight F must lie in (0, 2]");
    if (!(crossover >= 0.0 && crossover <= 1.0)) throw ConfigError("DE crossover CR must lie in [0, 1]");
  }
};

struct DeResult {
  std::vector<double> best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> history;  // best score after initialisation and after each generation
  std::size_t generations = 0;
  std::size_t evaluations = 0;
};

/// DE/rand/1/bin. Trial vectors for a generation are drawn serially from
/// the seeded generator and then evaluated as one batch, so results do not
/// depend on `jobs`.
inline DeResult differential_evolution(const Fitness& fitness, const Box& box, const DeConfig& cfg,
                                       std::size_t jobs = 1, const EvalObserver& observer = {}) {
  box.check();
  cfg.check();
  const std::size_t dim = box.dim();
  const std::size_t np = cfg.population;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_member(0, np - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (auto& x : pop) {
    for (std::size_t d = 0; d < dim; ++d) x[d] = box.lower[d] + unit(rng) * (box.upper[d] - box.lower[d]);
  }
  std::vector<double> scores = detail::evaluate_batch(fitness, pop, jobs, observer);

  DeResult res;
  res.evaluations = np;
  auto best_index = [&] {
    return static_cast<std::size_t>(std::min_element(scores.begin(), scores.end()) - scores.begin());
  };
  res.history.push_back(scores[best_index()]);

  std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
  for (std::size_t g = 0; g < cfg.generations && res.history.back() > cfg.target; ++g) {
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t a, b, c;
      do a = pick_member(rng); while (a == i);
      do b = pick_member(rng); while (b == i || b == a);
      do c = pick_member(rng); while (c == i || c == a || c == b);
      const std::size_t forced = pick_dim(rng);
      for (std::size_t d = 0; d < dim; ++d) {
        const bool cross = unit(rng) < cfg.crossover || d == forced;
        trials[i][d] = cross ? box.clip(d, pop[a][d] + cfg.weight * (pop[b][d] - pop[c][d])) : pop[i][d];
      }
    }
    const auto trial_scores = detail::evaluate_batch(fitness, trials, jobs, observer);
    res.evaluations += np;
    for (std::size_t i = 0; i < np; ++i) {
      if (trial_scores[i] <= scores[i]) {
        pop[i] = trials[i];
        scores[i] = trial_scores[i];
      }
    }
    res.history.push_back(scores[best_index()]);
    res.generations = g + 1;
  }
  const std::size_t bi = best_index();
  res.best = pop[bi];
  res.best_score = scores[bi];
  return res;
}

struct CompassConfig {
  // Per-dimension steps; when empty they default to the given fractions of
  // each bound range.
  std::vector<double> initial_step;
  std::vector<double> min_step;
  double initial_step_fraction = 0.1;
  double min_step_fraction = 1e-3;
  double contraction = 0.5;
  std::size_t max_iterations = 10000;

  void check() const {
    if (!(contraction > 0.0 && contraction < 1.0)) throw ConfigError("compass contraction must lie in (0, 1)");
    if (!(min_step_fraction > 0.0) || !(initial_step_fraction > 0.0))
      throw ConfigError("compass step fractions must be positive");
    for (double s : min_step) {
      if (!(s > 0.0)) throw ConfigError("compass minimum step must be positive");
    }
  }
};

struct CompassResult {
  std::vector<double> best;
  double best_score = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

/// Coordinate polling with step contraction. Each iteration evaluates all
/// 2*dim polls as one batch and moves to the first improving one in poll
/// order (+step, -step for dimension 0, then dimension 1, ...). When no
/// poll improves, every step is multiplied by the contraction factor.
/// `start_score`, when finite, is taken as the score of `start` instead of
/// evaluating it.
inline CompassResult compass_search(const Fitness& fitness, std::span<const double> start, const Box& box,
                                    const CompassConfig& cfg, std::size_t jobs = 1,
                                    const EvalObserver& observer = {},
                                    double start_score = std::numeric_limits<double>::quiet_NaN()) {
  box.check();
  cfg.check();
  const std::size_t dim = box.dim();
  if (!box.contains(start)) throw ConfigError("compass search start point is outside the bounds");

  std::vector<double> step = cfg.initial_step;
  std::vector<double> min_step = cfg.min_step;
  if (step.empty()) {
    for (std::size_t d = 0; d < dim; ++d) step.push_back(cfg.initial_step_fraction * (box.upper[d] - box.lower[d]));
  }
  if (min_step.empty()) {
    for (std::size_t d = 0; d < dim; ++d) min_step.push_back(cfg.min_step_fraction * (box.upper[d] - box.lower[d]));
  }
  if (step.size() != dim || min_step.size() != dim) throw ConfigError("compass step vectors have wrong length");

  CompassResult res;
  res.best.assign(start.begin(), start.end());
  if (std::isnan(start_score)) {
    res.best_score = detail::evaluate_batch(fitness, {res.best}, 1, observer).front();
    res.evaluations = 1;
  } else {
    res.best_score = start_score;
  }

  auto converged = [&] {
    for (std::size_t d = 0; d < dim; ++d) {
      if (step[d] >= min_step[d]) return false;
    }
    return true;
  };

  std::vector<std::vector<double>> polls;
  while (!converged() && res.iterations < cfg.max_iterations) {
    ++res.iterations;
    polls.clear();
    for (std::size_t d = 0; d < dim; ++d) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> x = res.best;
        x[d] = box.clip(d, x[d] + sign * step[d]);
        if (x[d] != res.best[d]) polls.push_back(std::move(x));
      }
    }
    const auto scores = detail::evaluate_batch(fitness, polls, jobs, observer);
    res.evaluations += polls.size();
    bool moved = false;
    for (std::size_t k = 0; k < polls.size(); ++k) {
      if (scores[k] < res.best_score) {
        res.best = polls[k];
        res.best_score = scores[k];
        moved = true;
        break;
      }
    }
    if (!moved) {
      for (double& s : step) s *= cfg.contraction;
    }
  }
  return res;
}

struct TraceRecord {
  std::size_t index = 0;
  PlantParameters params;
  double sse = 0.0;
};

struct FitResult {
  PlantParameters best;
  double sse = 0.0;
  double rms = 0.0;
  double capacity = 0.0;        // MW, max mel over the horizon
  NormalizedCosts normalized;   // sigma, phi per MW(cap)
  std::size_t evaluations = 0;  // inner UC solves
  std::vector<TraceRecord> trace;
  double de_best_sse = 0.0;
  std::size_t de_generations = 0;
  std::size_t compass_iterations = 0;
};

struct FitOptions {
  SearchBounds bounds;
  DeConfig de;
  CompassConfig compass;
  SolverOptions solver;
  std::size_t jobs = 1;
};

/// Default fit settings for `ctx`: default bounds from the plant capacity
/// and DE stopping early on an exact match.
inline FitOptions default_fit_options(const FitContext& ctx) {
  FitOptions o;
  o.bounds = default_bounds(ctx.dynamics.capacity());
  o.de.target = 0.0;
  return o;
}

/// Minimizes the squared error between the UC schedule and observed
/// production over (eta, sigma, phi, nu) within `opts.bounds`. epsilon is
/// taken from `epsilon`.
inline FitResult fit(const FitContext& ctx, double epsilon, const FitOptions& opts) {
  if (ctx.observed.size() == 0) throw DataError("observed production is empty");
  opts.bounds.check();
  const Box box = to_box(opts.bounds);

  FitResult out;
  out.capacity = ctx.dynamics.capacity();
  const Fitness fitness = [&](std::span<const double> x) {
    return evaluate_candidate(from_vector(x, epsilon), ctx, opts.solver).sse;
  };
  const EvalObserver record = [&](std::span<const double> x, double score) {
    out.trace.push_back(TraceRecord{out.trace.size(), from_vector(x, epsilon), score});
  };

  const DeResult de = differential_evolution(fitness, box, opts.de, opts.jobs, record);
  out.de_best_sse = de.best_score;
  out.de_generations = de.generations;

  const CompassResult cs = compass_search(fitness, de.best, box, opts.compass, opts.jobs, record, de.best_score);
  out.compass_iterations = cs.iterations;

  out.best = from_vector(cs.best, epsilon);
  const FitnessRecord final_eval = evaluate_candidate(out.best, ctx, opts.solver);
  out.sse = final_eval.sse;
  out.rms = final_eval.rms;
  out.evaluations = de.evaluations + cs.evaluations + 1;
  out.normalized = out.capacity > 0.0 ? normalize_costs(out.best, out.capacity) : NormalizedCosts{};
  return out;
}

/// Running minimum of the trace scores.
inline std::vector<double> running_best(const std::vector<TraceRecord>& trace) {
  std::vector<double> best;
  best.reserve(trace.size());
  double b = std::numeric_limits<double>::infinity();
  for (const auto& r : trace) {
    b = std::min(b, r.sse);
    best.push_back(b);
  }
  return best;
}

}  // namespace plantfit
