#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "plantfit/uc_oracle.hpp"
#include "plantfit/uc_solver.hpp"

using namespace plantfit;
using plantfit::fixtures::flat_market;
using plantfit::fixtures::OwnedInstance;
using plantfit::fixtures::random_instance;

namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind k, std::size_t t) {
  for (const auto& x : v) {
    if (x.kind == k && x.period == t) return true;
  }
  return false;
}

// T=3, one-hour periods, MEL = SEL = 100 MW, fast ramps, spark spread of
// 20, 20 and -10 GBP/MWh, start cost 1000 GBP, initially off.
OwnedInstance three_period_example() {
  OwnedInstance inst{PlantParameters{0.5, 1000.0, 0.0, 0.0, 0.0},
                     PlantDynamics({100, 100, 100}, {100, 100, 100}, 200.0, 200.0),
                     flat_market({60, 60, 30}, 20.0, 0.0, 1.0)};
  return inst;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST(MarginalValue, Examples) {
  const auto m = flat_market({50.0}, 20.0, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(marginal_value({0.5, 0, 0, 0, 0}, m, 0), 10.0);
  const auto m0 = flat_market({37.25}, 0.0, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(marginal_value({1.0, 0, 0, 0, 0}, m0, 0), 37.25);
  const auto m2 = flat_market({50.0}, 20.0, 25.0, 1.0);
  EXPECT_DOUBLE_EQ(marginal_value({0.5, 0, 0, 2.0, 0.2}, m2, 0), -2.0);
  EXPECT_THROW(marginal_value({0.5, 0, 0, 0, 0}, m2, 1), ConfigError);
}

TEST(SolveUc, AllOffWhenNeverProfitable) {
  OwnedInstance inst{PlantParameters{0.5, 100.0, 10.0, 0.0, 0.0},
                     PlantDynamics({100, 100, 100, 100}, {40, 40, 40, 40}, 100.0, 100.0),
                     flat_market({30, 35, 20, 39}, 20.0, 0.0, 1.0)};
  const Schedule s = solve_uc(inst.view());
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(s.power[t], 0.0);
    EXPECT_EQ(s.committed[t], 0);
  }
  EXPECT_EQ(s.profit, 0.0);
}

TEST(SolveUc, ThreePeriodExample) {
  const auto inst = three_period_example();
  const Schedule s = solve_uc(inst.view());
  EXPECT_EQ(s.power, (std::vector<double>{100, 100, 0}));
  EXPECT_EQ(s.committed, (std::vector<unsigned char>{1, 1, 0}));
  EXPECT_EQ(s.started, (std::vector<unsigned char>{1, 0, 0}));
  EXPECT_DOUBLE_EQ(s.profit, 3000.0);
  EXPECT_DOUBLE_EQ(schedule_profit(s, inst.view()), 3000.0);
  EXPECT_TRUE(validate_schedule(s, inst.view()).empty());
}

// Independent check of the example: with MEL = SEL the plant is either off
// or at 100 MW, so the 2^3 commitment patterns cover every schedule.
TEST(SolveUc, ThreePeriodExampleByCommitmentPatterns) {
  const double spread[3] = {20.0, 20.0, -10.0};
  double best = -1e18;
  for (int mask = 0; mask < 8; ++mask) {
    double profit = 0.0;
    bool prev = false;
    for (int t = 0; t < 3; ++t) {
      const bool on = (mask >> t) & 1;
      if (on) profit += 100.0 * spread[t];
      if (on && !prev) profit -= 1000.0;
      prev = on;
    }
    best = std::max(best, profit);
  }
  EXPECT_DOUBLE_EQ(best, 3000.0);
  EXPECT_DOUBLE_EQ(enumerate_uc_oracle(three_period_example().view(), SolverOptions{5, 1e-9}).profit, best);
}

TEST(SolveUc, RunsAtMelWhenEverythingIsProfitable) {
  const std::vector<double> mel = {120, 200, 180, 90, 200};
  OwnedInstance inst{PlantParameters{1.0, 0.0, 0.0, 0.0, 0.0},
                     PlantDynamics(mel, {50, 50, 50, 50, 50}, 1e6, 1e6), flat_market({40, 10, 80, 5, 3}, 0.0, 0.0, 0.5)};
  inst.initial_committed = true;
  inst.initial_power = 120.0;
  const Schedule s = solve_uc(inst.view());
  EXPECT_EQ(s.power, mel);
}

TEST(SolveUc, Errors) {
  const PlantDynamics empty_dyn({}, {}, 1.0, 1.0);
  const MarketSeries empty_market({}, 0.5, {}, {}, {});
  EXPECT_THROW(solve_uc(UcInstance{PlantParameters{}, empty_dyn, empty_market}), SolverError);

  // sel above mel cannot even be represented.
  EXPECT_THROW(PlantDynamics({100.0}, {150.0}, 10.0, 10.0), DataError);

  const auto inst = three_period_example();
  const PlantDynamics short_dyn({100, 100}, {100, 100}, 200, 200);
  EXPECT_THROW(solve_uc(UcInstance{inst.params, short_dyn, inst.market}), SolverError);
  EXPECT_THROW(solve_uc(inst.view(), SolverOptions{1, 1e-9}), ConfigError);
}

TEST(SolveUc, RampsThroughSelOnStartAndStop) {
  // SEL 150, ramp 60 MW per period: start-up passes through 60 and 120 MW.
  const std::size_t n = 10;
  OwnedInstance inst{PlantParameters{1.0, 0.0, 0.0, 0.0, 0.0},
                     PlantDynamics(std::vector<double>(n, 200.0), std::vector<double>(n, 150.0), 60.0, 60.0),
                     flat_market({-1, -1, 50, 50, 50, 50, 50, -1, -1, -1}, 0.0, 0.0, 1.0)};
  const Schedule s = solve_uc(inst.view());
  EXPECT_TRUE(validate_schedule(s, inst.view()).empty());
  // A hand-built feasible schedule bounds the optimum from below.
  Schedule hand = Schedule::all_off(n);
  hand.power = {0, 0, 60, 120, 180, 200, 180, 120, 60, 0};
  for (std::size_t t = 0; t < n; ++t) hand.committed[t] = hand.power[t] > 0;
  hand.started[2] = 1;
  ASSERT_TRUE(validate_schedule(hand, inst.view()).empty());
  EXPECT_GE(s.profit, schedule_profit(hand, inst.view()));
  bool transit = false;
  for (double p : s.power) transit = transit || (p > 0 && p < 150);
  EXPECT_TRUE(transit);
}

TEST(ScheduleProfit, Examples) {
  const auto inst = three_period_example();
  EXPECT_EQ(schedule_profit(Schedule::all_off(3), inst.view()), 0.0);

  OwnedInstance single{PlantParameters{1.0, 50.0, 2.0, 0.0, 0.0}, PlantDynamics({100}, {0}, 1000, 1000),
                       flat_market({10.0}, 0.0, 0.0, 0.5)};
  const Schedule s{{100.0}, {1}, {1}, 0.0};
  EXPECT_DOUBLE_EQ(schedule_profit(s, single.view()), 449.0);
  EXPECT_THROW(schedule_profit(Schedule::all_off(2), inst.view()), SolverError);
}

TEST(ValidateSchedule, ConstructedViolations) {
  OwnedInstance inst{PlantParameters{1.0, 0.0, 0.0, 0.0, 0.0}, PlantDynamics({200, 200, 200}, {0, 0, 0}, 40, 40),
                     flat_market({10, 10, 10}, 0.0, 0.0, 1.0)};

  Schedule off_but_producing{{0, 50, 0}, {0, 0, 0}, {0, 0, 0}, 0.0};
  EXPECT_TRUE(has_kind(validate_schedule(off_but_producing, inst.view()), Violation::Kind::mel_coupling, 1));

  Schedule jump{{0, 100, 100}, {0, 1, 1}, {0, 1, 0}, 0.0};
  const auto v = validate_schedule(jump, inst.view());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::ramp_up);
  EXPECT_EQ(v[0].period, 1u);
  EXPECT_DOUBLE_EQ(v[0].magnitude, 60.0);

  Schedule unannounced{{0, 40, 40}, {0, 1, 1}, {0, 0, 0}, 0.0};
  EXPECT_TRUE(has_kind(validate_schedule(unannounced, inst.view()), Violation::Kind::start_indicator, 1));
}

TEST(ValidateSchedule, SelRule) {
  const std::size_t n = 6;
  OwnedInstance inst{PlantParameters{1.0, 0.0, 0.0, 0.0, 0.0},
                     PlantDynamics(std::vector<double>(n, 200.0), std::vector<double>(n, 100.0), 60.0, 60.0),
                     flat_market(std::vector<double>(n, 10.0), 0.0, 0.0, 1.0)};
  auto check = [&](std::vector<double> p) {
    Schedule s = Schedule::all_off(n);
    s.power = p;
    for (std::size_t t = 0; t < n; ++t) {
      s.committed[t] = p[t] > 0 ? 1 : 0;
      s.started[t] = s.committed[t] && (t == 0 || !s.committed[t - 1]) ? 1 : 0;
    }
    return validate_schedule(s, inst.view());
  };
  EXPECT_TRUE(check({0, 50, 100, 150, 90, 30}).empty());      // start, run, stop
  EXPECT_TRUE(check({0, 0, 0, 0, 40, 80}).empty());           // start cut by the horizon
  EXPECT_FALSE(check({0, 50, 50, 100, 100, 0}).empty());      // dwelling below SEL
  EXPECT_FALSE(check({0, 50, 0, 0, 0, 0}).empty());           // aborted start-up
  EXPECT_FALSE(check({0, 50, 100, 50, 100, 100}).empty());    // dip below SEL while on
  EXPECT_FALSE(check({0, 50, 100, 150, 90, 150}).empty());     // shut-down reversed
  const auto dwell = check({0, 50, 50, 100, 100, 40});
  ASSERT_EQ(dwell.size(), 1u);
  EXPECT_EQ(dwell.front().kind, Violation::Kind::sel_rule);
  EXPECT_EQ(dwell.front().period, 1u);
  EXPECT_DOUBLE_EQ(dwell.front().magnitude, 50.0);
}

TEST(Oracle, RejectsLargeInstances) {
  const std::size_t n = 11;
  OwnedInstance inst{PlantParameters{}, PlantDynamics(std::vector<double>(n, 10.0), std::vector<double>(n, 0.0), 10, 10),
                     flat_market(std::vector<double>(n, 10.0), 0.0, 0.0, 1.0)};
  EXPECT_THROW(enumerate_uc_oracle(inst.view()), SolverError);
  auto small = three_period_example();
  EXPECT_THROW(enumerate_uc_oracle(small.view(), SolverOptions{7, 1e-9}), SolverError);
}

TEST(Oracle, AllOffWhenUnprofitable) {
  OwnedInstance inst{PlantParameters{0.4, 10.0, 0.0, 0.0, 0.0}, PlantDynamics({100, 100, 100}, {30, 30, 30}, 50, 50),
                     flat_market({5, 5, 5}, 20.0, 0.0, 1.0)};
  const Schedule s = enumerate_uc_oracle(inst.view(), SolverOptions{5, 1e-9});
  EXPECT_EQ(s.power, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(s.profit, 0.0);
}

// Properties over random instances.

TEST(SolveUcProperties, MatchesOracleOnSmallInstances) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 6;
    const SolverOptions opts{2 + i % 4, 1e-9};
    const auto inst = random_instance(rng, n, 1.0);
    const Schedule dp = solve_uc(inst.view(), opts);
    const Schedule brute = enumerate_uc_oracle(inst.view(), opts);
    EXPECT_LE(relative_gap(dp.profit, brute.profit), 1e-6) << "instance " << i;
    EXPECT_TRUE(validate_schedule(dp, inst.view()).empty()) << "instance " << i;
  }
}

TEST(SolveUcProperties, FeasibleAndNonNegativeFromOff) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto inst = random_instance(rng, 48, 0.5);
    const Schedule s = solve_uc(inst.view());
    const auto v = validate_schedule(s, inst.view());
    EXPECT_TRUE(v.empty()) << "instance " << i << ": " << (v.empty() ? "" : v.front().message);
    EXPECT_EQ(s.profit, schedule_profit(s, inst.view()));
    inst.initial_committed = false;
    inst.initial_power = 0.0;
    EXPECT_GE(solve_uc(inst.view()).profit, 0.0);
  }
}

TEST(SolveUcProperties, ScaleEquivariance) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng, 48, 0.5);
    const double lambda = fixtures::uniform(rng, 0.2, 5.0);
    auto scale = [&](const std::vector<double>& v) {
      std::vector<double> out = v;
      for (double& x : out) x *= lambda;
      return out;
    };
    OwnedInstance scaled = inst;
    scaled.market = MarketSeries(inst.market.grid(), inst.market.dt(), scale(inst.market.electricity()),
                                 scale(inst.market.fuel()), scale(inst.market.emissions()));
    scaled.params.nu *= lambda;
    scaled.params.phi *= lambda;
    scaled.params.sigma *= lambda;
    const Schedule base = solve_uc(inst.view());
    const Schedule big = solve_uc(scaled.view());
    EXPECT_LE(relative_gap(big.profit, lambda * base.profit), 1e-9);
    EXPECT_TRUE(validate_schedule(big, inst.view()).empty());
  }
}

TEST(SolveUcProperties, CostMonotonicity) {
  std::mt19937_64 rng(17);
  auto no_gain = [](double after, double before) { return after <= before + 1e-9 * std::max(1.0, std::abs(before)); };
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng, 48, 0.5);
    const double base = solve_uc(inst.view()).profit;
    for (Param p : {Param::sigma, Param::phi, Param::nu}) {
      OwnedInstance more = inst;
      set(more.params, p, get(inst.params, p) * 1.1 + 1.0);
      EXPECT_TRUE(no_gain(solve_uc(more.view()).profit, base)) << param_name(p);
    }
    OwnedInstance better_eta = inst;
    better_eta.params.eta = std::min(1.0, inst.params.eta * 1.05);
    EXPECT_TRUE(no_gain(base, solve_uc(better_eta.view()).profit));

    auto bump = [&](int which, double delta) {
      OwnedInstance out = inst;
      auto w = inst.market.electricity(), f = inst.market.fuel(), e = inst.market.emissions();
      const std::size_t t = static_cast<std::size_t>(i) % w.size();
      (which == 0 ? w : which == 1 ? f : e)[t] += delta;
      out.market = MarketSeries(inst.market.grid(), inst.market.dt(), w, f, e);
      return solve_uc(out.view()).profit;
    };
    EXPECT_TRUE(no_gain(base, bump(0, 5.0)));
    EXPECT_TRUE(no_gain(bump(1, 5.0), base));
    EXPECT_TRUE(no_gain(bump(2, 5.0), base));
  }
}

TEST(SolveUcProperties, Deterministic) {
  std::mt19937_64 rng(8);
  const auto inst = random_instance(rng, 96, 0.5);
  const Schedule a = solve_uc(inst.view());
  const Schedule b = solve_uc(inst.view());
  EXPECT_EQ(a.power, b.power);
  EXPECT_EQ(a.committed, b.committed);
  EXPECT_EQ(a.profit, b.profit);
}
