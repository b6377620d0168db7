#pragma once

// Synthetic market and plant data for closed-loop experiments, and a writer
// that lays a dataset out in the CSV schemas read by the CLI.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"
#include "plantfit/ingest.hpp"

namespace plantfit {

inline Timestamp synthetic_epoch() {
  using namespace std::chrono;
  return sys_days{year{2018} / January / 1};
}

/// Half-hourly prices over `days` days. Each day draws a fuel price in
/// [10, 35] GBP/MWh(fuel) and a carbon price in [15, 25] GBP/tCO2; the
/// electricity price follows a night-trough / morning / evening-peak shape
/// around the break-even price of `around`, offset by a daily level and
/// per-period noise. Fuel prices that differ between days let efficiency
/// and variable cost act differently on the schedule. The first period is
/// priced at zero so a plant starting off stays off.
inline MarketSeries synthetic_market(std::size_t days, std::uint64_t seed, const PlantParameters& around) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t per_day = 48;
  const std::size_t n = days * per_day;
  std::vector<double> w(n), f(n), e(n);
  for (std::size_t d = 0; d < days; ++d) {
    const double fuel = 10.0 + 25.0 * unit(rng);
    const double carbon = 15.0 + 10.0 * unit(rng);
    const double breakeven = around.nu + (fuel + carbon * around.epsilon) / around.eta;
    const bool weekend = (d % 7) >= 5;
    const double level = breakeven + 2.0 + 14.0 * unit(rng) - (weekend ? 5.0 : 0.0);
    for (std::size_t h = 0; h < per_day; ++h) {
      const std::size_t t = d * per_day + h;
      const double hour = static_cast<double>(h) / 2.0;
      const double shape = 14.0 * std::exp(-std::pow((hour - 18.0) / 2.5, 2)) +
                           8.0 * std::exp(-std::pow((hour - 9.0) / 3.0, 2)) -
                           28.0 * std::exp(-std::pow((hour - 3.5) / 3.0, 2));
      f[t] = fuel;
      e[t] = carbon;
      w[t] = level + shape + 8.0 * unit(rng) - 4.0;
    }
  }
  if (n > 0) w[0] = 0.0;
  return MarketSeries(make_grid(synthetic_epoch(), 0.5, n), 0.5, std::move(w), std::move(f), std::move(e));
}

/// Constant MEL of `capacity` with a 12-hour derating to 80 % in the middle
/// of the horizon, SEL at 45 % of capacity, ramps of half the capacity per
/// hour.
inline PlantDynamics synthetic_dynamics(std::size_t n, double capacity = 400.0) {
  std::vector<double> mel(n, capacity), sel(n, 0.45 * capacity);
  for (std::size_t t = n / 2; t < std::min(n, n / 2 + 24); ++t) mel[t] = 0.8 * capacity;
  return PlantDynamics(std::move(mel), std::move(sel), 0.5 * capacity, 0.5 * capacity);
}

/// Writes prices.csv, production.csv, dynamics.csv and plant.cfg into `dir`.
/// Returns the path of plant.cfg.
inline std::string write_dataset(const std::filesystem::path& dir, const MarketSeries& market,
                                 const PlantDynamics& dynamics, const ObservedProduction& observed,
                                 double epsilon, const std::string& plant_id = "SYNTH-1") {
  namespace fs = std::filesystem;
  if (market.size() == 0) throw DataError("cannot write an empty dataset");
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("prices.csv");
    out << "timestamp_utc,electricity_gbp_mwh,fuel_gbp_mwh_fuel,carbon_gbp_tco2\n";
    for (std::size_t t = 0; t < market.size(); ++t)
      out << format_timestamp(market.grid()[t]) << ',' << format_number(market.electricity()[t]) << ','
          << format_number(market.fuel()[t]) << ',' << format_number(market.emissions()[t]) << '\n';
  }
  {
    auto out = open("production.csv");
    out << "timestamp_utc,mw\n";
    for (std::size_t t = 0; t < observed.size(); ++t)
      out << format_timestamp(observed.grid()[t]) << ',' << format_number(observed.power()[t]) << '\n';
  }
  {
    auto out = open("dynamics.csv");
    out << "timestamp_utc,mel_mw,sel_mw,ramp_up_mw_per_h,ramp_dn_mw_per_h\n";
    for (std::size_t t = 0; t < dynamics.size(); ++t)
      out << format_timestamp(market.grid()[t]) << ',' << format_number(dynamics.mel()[t]) << ','
          << format_number(dynamics.sel()[t]) << ',' << format_number(dynamics.ramp_up()) << ','
          << format_number(dynamics.ramp_dn()) << '\n';
  }
  const auto step = detail::step_from_hours(market.dt());
  {
    auto out = open("plant.cfg");
    out << "# synthetic plant generated by the UC model itself\n"
        << "plant_id = " << plant_id << "\n"
        << "fuel_type = gas\n"
        << "epsilon_tco2_per_mwh_fuel = " << format_number(epsilon) << "\n"
        << "prices = prices.csv\n"
        << "production = production.csv\n"
        << "dynamics = dynamics.csv\n"
        << "horizon_start = " << format_timestamp(market.grid().front()) << "\n"
        << "horizon_end = " << format_timestamp(market.grid().back() + step) << "\n"
        << "dt_hours = " << format_number(market.dt()) << "\n";
  }
  return (dir / "plant.cfg").string();
}

}  // namespace plantfit
