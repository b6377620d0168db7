#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plantfit/errors.hpp"

namespace plantfit {

using Timestamp = std::chrono::sys_seconds;

/// Thermal plant parameters. Costs are absolute: sigma in GBP per start,
/// phi in GBP/h while committed, nu in GBP/MWh of output. epsilon is the
/// emission factor in tCO2 per MWh of fuel and is never fitted.
struct PlantParameters {
  double eta = 0.5;
  double sigma = 0.0;
  double phi = 0.0;
  double nu = 0.0;
  double epsilon = 0.0;

  friend bool operator==(const PlantParameters&, const PlantParameters&) = default;
};

/// The four fitted dimensions, in search-vector order.
enum class Param : std::size_t { eta = 0, sigma = 1, phi = 2, nu = 3 };

inline constexpr std::size_t kFittedParams = 4;
inline constexpr std::array<std::string_view, kFittedParams> kParamNames = {"eta", "sigma", "phi",
                                                                            "nu"};

inline std::string_view param_name(Param p) { return kParamNames[static_cast<std::size_t>(p)]; }

inline Param param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    if (kParamNames[i] == name) return static_cast<Param>(i);
  }
  throw ConfigError("unknown parameter name '" + std::string(name) +
                    "' (expected eta, sigma, phi or nu)");
}

inline double get(const PlantParameters& p, Param which) {
  switch (which) {
    case Param::eta: return p.eta;
    case Param::sigma: return p.sigma;
    case Param::phi: return p.phi;
    case Param::nu: return p.nu;
  }
  return 0.0;
}

inline void set(PlantParameters& p, Param which, double value) {
  switch (which) {
    case Param::eta: p.eta = value; break;
    case Param::sigma: p.sigma = value; break;
    case Param::phi: p.phi = value; break;
    case Param::nu: p.nu = value; break;
  }
}

inline std::vector<double> to_vector(const PlantParameters& p) { return {p.eta, p.sigma, p.phi, p.nu}; }

inline PlantParameters from_vector(std::span<const double> x, double epsilon) {
  if (x.size() != kFittedParams) throw ConfigError("parameter vector must have 4 entries");
  return PlantParameters{x[0], x[1], x[2], x[3], epsilon};
}

/// Box constraints on (eta, sigma, phi, nu).
struct SearchBounds {
  std::array<double, kFittedParams> lower{};
  std::array<double, kFittedParams> upper{};

  double lo(Param p) const { return lower[static_cast<std::size_t>(p)]; }
  double hi(Param p) const { return upper[static_cast<std::size_t>(p)]; }

  void check() const {
    for (std::size_t i = 0; i < kFittedParams; ++i) {
      const std::string name(kParamNames[i]);
      if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
        throw ValidationError(name + " bounds must be finite");
      if (!(lower[i] < upper[i])) throw ValidationError(name + " bounds must satisfy lower < upper");
    }
    if (!(lower[0] > 0.0) || upper[0] > 1.0) throw ValidationError("eta bounds must lie within (0, 1]");
    for (std::size_t i = 1; i < kFittedParams; ++i) {
      if (lower[i] < 0.0) throw ValidationError(std::string(kParamNames[i]) + " lower bound negative");
    }
  }
};

/// Default search box for a plant of the given capacity [MW]: eta in
/// [0.20, 0.65], sigma in [0, 200 cap] GBP, phi in [0, 20 cap] GBP/h,
/// nu in [0, 20] GBP/MWh.
inline SearchBounds default_bounds(double capacity_mw) {
  if (!(capacity_mw > 0.0)) throw ValidationError("capacity must be positive");
  return SearchBounds{{0.20, 0.0, 0.0, 0.0}, {0.65, 200.0 * capacity_mw, 20.0 * capacity_mw, 20.0}};
}

/// Checks the type invariants of `p` (finite fields, 0 < eta <= 1,
/// non-negative costs and emission factor).
inline void check_parameter_invariants(const PlantParameters& p) {
  const std::array<double, 5> values = {p.eta, p.sigma, p.phi, p.nu, p.epsilon};
  const std::array<std::string_view, 5> names = {"eta", "sigma", "phi", "nu", "epsilon"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ValidationError(std::string(names[i]) + " is not finite");
  }
  if (!(p.eta > 0.0 && p.eta <= 1.0)) throw ValidationError("eta out of range");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < 0.0) throw ValidationError(std::string(names[i]) + " negative");
  }
}

/// Checks the type invariants of `p` and that every fitted field lies in
/// `bounds`. Returns `p` unchanged; throws ValidationError naming the field.
inline PlantParameters validate_parameters(const PlantParameters& p, const SearchBounds& bounds) {
  check_parameter_invariants(p);
  const auto values = to_vector(p);
  for (std::size_t i = 0; i < kFittedParams; ++i) {
    if (values[i] < bounds.lower[i] || values[i] > bounds.upper[i])
      throw ValidationError(std::string(kParamNames[i]) + " out of range");
  }
  return p;
}

/// Start-up and fixed costs expressed per MW of capacity, as reported in
/// fit summaries. eta and nu are carried through unchanged.
struct NormalizedCosts {
  double eta = 0.0;
  double sigma_per_mw_cap = 0.0;  // GBP/MW(cap)
  double phi_per_mw_cap = 0.0;    // GBP/h/MW(cap)
  double nu = 0.0;
};

inline NormalizedCosts normalize_costs(const PlantParameters& p, double capacity_mw) {
  if (!(capacity_mw > 0.0) || !std::isfinite(capacity_mw))
    throw ValidationError("capacity must be positive");
  return NormalizedCosts{p.eta, p.sigma / capacity_mw, p.phi / capacity_mw, p.nu};
}

/// Inverse of normalize_costs.
inline PlantParameters denormalize_costs(const NormalizedCosts& n, double capacity_mw, double epsilon) {
  if (!(capacity_mw > 0.0) || !std::isfinite(capacity_mw))
    throw ValidationError("capacity must be positive");
  return PlantParameters{n.eta, n.sigma_per_mw_cap * capacity_mw, n.phi_per_mw_cap * capacity_mw,
                         n.nu, epsilon};
}

namespace detail {

inline std::chrono::seconds step_from_hours(double dt_hours) {
  if (!(dt_hours > 0.0) || !std::isfinite(dt_hours)) throw DataError("dt must be positive");
  const double secs = dt_hours * 3600.0;
  const auto rounded = std::llround(secs);
  if (rounded <= 0 || std::abs(secs - static_cast<double>(rounded)) > 1e-6)
    throw DataError("dt must be a whole number of seconds");
  return std::chrono::seconds(rounded);
}

inline void require_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]))
      throw DataError(std::string(what) + " is not finite at period " + std::to_string(i));
  }
}

}  // namespace detail

/// `n` timestamps starting at `start`, `dt_hours` apart.
inline std::vector<Timestamp> make_grid(Timestamp start, double dt_hours, std::size_t n) {
  const auto step = detail::step_from_hours(dt_hours);
  std::vector<Timestamp> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = start + step * static_cast<long long>(i);
  return grid;
}

/// Electricity (w), fuel (f) and emission (e) prices on a uniform grid.
class MarketSeries {
 public:
  MarketSeries() = default;

  MarketSeries(std::vector<Timestamp> grid, double dt_hours, std::vector<double> electricity,
               std::vector<double> fuel, std::vector<double> emissions)
      : grid_(std::move(grid)),
        dt_(dt_hours),
        w_(std::move(electricity)),
        f_(std::move(fuel)),
        e_(std::move(emissions)) {
    const auto step = detail::step_from_hours(dt_);
    if (w_.size() != grid_.size() || f_.size() != grid_.size() || e_.size() != grid_.size())
      throw DataError("market series lengths differ from grid length");
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      if (grid_[i] - grid_[i - 1] != step) throw DataError("market grid is not uniform with step dt");
    }
    detail::require_finite(w_, "electricity price");
    detail::require_finite(f_, "fuel price");
    detail::require_finite(e_, "emissions price");
  }

  std::size_t size() const { return grid_.size(); }
  double dt() const { return dt_; }
  const std::vector<Timestamp>& grid() const { return grid_; }
  const std::vector<double>& electricity() const { return w_; }
  const std::vector<double>& fuel() const { return f_; }
  const std::vector<double>& emissions() const { return e_; }

 private:
  std::vector<Timestamp> grid_;
  double dt_ = 0.5;
  std::vector<double> w_;
  std::vector<double> f_;
  std::vector<double> e_;
};

/// Operator-declared dynamic limits: per-period MEL and SEL [MW] and a
/// single up/down ramp rate [MW/h].
class PlantDynamics {
 public:
  PlantDynamics() = default;

  PlantDynamics(std::vector<double> mel, std::vector<double> sel, double ramp_up, double ramp_dn)
      : mel_(std::move(mel)), sel_(std::move(sel)), ramp_up_(ramp_up), ramp_dn_(ramp_dn) {
    if (mel_.size() != sel_.size()) throw DataError("mel and sel lengths differ");
    detail::require_finite(mel_, "mel");
    detail::require_finite(sel_, "sel");
    for (std::size_t t = 0; t < mel_.size(); ++t) {
      if (sel_[t] < 0.0 || sel_[t] > mel_[t])
        throw DataError("sel must satisfy 0 <= sel <= mel (period " + std::to_string(t) + ")");
    }
    if (!(ramp_up_ > 0.0) || !(ramp_dn_ > 0.0) || !std::isfinite(ramp_up_) || !std::isfinite(ramp_dn_))
      throw DataError("ramp rates must be positive");
    capacity_ = mel_.empty() ? 0.0 : *std::max_element(mel_.begin(), mel_.end());
  }

  std::size_t size() const { return mel_.size(); }
  const std::vector<double>& mel() const { return mel_; }
  const std::vector<double>& sel() const { return sel_; }
  double ramp_up() const { return ramp_up_; }
  double ramp_dn() const { return ramp_dn_; }
  // max(mel) over the horizon
  double capacity() const { return capacity_; }

 private:
  std::vector<double> mel_;
  std::vector<double> sel_;
  double ramp_up_ = 1.0;
  double ramp_dn_ = 1.0;
  double capacity_ = 0.0;
};

/// Unit commitment result. `committed` and `started` hold 0/1.
struct Schedule {
  std::vector<double> power;
  std::vector<unsigned char> committed;
  std::vector<unsigned char> started;
  double profit = 0.0;

  std::size_t size() const { return power.size(); }

  static Schedule all_off(std::size_t n) {
    return Schedule{std::vector<double>(n, 0.0), std::vector<unsigned char>(n, 0),
                    std::vector<unsigned char>(n, 0), 0.0};
  }
};

/// Historical production [MW] on a market grid.
class ObservedProduction {
 public:
  ObservedProduction() = default;

  ObservedProduction(std::vector<Timestamp> grid, std::vector<double> power)
      : grid_(std::move(grid)), power_(std::move(power)) {
    if (grid_.size() != power_.size()) throw DataError("observed production length differs from grid");
    detail::require_finite(power_, "observed production");
    for (std::size_t t = 0; t < power_.size(); ++t) {
      if (power_[t] < 0.0) throw DataError("observed production negative at period " + std::to_string(t));
    }
  }

  std::size_t size() const { return power_.size(); }
  const std::vector<Timestamp>& grid() const { return grid_; }
  const std::vector<double>& power() const { return power_; }

 private:
  std::vector<Timestamp> grid_;
  std::vector<double> power_;
};

}  // namespace plantfit
