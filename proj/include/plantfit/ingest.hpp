#pragma once

// CSV loading and alignment of price, production and dynamic-data series
// onto one uniform settlement grid, plus a closed-loop synthetic data
// generator.
//
// Timestamps are UTC ISO-8601 ("2018-01-01T00:30:00Z"; the trailing Z, a
// "+00:00" suffix, a space separator, missing seconds and date-only values
// are accepted on input). Each row covers [timestamp, timestamp + resolution).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"
#include "plantfit/uc_solver.hpp"

namespace plantfit {

// ---------------------------------------------------------------------------
// Timestamps and numbers

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

inline std::optional<Timestamp> try_parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  std::string_view s = detail::trim(text);
  if (s.ends_with('Z')) s.remove_suffix(1);
  if (s.ends_with("+00:00")) s.remove_suffix(6);
  int y, mo, d, h = 0, mi = 0, sec = 0;
  if (!detail::parse_fixed_int(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || s[7] != '-' ||
      !detail::parse_fixed_int(s, 5, 2, mo) || !detail::parse_fixed_int(s, 8, 2, d))
    return std::nullopt;
  if (s.size() > 10) {
    if ((s[10] != 'T' && s[10] != ' ') || s.size() < 16 || s[13] != ':') return std::nullopt;
    if (!detail::parse_fixed_int(s, 11, 2, h) || !detail::parse_fixed_int(s, 14, 2, mi)) return std::nullopt;
    if (s.size() > 16) {
      if (s.size() != 19 || s[16] != ':' || !detail::parse_fixed_int(s, 17, 2, sec)) return std::nullopt;
    }
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

inline Timestamp parse_timestamp(std::string_view text) {
  if (auto t = try_parse_timestamp(text)) return *t;
  throw DataError("invalid timestamp '" + std::string(text) + "'");
}

inline std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::optional<double> try_parse_number(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// Raw series

enum class Resolution { half_hourly, hourly, daily };

inline std::chrono::seconds duration_of(Resolution r) {
  switch (r) {
    case Resolution::half_hourly: return std::chrono::seconds(1800);
    case Resolution::hourly: return std::chrono::seconds(3600);
    case Resolution::daily: return std::chrono::seconds(86400);
  }
  return std::chrono::seconds(0);
}

inline Resolution parse_resolution(std::string_view s) {
  s = detail::trim(s);
  if (s == "half-hourly" || s == "half_hourly" || s == "30min") return Resolution::half_hourly;
  if (s == "hourly" || s == "1h") return Resolution::hourly;
  if (s == "daily" || s == "1d") return Resolution::daily;
  throw ConfigError("unknown resolution '" + std::string(s) + "' (expected half-hourly, hourly or daily)");
}

inline const char* to_string(Resolution r) {
  switch (r) {
    case Resolution::half_hourly: return "half-hourly";
    case Resolution::hourly: return "hourly";
    case Resolution::daily: return "daily";
  }
  return "?";
}

struct RawSeries {
  std::string name;  // label used in diagnostics
  Resolution resolution = Resolution::half_hourly;
  std::vector<Timestamp> time;
  std::vector<double> value;

  std::size_t size() const { return time.size(); }
};

/// Which columns of a CSV file hold the timestamp and the value.
struct ColumnSpec {
  std::string timestamp = "timestamp_utc";
  std::string value;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string at_line(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

}  // namespace detail

/// Parses CSV text (header row required). `source` names the input in
/// diagnostics; timestamps must be strictly increasing.
inline RawSeries parse_series(std::istream& in, const std::string& source, const ColumnSpec& schema,
                              Resolution resolution, std::string name = {}) {
  RawSeries out;
  out.name = name.empty() ? schema.value : std::move(name);
  out.resolution = resolution;

  std::string line;
  std::size_t lineno = 0;
  std::size_t ts_col = 0, val_col = 0, ncols = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    if (!have_header) {
      bool ts_found = false, val_found = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == schema.timestamp) ts_col = i, ts_found = true;
        if (cells[i] == schema.value) val_col = i, val_found = true;
      }
      if (!ts_found) throw DataError(detail::at_line(source, lineno) + ": missing column '" + schema.timestamp + "'");
      if (!val_found) throw DataError(detail::at_line(source, lineno) + ": missing column '" + schema.value + "'");
      ncols = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != ncols)
      throw DataError(detail::at_line(source, lineno) + ": expected " + std::to_string(ncols) + " fields, got " +
                      std::to_string(cells.size()));
    const auto ts = try_parse_timestamp(cells[ts_col]);
    if (!ts) throw DataError(detail::at_line(source, lineno) + ": invalid timestamp '" + std::string(cells[ts_col]) + "'");
    const auto v = try_parse_number(cells[val_col]);
    if (!v) throw DataError(detail::at_line(source, lineno) + ": invalid number '" + std::string(cells[val_col]) + "'");
    if (!std::isfinite(*v))
      throw DataError(detail::at_line(source, lineno) + ": non-finite value '" + std::string(cells[val_col]) + "'");
    if (!out.time.empty()) {
      if (*ts == out.time.back())
        throw DataError(detail::at_line(source, lineno) + ": duplicate timestamp " + format_timestamp(*ts));
      if (*ts < out.time.back())
        throw DataError(detail::at_line(source, lineno) + ": decreasing timestamp " + format_timestamp(*ts));
    }
    out.time.push_back(*ts);
    out.value.push_back(*v);
  }
  if (!have_header) throw DataError(source + ": missing header row");
  return out;
}

inline RawSeries load_series(const std::string& path, const ColumnSpec& schema, Resolution resolution,
                             std::string name = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_series(in, path, schema, resolution, std::move(name));
}

/// Writes `series` as a two-column CSV using the column names of `schema`.
inline void write_series(std::ostream& out, const RawSeries& series, const ColumnSpec& schema) {
  out << schema.timestamp << ',' << schema.value << '\n';
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format_timestamp(series.time[i]) << ',' << format_number(series.value[i]) << '\n';
}

// ---------------------------------------------------------------------------
// Alignment

struct AlignedDataset {
  MarketSeries market;
  PlantDynamics dynamics;
  ObservedProduction observed;
  double dt = 0.5;
};

/// A raw series plus the longest uncovered stretch that may be bridged by
/// carrying the last value forward.
struct AlignInput {
  RawSeries series;
  std::chrono::seconds max_fill{0};
};

struct RawInputs {
  AlignInput electricity;
  AlignInput fuel;
  AlignInput carbon;
  AlignInput production;
  AlignInput mel;
  AlignInput sel;
  AlignInput ramp_up;
  AlignInput ramp_dn;
};

/// Default forward-fill allowance: one day for prices, none for production
/// and dynamic data.
inline RawInputs make_raw_inputs(RawSeries electricity, RawSeries fuel, RawSeries carbon, RawSeries production,
                                 RawSeries mel, RawSeries sel, RawSeries ramp_up, RawSeries ramp_dn) {
  const std::chrono::seconds day(86400), none(0);
  return RawInputs{{std::move(electricity), day}, {std::move(fuel), day},   {std::move(carbon), day},
                   {std::move(production), none}, {std::move(mel), none},   {std::move(sel), none},
                   {std::move(ramp_up), none},    {std::move(ramp_dn), none}};
}

/// Samples a step-function series on `grid`. Coarser series repeat over the
/// finer periods; finer series are averaged over each period.
inline std::vector<double> resample(const AlignInput& input, const std::vector<Timestamp>& grid, double dt_hours) {
  const RawSeries& s = input.series;
  const auto step = detail::step_from_hours(dt_hours);
  const auto res = duration_of(s.resolution);

  auto sample = [&](Timestamp x, std::chrono::seconds period) {
    const auto it = std::upper_bound(s.time.begin(), s.time.end(), x);
    if (it == s.time.begin()) throw DataError("gap in " + s.name + " at " + format_timestamp(x));
    const std::size_t i = static_cast<std::size_t>(it - s.time.begin()) - 1;
    const Timestamp covered_until = s.time[i] + res;
    if (x < covered_until) return s.value[i];
    if ((x + period) - covered_until > input.max_fill)
      throw DataError("gap in " + s.name + " at " + format_timestamp(x));
    return s.value[i];
  };

  std::vector<double> out(grid.size());
  if (res >= step) {
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = sample(grid[k], step);
  } else {
    if (step.count() % res.count() != 0)
      throw DataError(s.name + ": dt is not a multiple of the " + to_string(s.resolution) + " resolution");
    const auto m = step.count() / res.count();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double acc = 0.0;
      for (long long j = 0; j < m; ++j) acc += sample(grid[k] + res * j, res);
      out[k] = acc / static_cast<double>(m);
    }
  }
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw DataError("median of an empty series");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Aligns every input onto the grid [start, end) with step dt. Per-period
/// ramp declarations are collapsed to their median over the horizon.
inline AlignedDataset align(const RawInputs& raw, double dt_hours, Timestamp start, Timestamp end) {
  const auto step = detail::step_from_hours(dt_hours);
  if (!(start < end)) throw DataError("horizon start must precede horizon end");
  if ((end - start).count() % step.count() != 0) throw DataError("horizon length is not a multiple of dt");
  const auto n = static_cast<std::size_t>((end - start) / step);
  const auto grid = make_grid(start, dt_hours, n);

  MarketSeries market(grid, dt_hours, resample(raw.electricity, grid, dt_hours), resample(raw.fuel, grid, dt_hours),
                      resample(raw.carbon, grid, dt_hours));
  PlantDynamics dynamics(resample(raw.mel, grid, dt_hours), resample(raw.sel, grid, dt_hours),
                         median(resample(raw.ramp_up, grid, dt_hours)), median(resample(raw.ramp_dn, grid, dt_hours)));
  ObservedProduction observed(grid, resample(raw.production, grid, dt_hours));
  return AlignedDataset{std::move(market), std::move(dynamics), std::move(observed), dt_hours};
}

// ---------------------------------------------------------------------------
// Synthetic observations

struct SyntheticProduction {
  ObservedProduction observed;
  Schedule schedule;  // noiseless UC schedule
  std::uint64_t seed = 0;
  double noise_sd = 0.0;
};

/// Production generated by the UC model itself, optionally with additive
/// Gaussian noise clipped to [0, mel_t].
inline SyntheticProduction synthesize(const PlantParameters& params, const PlantDynamics& dynamics,
                                      const MarketSeries& market, const SolverOptions& opts, double noise_sd,
                                      std::uint64_t seed = 0, bool initial_committed = false,
                                      double initial_power = 0.0) {
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw ConfigError("noise must be >= 0");
  const UcInstance inst{params, dynamics, market, initial_committed, initial_power};
  Schedule s = solve_uc(inst, opts);
  std::vector<double> power = s.power;
  if (noise_sd > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sd);
    for (std::size_t t = 0; t < power.size(); ++t)
      power[t] = std::clamp(power[t] + noise(rng), 0.0, dynamics.mel()[t]);
  }
  return SyntheticProduction{ObservedProduction(market.grid(), std::move(power)), std::move(s), seed, noise_sd};
}

// ---------------------------------------------------------------------------
// Key-value configuration files
//
//   # comment
//   key = value
//
// Keys are case-sensitive; later duplicates are an error.

struct KeyValueFile {
  std::string source;
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;

  bool has(const std::string& key) const { return values.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }

  double number(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    const auto x = try_parse_number(*v);
    if (!x || !std::isfinite(*x))
      throw ConfigError(source + ":" + std::to_string(lines.at(key)) + ": '" + key + "' is not a finite number");
    return *x;
  }
};

inline KeyValueFile parse_key_values(std::istream& in, const std::string& source) {
  KeyValueFile kv;
  kv.source = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#' || s.front() == ';') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key(detail::trim(s.substr(0, eq)));
    std::string_view value = detail::trim(s.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string_view::npos) value = detail::trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    if (kv.values.count(key)) throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv.values.emplace(key, std::string(value));
    kv.lines.emplace(key, lineno);
  }
  return kv;
}

inline KeyValueFile load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_key_values(in, path);
}

}  // namespace plantfit
