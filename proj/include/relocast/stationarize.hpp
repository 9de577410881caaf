#pragma once

#include <optional>

#include "relocast/timeseries.hpp"

namespace relocast {

// Hours with the sun below this altitude at the hour midpoint are masked.
inline constexpr double kMinAltitudeDeg = 5.0;

/// Divisor of a daily value: extraterrestrial daily irradiation H0.
double daily_divisor(const SiteConfig& site, Date day);

/// Divisor of an hourly value: I0_h * sin h, with I0_h the hourly
/// extraterrestrial irradiation and h the solar altitude at the hour
/// midpoint. nullopt when the hour is masked.
std::optional<double> hourly_divisor(const SiteConfig& site,
                                     Timestamp hour_start);

/// k(t) = H(t) / H0(t). Throws UnsupportedSiteError when H0 vanishes.
StationarizedSeries detrend_daily(const IrradiationSeries& series);

/// r(t) = I(t) / (I0_h(t) * sin h(t)) on daylight hours; others masked.
StationarizedSeries detrend_hourly(const IrradiationSeries& series);

/// Dispatches on series.step().
StationarizedSeries detrend(const IrradiationSeries& series);

/// Inverse of detrending for one sample. Throws MaskedInstantError for a
/// masked hourly instant and UnsupportedSiteError for a polar-night day.
double retrend(double stationarized, const SiteConfig& site, Timestamp instant,
               Step step);

struct NormStats {
  double min = 0.0;
  double max = 1.0;

  bool valid() const { return min < max; }
  bool operator==(const NormStats&) const = default;
};

/// Extrema over usable samples. Throws ValidationError when fewer than two
/// distinct values exist.
NormStats fit_minmax(const StationarizedSeries& series);

/// (v - min) / (max - min), never clipped.
double apply_minmax(double value, const NormStats& stats);
double invert_minmax(double normalized, const NormStats& stats);

}  // namespace relocast
