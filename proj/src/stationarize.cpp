#include "relocast/stationarize.hpp"

#include <cmath>
#include <string>

#include "relocast/error.hpp"

namespace relocast {

double daily_divisor(const SiteConfig& site, Date day) {
  return extraterrestrial_daily(site, day);
}

std::optional<double> hourly_divisor(const SiteConfig& site,
                                     Timestamp hour_start) {
  const SolarPosition pos =
      solar_position(site, hour_start + std::chrono::minutes{30});
  const double sin_h = std::sin(pos.altitude_rad);
  if (sin_h < std::sin(solar::deg2rad(kMinAltitudeDeg))) return std::nullopt;
  const double i0 = extraterrestrial_hourly(site, hour_start);
  if (!(i0 > 0.0)) return std::nullopt;
  return i0 * sin_h;
}

StationarizedSeries detrend_daily(const IrradiationSeries& series) {
  if (series.step() != Step::Daily) {
    throw ValidationError("detrend_daily requires a daily series");
  }
  std::vector<Sample> ratios(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Timestamp t = series.timestamp(i);
    const double h0 = daily_divisor(series.site(), date_of(t));
    if (!(h0 > 0.0)) {
      throw UnsupportedSiteError(
          "site '" + series.site().name +
          "' has no extraterrestrial irradiation on " +
          format_timestamp(t, Step::Daily) + " (polar night)");
    }
    if (series[i]) ratios[i] = *series[i] / h0;
  }
  return StationarizedSeries(series.site(), series.step(), series.start(),
                             std::move(ratios),
                             std::vector<bool>(series.size(), true));
}

StationarizedSeries detrend_hourly(const IrradiationSeries& series) {
  if (series.step() != Step::Hourly) {
    throw ValidationError("detrend_hourly requires an hourly series");
  }
  std::vector<Sample> ratios(series.size());
  std::vector<bool> daylight(series.size(), false);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto divisor = hourly_divisor(series.site(), series.timestamp(i));
    if (!divisor) continue;
    daylight[i] = true;
    if (series[i]) ratios[i] = *series[i] / *divisor;
  }
  return StationarizedSeries(series.site(), series.step(), series.start(),
                             std::move(ratios), std::move(daylight));
}

StationarizedSeries detrend(const IrradiationSeries& series) {
  return series.step() == Step::Daily ? detrend_daily(series)
                                      : detrend_hourly(series);
}

double retrend(double stationarized, const SiteConfig& site, Timestamp instant,
               Step step) {
  if (step == Step::Daily) {
    const double h0 = daily_divisor(site, date_of(instant));
    if (!(h0 > 0.0)) {
      throw UnsupportedSiteError("no extraterrestrial irradiation on " +
                                 format_timestamp(instant, Step::Daily));
    }
    return stationarized * h0;
  }
  const auto divisor = hourly_divisor(site, instant);
  if (!divisor) {
    throw MaskedInstantError("hour " + format_timestamp(instant, Step::Hourly) +
                             " is masked (sun below " +
                             std::to_string(int(kMinAltitudeDeg)) + " deg)");
  }
  return stationarized * *divisor;
}

NormStats fit_minmax(const StationarizedSeries& series) {
  bool any = false;
  NormStats stats{0.0, 0.0};
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.usable(i)) continue;
    const double v = *series[i];
    if (!any) {
      stats = {v, v};
      any = true;
    } else {
      stats.min = std::min(stats.min, v);
      stats.max = std::max(stats.max, v);
    }
  }
  if (!any) throw ValidationError("cannot fit normalization: no usable values");
  if (!(stats.min < stats.max)) {
    throw ValidationError("cannot fit normalization: constant series");
  }
  return stats;
}

double apply_minmax(double value, const NormStats& stats) {
  return (value - stats.min) / (stats.max - stats.min);
}

double invert_minmax(double normalized, const NormStats& stats) {
  return normalized * (stats.max - stats.min) + stats.min;
}

}  // namespace relocast
