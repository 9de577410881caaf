#pragma once

#include <cstdint>

#include "relocast/timeseries.hpp"

namespace relocast {

struct CloudParams {
  double phi = 0.9;               // AR(1) coefficient, [0, 1)
  double sigma = 0.1;             // innovation standard deviation, >= 0
  double mean_attenuation = 0.6;  // process mean, (0, 1]

  void validate() const;
};

inline constexpr double kMinAttenuation = 0.05;
inline constexpr double kMaxAttenuation = 1.0;

/// Hourly series starting at local midnight of `start` and covering
/// `n_years` calendar years. Each hour holds clear_sky_ghi at the hour
/// midpoint times a(t), where a(t) is an AR(1) process around
/// mean_attenuation advanced every hour (nights included) and clipped to
/// [0.05, 1]. Innovations come from std::normal_distribution over a
/// 64-bit Mersenne twister seeded with `seed`.
IrradiationSeries generate(const SiteConfig& site, Date start, int n_years,
                           const CloudParams& cloud, std::uint64_t seed);

/// Sums complete local days of an hourly series starting at midnight. A day
/// holding any GAP becomes a GAP. Throws ValidationError on a partial day.
IrradiationSeries aggregate_daily(const IrradiationSeries& hourly);

}  // namespace relocast
