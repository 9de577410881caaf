#include "relocast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "relocast/error.hpp"

namespace relocast {

void CloudParams::validate() const {
  if (!(phi >= 0.0 && phi < 1.0)) {
    throw ValidationError("cloud phi must be within [0, 1)");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("cloud sigma must be >= 0");
  }
  if (!(mean_attenuation > 0.0 && mean_attenuation <= 1.0)) {
    throw ValidationError("cloud mean_attenuation must be within (0, 1]");
  }
}

IrradiationSeries generate(const SiteConfig& site, Date start, int n_years,
                           const CloudParams& cloud, std::uint64_t seed) {
  using namespace std::chrono;
  site.validate();
  cloud.validate();
  if (n_years < 1) throw ValidationError("n_years must be >= 1");

  const year_month_day first{start};
  const year_month_day last_excl{first.year() + years{n_years}, first.month(),
                                 first.day()};
  if (!last_excl.ok()) {
    throw ValidationError("start date has no anniversary after n_years");
  }
  const auto n_hours =
      static_cast<std::size_t>((local_days{last_excl} - start).count()) * 24;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Sample> values(n_hours);
  double state = cloud.mean_attenuation;
  const Timestamp t0{start};
  for (std::size_t i = 0; i < n_hours; ++i) {
    const Timestamp mid = t0 + hours{static_cast<long long>(i)} + minutes{30};
    const double clear = clear_sky_ghi(site, mid);
    const double attenuation =
        std::clamp(state, kMinAttenuation, kMaxAttenuation);
    values[i] = clear * attenuation;
    if (cloud.sigma > 0.0) {
      state = cloud.mean_attenuation +
              cloud.phi * (state - cloud.mean_attenuation) +
              cloud.sigma * noise(rng);
    }
  }
  return IrradiationSeries(site, Step::Hourly, t0, std::move(values));
}

IrradiationSeries aggregate_daily(const IrradiationSeries& hourly) {
  if (hourly.step() != Step::Hourly) {
    throw ValidationError("aggregate_daily requires an hourly series");
  }
  if (clock_hours(hourly.start()) != 0.0) {
    throw ValidationError("hourly series must start at local midnight");
  }
  if (hourly.size() % 24 != 0) {
    throw ValidationError("partial day: " + std::to_string(hourly.size() % 24) +
                          " trailing hours");
  }
  std::vector<Sample> days(hourly.size() / 24);
  for (std::size_t d = 0; d < days.size(); ++d) {
    double sum = 0.0;
    bool gap = false;
    for (std::size_t h = 0; h < 24; ++h) {
      const Sample& s = hourly[d * 24 + h];
      if (!s) {
        gap = true;
        break;
      }
      sum += *s;
    }
    if (!gap) days[d] = sum;
  }
  return IrradiationSeries(hourly.site(), Step::Daily,
                           Timestamp{date_of(hourly.start())}, std::move(days));
}

}  // namespace relocast
