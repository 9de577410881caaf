#include "relocast/solar_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "relocast/error.hpp"

namespace relocast {

using solar::deg2rad;
using solar::kPi;

void SiteConfig::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
    throw ValidationError("latitude_deg must be within [-90, 90]");
  }
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
    throw ValidationError("longitude_deg must be within [-180, 180]");
  }
  if (!(altitude_m >= 0.0)) {
    throw ValidationError("altitude_m must be >= 0");
  }
  if (!(utc_offset_h >= -14.0 && utc_offset_h <= 14.0)) {
    throw ValidationError("utc_offset_h must be within [-14, 14]");
  }
}

double declination(int day_of_year) {
  if (day_of_year < 1 || day_of_year > 366) {
    throw ValidationError("day_of_year must be within 1..366, got " +
                          std::to_string(day_of_year));
  }
  return deg2rad(23.45) * std::sin(2.0 * kPi * (284.0 + day_of_year) / 365.0);
}

double eccentricity_correction(int day_of_year) {
  return 1.0 + 0.033 * std::cos(2.0 * kPi * day_of_year / 365.0);
}

double equation_of_time_min(int day_of_year) {
  const double b = 2.0 * kPi * (day_of_year - 1) / 365.0;
  return 229.18 * (0.000075 + 0.001868 * std::cos(b) - 0.032077 * std::sin(b) -
                   0.014615 * std::cos(2.0 * b) - 0.040849 * std::sin(2.0 * b));
}

namespace {

// True solar time with the equation of time frozen at day n.
double solar_time_for_day(const SiteConfig& site, Timestamp instant, int n) {
  const auto since_midnight = instant - Timestamp{date_of(instant)};
  const double clock_h = static_cast<double>(since_midnight.count()) / 3600.0;
  return clock_h - site.utc_offset_h + site.longitude_deg / 15.0 +
         equation_of_time_min(n) / 60.0;
}

double hour_angle_for_day(const SiteConfig& site, Timestamp instant, int n) {
  return deg2rad(15.0 * (solar_time_for_day(site, instant, n) - 12.0));
}

}  // namespace

double true_solar_time_h(const SiteConfig& site, Timestamp instant) {
  return solar_time_for_day(site, instant, day_of_year(instant));
}

Timestamp true_solar_noon(const SiteConfig& site, Date day) {
  const double clock_h = 12.0 + site.utc_offset_h - site.longitude_deg / 15.0 -
                         equation_of_time_min(day_of_year(day)) / 60.0;
  return Timestamp{day} +
         std::chrono::seconds{std::llround(clock_h * 3600.0)};
}

double sin_altitude(double latitude_rad, double declination_rad,
                    double hour_angle_rad) {
  return std::sin(latitude_rad) * std::sin(declination_rad) +
         std::cos(latitude_rad) * std::cos(declination_rad) *
             std::cos(hour_angle_rad);
}

SolarPosition solar_position(const SiteConfig& site, Timestamp instant) {
  const int n = day_of_year(instant);
  const double lat = deg2rad(site.latitude_deg);
  SolarPosition pos;
  pos.declination_rad = declination(n);
  pos.hour_angle_rad = hour_angle_for_day(site, instant, n);
  const double s =
      std::clamp(sin_altitude(lat, pos.declination_rad, pos.hour_angle_rad),
                 -1.0, 1.0);
  pos.altitude_rad = std::asin(s);
  pos.zenith_rad = kPi / 2.0 - pos.altitude_rad;

  const double denom = std::cos(pos.altitude_rad) * std::cos(lat);
  if (std::abs(denom) < 1e-12) {
    pos.azimuth_rad = 0.0;
  } else {
    const double c = std::clamp(
        (s * std::sin(lat) - std::sin(pos.declination_rad)) / denom, -1.0, 1.0);
    const double omega = std::remainder(pos.hour_angle_rad, 2.0 * kPi);
    pos.azimuth_rad = std::copysign(std::acos(c), omega);
  }
  return pos;
}

double extraterrestrial_hourly(const SiteConfig& site, Timestamp hour_start) {
  using std::chrono::seconds;
  const int n = day_of_year(hour_start);
  const double lat = deg2rad(site.latitude_deg);
  const double decl = declination(n);
  const double i0 = solar::kSolarConstant * eccentricity_correction(n);

  auto sin_h_at = [&](Timestamp t) {
    return sin_altitude(lat, decl, hour_angle_for_day(site, t, n));
  };

  const double s_start = sin_h_at(hour_start);
  const double s_mid = sin_h_at(hour_start + seconds{1800});
  const double s_end = sin_h_at(hour_start + seconds{3600});
  if (s_start > 0.0 && s_mid > 0.0 && s_end > 0.0) {
    return i0 * s_mid;
  }

  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += std::max(0.0, sin_h_at(hour_start + seconds{60 * k + 30}));
  }
  return i0 * sum / 60.0;
}

double extraterrestrial_daily(const SiteConfig& site, Date day) {
  const int n = day_of_year(day);
  const double lat = deg2rad(site.latitude_deg);
  const double decl = declination(n);
  const double x = -std::tan(lat) * std::tan(decl);
  if (x >= 1.0) return 0.0;  // polar night
  const double sunset = x <= -1.0 ? kPi : std::acos(x);
  const double h0 =
      24.0 / kPi * solar::kSolarConstant * eccentricity_correction(n) *
      (std::cos(lat) * std::cos(decl) * std::sin(sunset) +
       sunset * std::sin(lat) * std::sin(decl));
  return std::max(0.0, h0);
}

double haurwitz_ghi(double sin_altitude) {
  if (sin_altitude <= 0.0) return 0.0;
  return 1098.0 * sin_altitude * std::exp(-0.057 / sin_altitude);
}

double clear_sky_ghi(const SiteConfig& site, Timestamp instant) {
  return haurwitz_ghi(std::sin(solar_position(site, instant).altitude_rad));
}

double clear_sky_tilted(const SiteConfig& site, Timestamp instant,
                        double tilt_deg, double azimuth_deg) {
  if (tilt_deg == 0.0) return clear_sky_ghi(site, instant);

  const SolarPosition pos = solar_position(site, instant);
  const double sin_h = std::sin(pos.altitude_rad);
  const double ghi = haurwitz_ghi(sin_h);
  if (ghi <= 0.0) return 0.0;

  const double tilt = deg2rad(tilt_deg);
  const double cos_incidence =
      sin_h * std::cos(tilt) + std::cos(pos.altitude_rad) * std::sin(tilt) *
                                   std::cos(pos.azimuth_rad - deg2rad(azimuth_deg));
  const double diffuse = solar::kClearSkyDiffuseFraction * ghi;
  const double beam_normal = (ghi - diffuse) / sin_h;
  return beam_normal * std::max(0.0, cos_incidence) +
         diffuse * (1.0 + std::cos(tilt)) / 2.0;
}

}  // namespace relocast
