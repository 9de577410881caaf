#pragma once

#include <string>

#include "relocast/time.hpp"

namespace relocast {

/// Geographic identity of a measurement site.
struct SiteConfig {
  std::string name;
  double latitude_deg = 0.0;   // north positive, [-90, 90]
  double longitude_deg = 0.0;  // east positive, [-180, 180]
  double altitude_m = 0.0;
  double utc_offset_h = 0.0;  // legal time minus UTC

  /// Throws ValidationError naming the first field out of range.
  void validate() const;

  bool operator==(const SiteConfig&) const = default;
};

struct SolarPosition {
  double declination_rad = 0.0;
  double hour_angle_rad = 0.0;  // negative before true solar noon
  double altitude_rad = 0.0;    // solar height h, negative below horizon
  double zenith_rad = 0.0;      // pi/2 - altitude
  double azimuth_rad = 0.0;     // from south, positive towards west
};

namespace solar {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSolarConstant = 1367.0;  // W/m2
inline constexpr double kMaxHourlyExtraterrestrial = 1413.0;  // Wh/m2
inline constexpr double kClearSkyDiffuseFraction = 0.15;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace solar

/// Cooper's declination for a day of the year, radians.
/// Throws ValidationError when day_of_year is outside 1..366.
double declination(int day_of_year);

/// Sun-earth distance correction 1 + 0.033 cos(2 pi n / 365).
double eccentricity_correction(int day_of_year);

/// Spencer's equation of time, minutes (true solar minus mean solar time).
double equation_of_time_min(int day_of_year);

/// True solar time in hours for a legal-time instant at the site. May fall
/// outside [0, 24) near midnight; hour angle is taken as (tst - 12) * 15 deg.
double true_solar_time_h(const SiteConfig& site, Timestamp instant);

/// Legal-time instant (second resolution) of true solar noon on a date.
Timestamp true_solar_noon(const SiteConfig& site, Date day);

/// sin h = sin(lat) sin(decl) + cos(lat) cos(decl) cos(omega).
double sin_altitude(double latitude_rad, double declination_rad,
                    double hour_angle_rad);

/// Declination and equation of time are evaluated once per legal date, so
/// positions within one day are exactly symmetric about true solar noon.
SolarPosition solar_position(const SiteConfig& site, Timestamp instant);

/// Extraterrestrial irradiation on a horizontal plane over the hour
/// [hour_start, hour_start + 1h), Wh/m2. Full-daylight hours use the
/// midpoint value; hours touching the horizon use 60 one-minute substeps
/// with negative values clamped to zero.
double extraterrestrial_hourly(const SiteConfig& site, Timestamp hour_start);

/// Daily extraterrestrial irradiation on a horizontal plane, Wh/m2.
double extraterrestrial_daily(const SiteConfig& site, Date day);

/// Haurwitz clear-sky global horizontal irradiance for a given sin(h).
double haurwitz_ghi(double sin_altitude);

/// Clear-sky global horizontal irradiance, W/m2.
double clear_sky_ghi(const SiteConfig& site, Timestamp instant);

/// Clear-sky irradiance on a plane tilted by tilt_deg facing azimuth_deg
/// (0 = south, positive west), W/m2. The clear-sky global is split into
/// 15% isotropic diffuse and 85% beam; ground reflection is ignored.
/// Returns clear_sky_ghi unchanged for tilt 0.
double clear_sky_tilted(const SiteConfig& site, Timestamp instant,
                        double tilt_deg, double azimuth_deg);

}  // namespace relocast
