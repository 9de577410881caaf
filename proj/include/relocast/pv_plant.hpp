#pragma once

#include <span>

#include "relocast/mlp.hpp"
#include "relocast/solar_geometry.hpp"

namespace relocast {

struct PvPlantConfig {
  double tilt_deg = 0.0;
  double azimuth_deg = 0.0;  // 0 = south, positive west
  double efficiency = 0.0;
  double surface_m2 = 0.0;
  double nominal_power_kw = 0.0;  // informational only

  /// Throws ValidationError naming the offending field.
  void validate() const;

  bool operator==(const PvPlantConfig&) const = default;
};

// Below this clear-sky horizontal irradiance the transposition ratio is 0.
inline constexpr double kMinClearSkyGhi = 1.0;  // W/m2

/// Clear-sky tilted / horizontal ratio at an instant.
double transposition_ratio(const SiteConfig& site, Timestamp instant,
                           const PvPlantConfig& plant);

/// Horizontal irradiation scaled by the clear-sky ratio at `instant`.
/// Returns the input unchanged for a horizontal plane.
double transpose(double ghi_wh_m2, const SiteConfig& site, Timestamp instant,
                 const PvPlantConfig& plant);

/// Transposition of an hourly value, ratio taken at the hour midpoint.
double transpose_hour(double ghi_wh_m2, const SiteConfig& site,
                      Timestamp hour_start, const PvPlantConfig& plant);

/// efficiency * irradiation * surface, Wh.
double pv_energy(double tilted_wh_m2, const PvPlantConfig& plant);

/// predict_next -> transpose_hour -> pv_energy for an hourly model.
double forecast_pv_energy(const MlpModel& model,
                          std::span<const double> history,
                          Timestamp hour_start, const SiteConfig& site,
                          const PvPlantConfig& plant);

}  // namespace relocast
