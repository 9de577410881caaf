#include "relocast/pv_plant.hpp"

#include <cmath>

#include "relocast/error.hpp"
#include "relocast/forecast.hpp"
#include "relocast/stationarize.hpp"

namespace relocast {

void PvPlantConfig::validate() const {
  if (!(tilt_deg >= 0.0 && tilt_deg <= 90.0)) {
    throw ValidationError("tilt_deg must be within [0, 90]");
  }
  if (!(azimuth_deg >= -180.0 && azimuth_deg <= 180.0)) {
    throw ValidationError("azimuth_deg must be within [-180, 180]");
  }
  if (!(efficiency > 0.0 && efficiency < 1.0)) {
    throw ValidationError("efficiency must be within (0, 1)");
  }
  if (!(surface_m2 > 0.0) || !std::isfinite(surface_m2)) {
    throw ValidationError("surface_m2 must be positive");
  }
  if (!(nominal_power_kw >= 0.0)) {
    throw ValidationError("nominal_power_kw must be >= 0");
  }
}

double transposition_ratio(const SiteConfig& site, Timestamp instant,
                           const PvPlantConfig& plant) {
  const double horizontal = clear_sky_ghi(site, instant);
  if (horizontal < kMinClearSkyGhi) return 0.0;
  return clear_sky_tilted(site, instant, plant.tilt_deg, plant.azimuth_deg) /
         horizontal;
}

double transpose(double ghi_wh_m2, const SiteConfig& site, Timestamp instant,
                 const PvPlantConfig& plant) {
  if (!(ghi_wh_m2 >= 0.0)) {
    throw ValidationError("horizontal irradiation must be >= 0");
  }
  if (plant.tilt_deg == 0.0) return ghi_wh_m2;
  return ghi_wh_m2 * transposition_ratio(site, instant, plant);
}

double transpose_hour(double ghi_wh_m2, const SiteConfig& site,
                      Timestamp hour_start, const PvPlantConfig& plant) {
  return transpose(ghi_wh_m2, site, hour_start + std::chrono::minutes{30},
                   plant);
}

double pv_energy(double tilted_wh_m2, const PvPlantConfig& plant) {
  if (!(tilted_wh_m2 >= 0.0)) {
    throw ValidationError("tilted irradiation must be >= 0");
  }
  return plant.efficiency * tilted_wh_m2 * plant.surface_m2;
}

double forecast_pv_energy(const MlpModel& model,
                          std::span<const double> history,
                          Timestamp hour_start, const SiteConfig& site,
                          const PvPlantConfig& plant) {
  if (model.step != Step::Hourly) {
    throw ValidationError("PV energy forecasts need an hourly model");
  }
  // Masked hours are forecast as zero irradiation.
  if (!hourly_divisor(site, hour_start)) return 0.0;
  const double ghi = predict_next(model, history, hour_start, site);
  return pv_energy(transpose_hour(ghi, site, hour_start, plant), plant);
}

}  // namespace relocast
