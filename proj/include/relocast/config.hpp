#pragma once

#include <filesystem>
#include <string>

#include "relocast/pv_plant.hpp"
#include "relocast/solar_geometry.hpp"

namespace relocast {

// Site and plant files are JSON objects whose keys carry their units, e.g.
//   {"name": "ajaccio", "latitude_deg": 41.917, "longitude_deg": 8.8,
//    "altitude_m": 0, "utc_offset_h": 1}
// Every physical field is required. Missing or out-of-range fields raise
// ValidationError naming the field; unparsable text raises ParseError.

SiteConfig site_from_json(const std::string& text);
std::string site_to_json(const SiteConfig& site);
SiteConfig load_site(const std::filesystem::path& path);

PvPlantConfig plant_from_json(const std::string& text);
std::string plant_to_json(const PvPlantConfig& plant);
PvPlantConfig load_plant(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace relocast
