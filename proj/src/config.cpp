#include "relocast/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relocast/error.hpp"

namespace relocast {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(what) + ": not an object");
  return doc;
}

double number_field(const json& doc, const char* key, const char* what) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(std::string(what) + ": missing field '" + key + "'");
  }
  if (!it->is_number()) {
    throw ValidationError(std::string(what) + ": field '" + key +
                          "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SiteConfig site_from_json(const std::string& text) {
  const json doc = parse_object(text, "site config");
  SiteConfig site;
  const auto name = doc.find("name");
  if (name == doc.end() || !name->is_string()) {
    throw ValidationError("site config: field 'name' must be a string");
  }
  site.name = name->get<std::string>();
  site.latitude_deg = number_field(doc, "latitude_deg", "site config");
  site.longitude_deg = number_field(doc, "longitude_deg", "site config");
  site.altitude_m = number_field(doc, "altitude_m", "site config");
  site.utc_offset_h = number_field(doc, "utc_offset_h", "site config");
  site.validate();
  return site;
}

std::string site_to_json(const SiteConfig& site) {
  const json doc = {{"name", site.name},
                    {"latitude_deg", site.latitude_deg},
                    {"longitude_deg", site.longitude_deg},
                    {"altitude_m", site.altitude_m},
                    {"utc_offset_h", site.utc_offset_h}};
  return doc.dump(2) + "\n";
}

SiteConfig load_site(const std::filesystem::path& path) {
  return site_from_json(read_text_file(path));
}

PvPlantConfig plant_from_json(const std::string& text) {
  const json doc = parse_object(text, "plant config");
  PvPlantConfig plant;
  plant.tilt_deg = number_field(doc, "tilt_deg", "plant config");
  plant.azimuth_deg = number_field(doc, "azimuth_deg", "plant config");
  plant.efficiency = number_field(doc, "efficiency", "plant config");
  plant.surface_m2 = number_field(doc, "surface_m2", "plant config");
  if (doc.contains("nominal_power_kw")) {
    plant.nominal_power_kw =
        number_field(doc, "nominal_power_kw", "plant config");
  }
  plant.validate();
  return plant;
}

std::string plant_to_json(const PvPlantConfig& plant) {
  const json doc = {{"tilt_deg", plant.tilt_deg},
                    {"azimuth_deg", plant.azimuth_deg},
                    {"efficiency", plant.efficiency},
                    {"surface_m2", plant.surface_m2},
                    {"nominal_power_kw", plant.nominal_power_kw}};
  return doc.dump(2) + "\n";
}

PvPlantConfig load_plant(const std::filesystem::path& path) {
  return plant_from_json(read_text_file(path));
}

}  // namespace relocast
