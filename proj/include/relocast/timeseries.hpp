#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "relocast/solar_geometry.hpp"
#include "relocast/time.hpp"

namespace relocast {

// nullopt encodes a GAP (explicit missing measurement).
using Sample = std::optional<double>;

inline constexpr double kMaxHourlyWhM2 = 1413.0;
inline constexpr double kMaxDailyWhM2 = 12000.0;

double upper_bound_wh_m2(Step step);

/// Global horizontal irradiation at a fixed step, Wh/m2. Each entry covers
/// [timestamp(i), timestamp(i) + step). Timestamps are implicit:
/// start + i * step, so the series is always gap-free in time and missing
/// measurements are explicit GAP samples.
class IrradiationSeries {
 public:
  /// Throws BoundError if a value is negative, non-finite or above the
  /// physical bound of the step.
  IrradiationSeries(SiteConfig site, Step step, Timestamp start,
                    std::vector<Sample> values);

  const SiteConfig& site() const { return site_; }
  Step step() const { return step_; }
  Timestamp start() const { return start_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Sample>& values() const { return values_; }
  const Sample& operator[](std::size_t i) const { return values_[i]; }

  Timestamp timestamp(std::size_t i) const;
  /// Index of an instant, nullopt if not on the grid or out of range.
  std::optional<std::size_t> index_of(Timestamp t) const;

  IrradiationSeries slice(std::size_t first, std::size_t count) const;

  bool operator==(const IrradiationSeries&) const = default;

 private:
  SiteConfig site_;
  Step step_;
  Timestamp start_;
  std::vector<Sample> values_;
};

/// Dimensionless ratio series produced by detrending. For hourly series
/// daylight[i] is false where the sun is below the altitude threshold; such
/// samples carry no value. A GAP is a daylight sample without a value.
class StationarizedSeries {
 public:
  StationarizedSeries(SiteConfig site, Step step, Timestamp start,
                      std::vector<Sample> values, std::vector<bool> daylight);

  const SiteConfig& site() const { return site_; }
  Step step() const { return step_; }
  Timestamp start() const { return start_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Sample>& values() const { return values_; }
  const std::vector<bool>& daylight() const { return daylight_; }
  const Sample& operator[](std::size_t i) const { return values_[i]; }

  bool masked(std::size_t i) const { return !daylight_[i]; }
  bool usable(std::size_t i) const {
    return daylight_[i] && values_[i].has_value();
  }

  Timestamp timestamp(std::size_t i) const;

  StationarizedSeries slice(std::size_t first, std::size_t count) const;

  bool operator==(const StationarizedSeries&) const = default;

 private:
  SiteConfig site_;
  Step step_;
  Timestamp start_;
  std::vector<Sample> values_;
  std::vector<bool> daylight_;
};

/// Reads the `timestamp,ghi_wh_m2` CSV contract. Throws ParseError (row,
/// column, reason), BoundError (row, value, bound) or IoError.
IrradiationSeries load_csv(const std::filesystem::path& path,
                           const SiteConfig& site, Step step);

/// Writes values with shortest round-trip formatting. Throws IoError.
void write_csv(const IrradiationSeries& series,
               const std::filesystem::path& path);

/// Writes `timestamp,ratio,daylight`; masked rows have an empty ratio and
/// daylight 0.
void write_csv(const StationarizedSeries& series,
               const std::filesystem::path& path);

StationarizedSeries load_stationarized_csv(const std::filesystem::path& path,
                                           const SiteConfig& site, Step step);

inline constexpr std::size_t kMinSplitLength = 10;

/// Chronological split: the prefix holds floor(fraction * N) samples.
/// Throws ValidationError if N < 10 or fraction is outside (0, 1).
template <typename Series>
std::pair<Series, Series> split_train_test(const Series& series,
                                           double fraction);

std::size_t split_point(std::size_t n, double fraction);

template <typename Series>
std::pair<Series, Series> split_train_test(const Series& series,
                                           double fraction) {
  const std::size_t cut = split_point(series.size(), fraction);
  return {series.slice(0, cut), series.slice(cut, series.size() - cut)};
}

}  // namespace relocast
