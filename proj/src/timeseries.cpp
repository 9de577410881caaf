#include "relocast/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "relocast/error.hpp"

namespace relocast {

namespace {

constexpr std::string_view kSeriesHeader = "timestamp,ghi_wh_m2";
constexpr std::string_view kStationarizedHeader = "timestamp,ratio,daylight";

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string row_prefix(std::size_t row) {
  return "row " + std::to_string(row) + ": ";
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

void check_start(Timestamp start, Step step) {
  const auto since_midnight = start - Timestamp{date_of(start)};
  const bool aligned = step == Step::Daily
                           ? since_midnight.count() == 0
                           : since_midnight % std::chrono::hours{1} ==
                                 std::chrono::seconds{0};
  if (!aligned) {
    throw ValidationError("series start " + format_timestamp(start, Step::Hourly) +
                          " is not aligned to the " + std::string(to_string(step)) + " step");
  }
}

void check_sample(const Sample& s, Step step, std::size_t row) {
  if (!s) return;
  const double bound = upper_bound_wh_m2(step);
  if (!std::isfinite(*s) || *s < 0.0 || *s > bound) {
    throw BoundError(row_prefix(row) + "value " + format_double(*s) +
                     " outside [0, " + format_double(bound) + "] Wh/m2 for " +
                     std::string(to_string(step)) + " step");
  }
}

// Reads rows after the header, checking timestamps step by step. `on_row`
// receives the data fields after the timestamp.
template <typename OnRow>
Timestamp read_rows(const std::filesystem::path& path, Step step,
                    std::string_view header, std::size_t n_fields,
                    OnRow&& on_row) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path.string() + ": empty file, expected header '" +
                     std::string(header) + "'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  if (line != header) {
    throw ParseError(path.string() + ": row 1: expected header '" +
                     std::string(header) + "', got '" + line + "'");
  }

  std::optional<Timestamp> start;
  Timestamp expected{};
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != n_fields) {
      throw ParseError(row_prefix(row) + "expected " +
                       std::to_string(n_fields) + " columns, got " +
                       std::to_string(fields.size()));
    }
    const auto t = parse_timestamp(fields[0], step);
    if (!t) {
      throw ParseError(row_prefix(row) + "column 1: malformed timestamp '" +
                       std::string(fields[0]) + "' (expected " +
                       (step == Step::Hourly ? "YYYY-MM-DDTHH:MM" : "YYYY-MM-DD") +
                       ")");
    }
    if (!start) {
      start = *t;
    } else if (*t != expected) {
      throw ParseError(
          row_prefix(row) + "timestamp " + std::string(fields[0]) +
          " does not follow the previous row by exactly one step (expected " +
          format_timestamp(expected, step) +
          "); encode missing measurements as GAP rows with an empty value");
    }
    expected = *t + step_duration(step);
    on_row(row, std::span(fields).subspan(1));
  }
  if (!start) throw ParseError(path.string() + ": no data rows");
  return *start;
}

Sample parse_sample(std::string_view field, std::size_t row,
                    std::size_t column) {
  if (field.empty()) return std::nullopt;
  const auto v = parse_double(field);
  if (!v) {
    throw ParseError(row_prefix(row) + "column " + std::to_string(column) +
                     ": not a decimal number '" + std::string(field) + "'");
  }
  return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

double upper_bound_wh_m2(Step step) {
  return step == Step::Hourly ? kMaxHourlyWhM2 : kMaxDailyWhM2;
}

IrradiationSeries::IrradiationSeries(SiteConfig site, Step step,
                                     Timestamp start,
                                     std::vector<Sample> values)
    : site_(std::move(site)),
      step_(step),
      start_(start),
      values_(std::move(values)) {
  check_start(start_, step_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    check_sample(values_[i], step_, i);
  }
}

Timestamp IrradiationSeries::timestamp(std::size_t i) const {
  return start_ + step_duration(step_) * static_cast<long long>(i);
}

std::optional<std::size_t> IrradiationSeries::index_of(Timestamp t) const {
  if (t < start_) return std::nullopt;
  const auto offset = t - start_;
  const auto step = step_duration(step_);
  if (offset % step != std::chrono::seconds{0}) return std::nullopt;
  const auto i = static_cast<std::size_t>(offset / step);
  if (i >= values_.size()) return std::nullopt;
  return i;
}

IrradiationSeries IrradiationSeries::slice(std::size_t first,
                                           std::size_t count) const {
  std::vector<Sample> part(values_.begin() + first,
                           values_.begin() + first + count);
  return IrradiationSeries(site_, step_, timestamp(first), std::move(part));
}

StationarizedSeries::StationarizedSeries(SiteConfig site, Step step,
                                         Timestamp start,
                                         std::vector<Sample> values,
                                         std::vector<bool> daylight)
    : site_(std::move(site)),
      step_(step),
      start_(start),
      values_(std::move(values)),
      daylight_(std::move(daylight)) {
  check_start(start_, step_);
  if (daylight_.size() != values_.size()) {
    throw ValidationError("daylight mask length differs from value count");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] && (!std::isfinite(*values_[i]) || *values_[i] < 0.0)) {
      throw BoundError("stationarized value at index " + std::to_string(i) +
                       " must be finite and >= 0");
    }
    if (!daylight_[i] && values_[i]) {
      throw ValidationError("masked sample at index " + std::to_string(i) +
                            " carries a value");
    }
  }
}

Timestamp StationarizedSeries::timestamp(std::size_t i) const {
  return start_ + step_duration(step_) * static_cast<long long>(i);
}

StationarizedSeries StationarizedSeries::slice(std::size_t first,
                                               std::size_t count) const {
  std::vector<Sample> part(values_.begin() + first,
                           values_.begin() + first + count);
  std::vector<bool> mask(daylight_.begin() + first,
                         daylight_.begin() + first + count);
  return StationarizedSeries(site_, step_, timestamp(first), std::move(part),
                             std::move(mask));
}

IrradiationSeries load_csv(const std::filesystem::path& path,
                           const SiteConfig& site, Step step) {
  std::vector<Sample> values;
  const Timestamp start = read_rows(
      path, step, kSeriesHeader, 2,
      [&](std::size_t row, std::span<const std::string_view> fields) {
        Sample s = parse_sample(fields[0], row, 2);
        check_sample(s, step, row);
        values.push_back(s);
      });
  return IrradiationSeries(site, step, start, std::move(values));
}

StationarizedSeries load_stationarized_csv(const std::filesystem::path& path,
                                           const SiteConfig& site, Step step) {
  std::vector<Sample> values;
  std::vector<bool> daylight;
  const Timestamp start = read_rows(
      path, step, kStationarizedHeader, 3,
      [&](std::size_t row, std::span<const std::string_view> fields) {
        values.push_back(parse_sample(fields[0], row, 2));
        if (fields[1] != "0" && fields[1] != "1") {
          throw ParseError(row_prefix(row) +
                           "column 3: daylight flag must be 0 or 1");
        }
        daylight.push_back(fields[1] == "1");
      });
  return StationarizedSeries(site, step, start, std::move(values),
                             std::move(daylight));
}

void write_csv(const IrradiationSeries& series,
               const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << kSeriesHeader << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_timestamp(series.timestamp(i), series.step()) << ',';
    if (series[i]) out << format_double(*series[i]);
    out << '\n';
  }
  finish_write(out, path);
}

void write_csv(const StationarizedSeries& series,
               const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << kStationarizedHeader << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_timestamp(series.timestamp(i), series.step()) << ',';
    if (series[i]) out << format_double(*series[i]);
    out << ',' << (series.daylight()[i] ? '1' : '0') << '\n';
  }
  finish_write(out, path);
}

std::size_t split_point(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ValidationError("split fraction must be within (0, 1)");
  }
  if (n < kMinSplitLength) {
    throw ValidationError("series too short to split: " + std::to_string(n) +
                          " samples, need at least " +
                          std::to_string(kMinSplitLength));
  }
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
}

}  // namespace relocast
