#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "relocast/forecast.hpp"

namespace relocast {

inline constexpr std::size_t kBootstrapResamples = 1000;
inline constexpr std::size_t kMinBootstrapSamples = 30;

/// sqrt(mean((p - m)^2)). Throws ValidationError on length mismatch,
/// fewer than 2 samples or non-finite values.
double rmse(std::span<const double> measured, std::span<const double> predicted);

/// 100 * rmse / mean(measured), percent. Throws when mean(measured) <= 0.
double nrmse(std::span<const double> measured,
             std::span<const double> predicted);

/// Half-width (p97.5 - p2.5) / 2 of nRMSE over 1000 bootstrap resamples of
/// index pairs drawn with a 64-bit Mersenne twister seeded by `seed`.
/// Percentiles interpolate linearly between order statistics. Requires
/// n >= 30.
double nrmse_ci95(std::span<const double> measured,
                  std::span<const double> predicted, std::uint64_t seed);

/// Pearson correlation. Throws ValidationError if either side is constant.
double correlation(std::span<const double> measured,
                   std::span<const double> predicted);

struct EvaluationReport {
  std::string site;
  std::string predictor;
  Step step = Step::Hourly;
  std::string period;
  double rmse = 0.0;
  double nrmse_pct = 0.0;
  double nrmse_ci95_halfwidth = 0.0;
  double cc = 0.0;
  std::size_t n = 0;
};

/// Metrics of one run; `period` labels the first and last evaluated instant.
/// cc is NaN when either column is constant.
EvaluationReport evaluate(const ForecastRun& run, std::uint64_t seed);

/// Table row layout: site, predictor, RMSE, nRMSE, IC95, CC, then n, step
/// and period.
void write_report_csv(std::span<const EvaluationReport> reports,
                      const std::filesystem::path& path);
std::string report_csv(std::span<const EvaluationReport> reports);

}  // namespace relocast
