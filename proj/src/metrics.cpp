#include "relocast/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <random>

#include "relocast/error.hpp"

namespace relocast {

namespace {

void check_pair(std::span<const double> m, std::span<const double> p) {
  if (m.size() != p.size()) {
    throw ValidationError("measured and predicted lengths differ (" +
                          std::to_string(m.size()) + " vs " +
                          std::to_string(p.size()) + ")");
  }
  if (m.size() < 2) throw ValidationError("metrics need at least 2 samples");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m[i]) || !std::isfinite(p[i])) {
      throw ValidationError("non-finite value at index " + std::to_string(i));
    }
  }
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Linear interpolation between order statistics (R type 7).
double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

double rmse(std::span<const double> measured,
            std::span<const double> predicted) {
  check_pair(measured, predicted);
  double sse = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double e = predicted[i] - measured[i];
    sse += e * e;
  }
  return std::sqrt(sse / static_cast<double>(measured.size()));
}

double nrmse(std::span<const double> measured,
             std::span<const double> predicted) {
  check_pair(measured, predicted);
  const double m = mean(measured);
  if (!(m > 0.0)) {
    throw ValidationError("nRMSE undefined: mean of measured values is not "
                          "positive");
  }
  return 100.0 * rmse(measured, predicted) / m;
}

double nrmse_ci95(std::span<const double> measured,
                  std::span<const double> predicted, std::uint64_t seed) {
  check_pair(measured, predicted);
  const std::size_t n = measured.size();
  if (n < kMinBootstrapSamples) {
    throw ValidationError("bootstrap interval needs at least " +
                          std::to_string(kMinBootstrapSamples) +
                          " samples, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> stats(kBootstrapResamples);
  std::vector<double> m(n), p(n);
  for (auto& s : stats) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = pick(rng);
      m[k] = measured[i];
      p[k] = predicted[i];
    }
    s = nrmse(m, p);
  }
  std::sort(stats.begin(), stats.end());
  return (percentile(stats, 0.975) - percentile(stats, 0.025)) / 2.0;
}

double correlation(std::span<const double> measured,
                   std::span<const double> predicted) {
  check_pair(measured, predicted);
  const double mm = mean(measured);
  const double mp = mean(predicted);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double dx = measured[i] - mm;
    const double dy = predicted[i] - mp;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw ValidationError("correlation undefined for a constant sequence");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

EvaluationReport evaluate(const ForecastRun& run, std::uint64_t seed) {
  run.check_alignment();
  EvaluationReport r;
  r.site = run.site.name;
  r.predictor = std::string(to_string(run.predictor));
  r.step = run.step;
  r.n = run.size();
  if (r.n < 2) throw ValidationError("forecast run has fewer than 2 samples");
  r.period = format_timestamp(run.instants.front(), run.step) + "/" +
             format_timestamp(run.instants.back(), run.step);
  r.rmse = rmse(run.measured, run.predicted);
  r.nrmse_pct = nrmse(run.measured, run.predicted);
  r.nrmse_ci95_halfwidth = nrmse_ci95(run.measured, run.predicted, seed);
  const auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  r.cc = constant(run.measured) || constant(run.predicted)
             ? std::numeric_limits<double>::quiet_NaN()
             : correlation(run.measured, run.predicted);
  return r;
}

std::string report_csv(std::span<const EvaluationReport> reports) {
  std::string out =
      "site,predictor,rmse_wh_m2,nrmse_pct,nrmse_ci95_pct,cc,n,step,period\n";
  for (const auto& r : reports) {
    out += r.site + ',' + r.predictor + ',' + format_double(r.rmse) + ',' +
           format_double(r.nrmse_pct) + ',' +
           format_double(r.nrmse_ci95_halfwidth) + ',' + format_double(r.cc) +
           ',' + std::to_string(r.n) + ',' + std::string(to_string(r.step)) +
           ',' + r.period + '\n';
  }
  return out;
}

void write_report_csv(std::span<const EvaluationReport> reports,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << report_csv(reports);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace relocast
