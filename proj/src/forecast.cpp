#include "relocast/forecast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "relocast/error.hpp"

namespace relocast {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::array<double, kWindowLength> history_at(const StationarizedSeries& s,
                                             std::size_t target) {
  std::array<double, kWindowLength> h{};
  for (std::size_t k = 0; k < kWindowLength; ++k) {
    h[k] = *s[target - kWindowLength + k];
  }
  return h;
}

// Runs body(i) for i in [0, n) over contiguous chunks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(n, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<TrainingPair> WindowSet::pairs() const {
  std::vector<TrainingPair> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {inputs[i], targets[i]};
  return out;
}

std::vector<std::size_t> window_targets(const StationarizedSeries& series) {
  std::vector<std::size_t> targets;
  std::size_t run = 0;  // consecutive usable samples ending before i
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.usable(i)) {
      run = 0;
      continue;
    }
    if (run >= kWindowLength) targets.push_back(i);
    ++run;
  }
  return targets;
}

WindowSet make_windows(const StationarizedSeries& series,
                       const NormStats& norm) {
  if (!norm.valid()) throw ValidationError("normalization requires min < max");
  WindowSet w;
  for (std::size_t i : window_targets(series)) {
    InputVector x;
    const auto h = history_at(series, i);
    for (std::size_t k = 0; k < kWindowLength; ++k) {
      x[k] = apply_minmax(h[k], norm);
    }
    w.inputs.push_back(x);
    w.targets.push_back(apply_minmax(*series[i], norm));
    w.target_instants.push_back(series.timestamp(i));
    w.target_indices.push_back(i);
  }
  return w;
}

std::map<std::string, std::size_t> windows_per_month(const WindowSet& windows) {
  std::map<std::string, std::size_t> counts;
  for (Timestamp t : windows.target_instants) {
    counts[format_timestamp(t, Step::Daily).substr(0, 7)] += 1;
  }
  return counts;
}

double predict_next(const MlpModel& model, std::span<const double> history,
                    Timestamp instant, const SiteConfig& site) {
  if (history.size() != kWindowLength) {
    throw ValidationError("predict_next needs exactly 8 history values");
  }
  InputVector x;
  for (std::size_t k = 0; k < kWindowLength; ++k) {
    x[k] = apply_minmax(history[k], model.norm);
  }
  const double ratio = invert_minmax(forward(model, x), model.norm);
  return std::max(0.0, retrend(ratio, site, instant, model.step));
}

std::optional<double> persistence_next(const IrradiationSeries& series,
                                       Timestamp instant) {
  const auto prev = series.index_of(instant - step_duration(series.step()));
  if (!prev) return std::nullopt;
  return series[*prev];
}

std::vector<std::optional<double>> predict_timeline(
    const MlpModel& model, const IrradiationSeries& series) {
  if (model.step != series.step()) {
    throw ValidationError("model step differs from series step");
  }
  const StationarizedSeries st = detrend(series);
  std::vector<std::optional<double>> out(series.size());
  std::size_t run = 0;  // consecutive usable samples ending before i
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (st.masked(i)) {
      out[i] = 0.0;
      run = 0;
      continue;
    }
    if (run >= kWindowLength) {
      const auto h = history_at(st, i);
      out[i] = predict_next(model, h, st.timestamp(i), series.site());
    }
    run = st.usable(i) ? run + 1 : 0;
  }
  return out;
}

std::string_view to_string(Predictor p) {
  switch (p) {
    case Predictor::AnnLocal:
      return "ann_local";
    case Predictor::AnnRelocated:
      return "ann_relocated";
    case Predictor::Persistence:
      return "persistence";
  }
  return "unknown";
}

void ForecastRun::check_alignment() const {
  if (measured.size() != instants.size() ||
      predicted.size() != instants.size()) {
    throw Error("forecast run columns are misaligned");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(measured[i] >= 0.0) || !(predicted[i] >= 0.0)) {
      throw Error("forecast run holds a negative value at " +
                  format_timestamp(instants[i], step));
    }
  }
}

std::vector<std::size_t> evaluation_indices(const IrradiationSeries& series,
                                            std::optional<Timestamp> from) {
  std::vector<std::size_t> out;
  for (std::size_t i : window_targets(detrend(series))) {
    if (!from || series.timestamp(i) >= *from) out.push_back(i);
  }
  return out;
}

ForecastRun run_ann(const MlpModel& model, const IrradiationSeries& series,
                    std::span<const std::size_t> indices, Predictor label,
                    unsigned threads) {
  if (model.step != series.step()) {
    throw ValidationError("model trained at " +
                          std::string(to_string(model.step)) +
                          " step cannot forecast a " +
                          std::string(to_string(series.step())) + " series");
  }
  const StationarizedSeries st = detrend(series);
  ForecastRun run{label, series.site(), series.step(), {}, {}, {}};
  run.instants.resize(indices.size());
  run.measured.resize(indices.size());
  run.predicted.resize(indices.size());
  parallel_for(indices.size(), threads, [&](std::size_t k) {
    const std::size_t i = indices[k];
    if (i < kWindowLength || !st.usable(i)) {
      throw ValidationError("index " + std::to_string(i) +
                            " is not a window target");
    }
    for (std::size_t j = i - kWindowLength; j < i; ++j) {
      if (!st.usable(j)) {
        throw ValidationError("index " + std::to_string(i) +
                              " lacks 8 usable predecessors");
      }
    }
    const auto h = history_at(st, i);
    run.instants[k] = series.timestamp(i);
    run.measured[k] = *series[i];
    run.predicted[k] = predict_next(model, h, run.instants[k], series.site());
  });
  run.check_alignment();
  return run;
}

ForecastRun run_persistence(const IrradiationSeries& series,
                            std::span<const std::size_t> indices) {
  ForecastRun run{Predictor::Persistence, series.site(), series.step(),
                  {}, {}, {}};
  for (std::size_t i : indices) {
    const Timestamp t = series.timestamp(i);
    const auto prediction = persistence_next(series, t);
    if (!prediction || !series[i]) continue;
    run.instants.push_back(t);
    run.measured.push_back(*series[i]);
    run.predicted.push_back(*prediction);
  }
  run.check_alignment();
  return run;
}

TrainResult train_on_series(const IrradiationSeries& series,
                            const TrainConfig& cfg) {
  const StationarizedSeries st = detrend(series);
  const NormStats norm = fit_minmax(st);
  const WindowSet windows = make_windows(st, norm);
  const auto pairs = windows.pairs();
  return train(pairs, cfg, norm, series.site().name, series.step());
}

std::vector<ForecastRun> run_experiment(const ModelSource& source,
                                        const IrradiationSeries& eval,
                                        const ExperimentConfig& cfg) {
  const auto indices = evaluation_indices(eval, cfg.evaluate_from);
  if (indices.empty()) {
    throw Error("evaluation series for '" + eval.site().name +
                "' yields no forecast window");
  }
  std::vector<ForecastRun> runs;
  if (cfg.ann) {
    if (const auto* here = std::get_if<TrainedHere>(&source)) {
      const TrainResult trained = train_on_series(here->history, here->train);
      runs.push_back(
          run_ann(trained.model, eval, indices, Predictor::AnnLocal, cfg.threads));
    } else {
      const auto& elsewhere = std::get<TrainedElsewhere>(source);
      const Predictor label = elsewhere.model.training_site == eval.site().name
                                  ? Predictor::AnnLocal
                                  : Predictor::AnnRelocated;
      runs.push_back(
          run_ann(elsewhere.model, eval, indices, label, cfg.threads));
    }
  }
  if (cfg.persistence) runs.push_back(run_persistence(eval, indices));
  return runs;
}

void write_forecast_csv(std::span<const ForecastRun> runs,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "timestamp,measured_wh_m2,predicted_wh_m2,predictor\n";
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.size(); ++i) {
      out << format_timestamp(run.instants[i], run.step) << ','
          << format_double(run.measured[i]) << ','
          << format_double(run.predicted[i]) << ',' << to_string(run.predictor)
          << '\n';
    }
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace relocast
