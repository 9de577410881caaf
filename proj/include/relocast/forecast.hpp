#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "relocast/mlp.hpp"
#include "relocast/stationarize.hpp"
#include "relocast/timeseries.hpp"

namespace relocast {

inline constexpr std::size_t kWindowLength = kInputs;

/// Supervised windows over a stationarized series. inputs[i] holds the 8
/// normalized values preceding target_instants[i] in chronological order
/// (oldest first); targets[i] is the normalized value at the target.
struct WindowSet {
  std::vector<InputVector> inputs;
  std::vector<double> targets;
  std::vector<Timestamp> target_instants;
  std::vector<std::size_t> target_indices;

  std::size_t size() const { return targets.size(); }
  std::vector<TrainingPair> pairs() const;
};

/// Indices i such that samples i-8..i are all usable. Runs break at GAPs and
/// at masked hours, so hourly windows never cross a night.
std::vector<std::size_t> window_targets(const StationarizedSeries& series);

/// Inputs are normalized with `norm` and never clipped.
WindowSet make_windows(const StationarizedSeries& series, const NormStats& norm);

/// Window counts keyed by target month, `YYYY-MM`.
std::map<std::string, std::size_t> windows_per_month(const WindowSet& windows);

/// One-step-ahead forecast in Wh/m2 from the last 8 stationarized values
/// (oldest first) at the model's step: forward pass, inverse normalization,
/// retrend, clamp at 0. Throws MaskedInstantError for a masked hour.
double predict_next(const MlpModel& model, std::span<const double> history,
                    Timestamp instant, const SiteConfig& site);

/// x(t - step) of the raw series; nullopt when the previous step is a GAP or
/// outside the series.
std::optional<double> persistence_next(const IrradiationSeries& series,
                                       Timestamp instant);

/// Forecast for every position of the series: 0 at masked hours, nullopt
/// where fewer than 8 consecutive usable values precede the position.
std::vector<std::optional<double>> predict_timeline(
    const MlpModel& model, const IrradiationSeries& series);

enum class Predictor { AnnLocal, AnnRelocated, Persistence };

std::string_view to_string(Predictor p);

struct ForecastRun {
  Predictor predictor = Predictor::Persistence;
  SiteConfig site;
  Step step = Step::Hourly;
  std::vector<Timestamp> instants;
  std::vector<double> measured;
  std::vector<double> predicted;

  std::size_t size() const { return instants.size(); }
  /// Throws Error if the three columns differ in length or a value is
  /// negative.
  void check_alignment() const;
};

/// Window targets of the series at or after `from`, skipping none else.
std::vector<std::size_t> evaluation_indices(
    const IrradiationSeries& series, std::optional<Timestamp> from = {});

/// ANN forecasts at the given evaluation indices. Work is split across
/// `threads` workers; results do not depend on the thread count.
ForecastRun run_ann(const MlpModel& model, const IrradiationSeries& series,
                    std::span<const std::size_t> indices, Predictor label,
                    unsigned threads = 1);

ForecastRun run_persistence(const IrradiationSeries& series,
                            std::span<const std::size_t> indices);

/// Detrend, fit min-max on the series itself, window and train.
TrainResult train_on_series(const IrradiationSeries& series,
                            const TrainConfig& cfg);

struct TrainedHere {
  IrradiationSeries history;
  TrainConfig train;
};

struct TrainedElsewhere {
  MlpModel model;
};

using ModelSource = std::variant<TrainedHere, TrainedElsewhere>;

struct ExperimentConfig {
  bool ann = true;
  bool persistence = true;
  std::optional<Timestamp> evaluate_from;
  unsigned threads = 1;
};

/// Case A (TrainedElsewhere), case B (TrainedHere) and case C (persistence)
/// on one evaluation series. Every run shares the same evaluation instants.
/// Throws Error when the series yields no window.
std::vector<ForecastRun> run_experiment(const ModelSource& source,
                                        const IrradiationSeries& eval,
                                        const ExperimentConfig& cfg);

/// `timestamp,measured_wh_m2,predicted_wh_m2,predictor` rows of every run.
void write_forecast_csv(std::span<const ForecastRun> runs,
                        const std::filesystem::path& path);

}  // namespace relocast
