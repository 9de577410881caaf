#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "relocast/stationarize.hpp"
#include "relocast/time.hpp"

namespace relocast {

inline constexpr std::size_t kInputs = 8;
inline constexpr std::size_t kHidden = 3;

using InputVector = std::array<double, kInputs>;

enum class HiddenActivation { Tanh };
enum class OutputActivation { Linear };

/// Parameters of the 8-3-1 network, or a gradient with the same shapes.
struct MlpParams {
  std::array<InputVector, kHidden> w_hidden{};
  std::array<double, kHidden> b_hidden{};
  std::array<double, kHidden> w_out{};
  double b_out = 0.0;

  bool operator==(const MlpParams&) const = default;
};

using MlpGradient = MlpParams;

struct TrainConfig {
  double learning_rate = 0.05;
  double momentum = 0.9;
  int max_epochs = 2000;
  int patience = 50;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct MlpModel {
  MlpParams params;
  HiddenActivation hidden_activation = HiddenActivation::Tanh;
  OutputActivation output_activation = OutputActivation::Linear;
  NormStats norm;
  std::string training_site;
  Step step = Step::Hourly;
  TrainConfig train_config;

  bool operator==(const MlpModel&) const = default;
};

/// Uniform weights in [-1/sqrt(fan_in), 1/sqrt(fan_in)] from a 64-bit
/// Mersenne twister seeded with `seed`. Biases use the same bounds.
MlpModel init_model(std::uint64_t seed);

/// Throws ValidationError on non-finite input.
double forward(const MlpModel& model, const InputVector& input);

/// Gradient of 0.5 * (forward(x) - target)^2 with respect to every parameter.
MlpGradient backward(const MlpModel& model, const InputVector& input,
                     double target);

struct TrainingPair {
  InputVector input;
  double target = 0.0;
};

struct EpochRecord {
  int epoch = 0;
  double train_mse = 0.0;
  double validation_mse = 0.0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  int stopped_epoch = 0;
  std::size_t train_pairs = 0;
  std::size_t validation_pairs = 0;
};

struct TrainResult {
  MlpModel model;
  TrainReport report;
};

inline constexpr std::size_t kMinTrainingPairs = 50;

/// Full-batch gradient descent with momentum on mean squared error. The
/// last validation_fraction of `pairs` (in order) is held out for early
/// stopping; the returned model is the one with minimal validation loss.
/// Throws ValidationError for fewer than 50 pairs and TrainingError when the
/// loss diverges.
TrainResult train(std::span<const TrainingPair> pairs, const TrainConfig& cfg,
                  const NormStats& norm, std::string training_site, Step step);

/// JSON model file. Throws IoError, ParseError or ShapeMismatchError.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

std::string model_to_json(const MlpModel& model);
MlpModel model_from_json(const std::string& text);

}  // namespace relocast
