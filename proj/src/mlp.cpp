#include "relocast/mlp.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "relocast/error.hpp"

namespace relocast {

namespace {

constexpr int kSchemaVersion = 1;

// Maps the top 53 bits of a draw onto [-bound, bound).
double uniform_symmetric(std::mt19937_64& rng, double bound) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * bound;
}

struct Activations {
  std::array<double, kHidden> hidden{};
  double output = 0.0;
};

Activations activate(const MlpParams& p, const InputVector& x) {
  Activations a;
  a.output = p.b_out;
  for (std::size_t j = 0; j < kHidden; ++j) {
    double z = p.b_hidden[j];
    for (std::size_t i = 0; i < kInputs; ++i) z += p.w_hidden[j][i] * x[i];
    a.hidden[j] = std::tanh(z);
    a.output += p.w_out[j] * a.hidden[j];
  }
  return a;
}

void accumulate(MlpGradient& into, const MlpGradient& g, double scale) {
  for (std::size_t j = 0; j < kHidden; ++j) {
    for (std::size_t i = 0; i < kInputs; ++i) {
      into.w_hidden[j][i] += scale * g.w_hidden[j][i];
    }
    into.b_hidden[j] += scale * g.b_hidden[j];
    into.w_out[j] += scale * g.w_out[j];
  }
  into.b_out += scale * g.b_out;
}

double mean_squared_error(const MlpModel& m,
                          std::span<const TrainingPair> pairs) {
  double sum = 0.0;
  for (const auto& p : pairs) {
    const double e = activate(m.params, p.input).output - p.target;
    sum += e * e;
  }
  return sum / static_cast<double>(pairs.size());
}

std::string step_name(Step s) { return std::string(to_string(s)); }

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("learning_rate must be positive");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ValidationError("momentum must be within [0, 1)");
  }
  if (max_epochs <= 0) throw ValidationError("max_epochs must be positive");
  if (patience <= 0) throw ValidationError("patience must be positive");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw ValidationError("validation_fraction must be within (0, 1)");
  }
}

MlpModel init_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MlpModel m;
  const double hidden_bound = 1.0 / std::sqrt(double(kInputs));
  const double out_bound = 1.0 / std::sqrt(double(kHidden));
  for (auto& row : m.params.w_hidden) {
    for (auto& w : row) w = uniform_symmetric(rng, hidden_bound);
  }
  for (auto& b : m.params.b_hidden) b = uniform_symmetric(rng, hidden_bound);
  for (auto& w : m.params.w_out) w = uniform_symmetric(rng, out_bound);
  m.params.b_out = uniform_symmetric(rng, out_bound);
  m.train_config.seed = seed;
  return m;
}

double forward(const MlpModel& model, const InputVector& input) {
  for (double v : input) {
    if (!std::isfinite(v)) throw ValidationError("non-finite network input");
  }
  return activate(model.params, input).output;
}

MlpGradient backward(const MlpModel& model, const InputVector& input,
                     double target) {
  const MlpParams& p = model.params;
  const Activations a = activate(p, input);
  const double residual = a.output - target;

  MlpGradient g;
  g.b_out = residual;
  for (std::size_t j = 0; j < kHidden; ++j) {
    g.w_out[j] = residual * a.hidden[j];
    const double delta =
        residual * p.w_out[j] * (1.0 - a.hidden[j] * a.hidden[j]);
    g.b_hidden[j] = delta;
    for (std::size_t i = 0; i < kInputs; ++i) {
      g.w_hidden[j][i] = delta * input[i];
    }
  }
  return g;
}

TrainResult train(std::span<const TrainingPair> pairs, const TrainConfig& cfg,
                  const NormStats& norm, std::string training_site,
                  Step step) {
  cfg.validate();
  if (!norm.valid()) throw ValidationError("normalization requires min < max");
  if (pairs.size() < kMinTrainingPairs) {
    throw ValidationError("too few training pairs: " +
                          std::to_string(pairs.size()) + " (need at least " +
                          std::to_string(kMinTrainingPairs) + ")");
  }
  for (const auto& p : pairs) {
    for (double v : p.input) {
      if (!std::isfinite(v)) throw ValidationError("non-finite training input");
    }
    if (!std::isfinite(p.target)) {
      throw ValidationError("non-finite training target");
    }
  }

  const auto n_val = std::max<std::size_t>(
      1, static_cast<std::size_t>(cfg.validation_fraction *
                                  static_cast<double>(pairs.size())));
  const auto fit_set = pairs.first(pairs.size() - n_val);
  const auto val_set = pairs.last(n_val);

  MlpModel model = init_model(cfg.seed);
  model.norm = norm;
  model.training_site = std::move(training_site);
  model.step = step;
  model.train_config = cfg;

  TrainResult result{model, {}};
  result.report.train_pairs = fit_set.size();
  result.report.validation_pairs = val_set.size();

  MlpParams velocity;
  double best_val = std::numeric_limits<double>::infinity();
  const double inv_n = 1.0 / static_cast<double>(fit_set.size());

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    MlpGradient grad;
    double sse = 0.0;
    for (const auto& p : fit_set) {
      const MlpGradient g = backward(model, p.input, p.target);
      sse += g.b_out * g.b_out;  // b_out gradient is the residual
      accumulate(grad, g, inv_n);
    }
    const double train_mse = sse * inv_n;
    const double val_mse = mean_squared_error(model, val_set);
    if (!std::isfinite(train_mse) || !std::isfinite(val_mse)) {
      throw TrainingError("training diverged at epoch " +
                          std::to_string(epoch) + " (non-finite loss)");
    }
    result.report.epochs.push_back({epoch, train_mse, val_mse});
    result.report.stopped_epoch = epoch;

    if (val_mse < best_val) {
      best_val = val_mse;
      result.report.best_epoch = epoch;
      result.model.params = model.params;
    } else if (epoch - result.report.best_epoch >= cfg.patience) {
      break;
    }

    MlpParams step_params;
    accumulate(step_params, velocity, cfg.momentum);
    accumulate(step_params, grad, -cfg.learning_rate);
    velocity = step_params;
    accumulate(model.params, velocity, 1.0);
  }
  return result;
}

std::string model_to_json(const MlpModel& model) {
  using nlohmann::json;
  const auto& p = model.params;
  json w_hidden = json::array();
  for (const auto& row : p.w_hidden) w_hidden.push_back(row);
  const auto& c = model.train_config;
  json doc = {
      {"schema_version", kSchemaVersion},
      {"architecture",
       {{"inputs", kInputs},
        {"hidden", kHidden},
        {"outputs", 1},
        {"hidden_activation", "tanh"},
        {"output_activation", "linear"}}},
      {"w_hidden", w_hidden},
      {"b_hidden", p.b_hidden},
      {"w_out", json::array({p.w_out})},
      {"b_out", p.b_out},
      {"norm", {{"min", model.norm.min}, {"max", model.norm.max}}},
      {"training_site", model.training_site},
      {"step", step_name(model.step)},
      {"train_config",
       {{"learning_rate", c.learning_rate},
        {"momentum", c.momentum},
        {"max_epochs", c.max_epochs},
        {"patience", c.patience},
        {"validation_fraction", c.validation_fraction},
        {"seed", c.seed}}},
  };
  return doc.dump(2) + "\n";
}

namespace {

template <std::size_t N>
std::array<double, N> read_vector(const nlohmann::json& j,
                                  const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  if (j.size() != N) {
    throw ShapeMismatchError(what + " has " + std::to_string(j.size()) +
                             " entries, expected " + std::to_string(N));
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number()) throw ParseError(what + " must hold numbers");
    out[i] = j[i].get<double>();
    if (!std::isfinite(out[i])) throw ParseError(what + " holds non-finite");
  }
  return out;
}

void expect_dimension(const nlohmann::json& arch, const char* key,
                      std::size_t expected) {
  const auto actual = arch.at(key).get<std::size_t>();
  if (actual != expected) {
    throw ShapeMismatchError("architecture declares " + std::to_string(actual) +
                             " " + key + ", this network is fixed at " +
                             std::to_string(expected));
  }
}

}  // namespace

MlpModel model_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ParseError("unsupported model schema_version");
    }
    const auto& arch = doc.at("architecture");
    expect_dimension(arch, "inputs", kInputs);
    expect_dimension(arch, "hidden", kHidden);
    expect_dimension(arch, "outputs", 1);
    if (arch.at("hidden_activation") != "tanh" ||
        arch.at("output_activation") != "linear") {
      throw ParseError("unsupported activation (expected tanh/linear)");
    }

    MlpModel m;
    const auto& wh = doc.at("w_hidden");
    if (!wh.is_array() || wh.size() != kHidden) {
      throw ShapeMismatchError("w_hidden must have " + std::to_string(kHidden) +
                               " rows");
    }
    for (std::size_t j = 0; j < kHidden; ++j) {
      m.params.w_hidden[j] = read_vector<kInputs>(wh[j], "w_hidden row");
    }
    m.params.b_hidden = read_vector<kHidden>(doc.at("b_hidden"), "b_hidden");
    const auto& wo = doc.at("w_out");
    if (!wo.is_array() || wo.size() != 1) {
      throw ShapeMismatchError("w_out must have 1 row");
    }
    m.params.w_out = read_vector<kHidden>(wo[0], "w_out row");
    m.params.b_out = doc.at("b_out").get<double>();
    m.norm = {doc.at("norm").at("min").get<double>(),
              doc.at("norm").at("max").get<double>()};
    if (!m.norm.valid()) throw ParseError("model norm requires min < max");
    m.training_site = doc.at("training_site").get<std::string>();
    m.step = parse_step(doc.at("step").get<std::string>());
    const auto& c = doc.at("train_config");
    m.train_config.learning_rate = c.at("learning_rate").get<double>();
    m.train_config.momentum = c.at("momentum").get<double>();
    m.train_config.max_epochs = c.at("max_epochs").get<int>();
    m.train_config.patience = c.at("patience").get<int>();
    m.train_config.validation_fraction =
        c.at("validation_fraction").get<double>();
    m.train_config.seed = c.at("seed").get<std::uint64_t>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << model_to_json(model);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace relocast
