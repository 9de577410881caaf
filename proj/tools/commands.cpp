#include "commands.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relocast/config.hpp"
#include "relocast/error.hpp"
#include "relocast/forecast.hpp"
#include "relocast/metrics.hpp"
#include "relocast/mlp.hpp"
#include "relocast/pv_plant.hpp"
#include "relocast/stationarize.hpp"
#include "relocast/synth.hpp"
#include "relocast/timeseries.hpp"

namespace relocast::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

Date parse_date_arg(const std::string& text) {
  const auto t = parse_timestamp(text, Step::Daily);
  if (!t) throw ValidationError("expected a date YYYY-MM-DD, got '" + text + "'");
  return date_of(*t);
}

std::filesystem::path sibling(const std::filesystem::path& p,
                              const std::string& suffix) {
  auto out = p;
  out.replace_extension();
  out += suffix;
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

struct SynthArgs {
  std::string site, out, start = "2000-01-01", step = "hourly";
  int years = 0;
  std::uint64_t seed = 0;
  CloudParams cloud;
};

struct TrainArgs {
  std::string series, site, step, out, report, coverage;
  double train_fraction = 0.8;
  TrainConfig cfg;
};

struct EvaluateArgs {
  std::string model, series, site, step, report, forecast, from;
  std::string predictors = "ann,persistence";
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct PvArgs {
  std::string model, series, site, plant, out, report, from;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct StationarizeArgs {
  std::string series, site, step, out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const SiteConfig site = load_site(a.site);
  const Step step = parse_step(a.step);
  IrradiationSeries series =
      generate(site, parse_date_arg(a.start), a.years, a.cloud, a.seed);
  if (step == Step::Daily) series = aggregate_daily(series);
  write_csv(series, a.out);
  out << "wrote " << series.size() << ' ' << to_string(step) << " rows for '"
      << site.name << "' to " << a.out << '\n';
  return kOk;
}

void print_metrics(std::ostream& out, const std::string& label,
                   const EvaluationReport& r) {
  out << label << ": n=" << r.n << " RMSE=" << fixed(r.rmse, 2)
      << " Wh/m2 nRMSE=" << fixed(r.nrmse_pct, 2) << "%+-"
      << fixed(r.nrmse_ci95_halfwidth, 2) << " CC=" << fixed(r.cc, 3) << '\n';
}

int cmd_train(TrainArgs a, std::ostream& out) {
  const SiteConfig site = load_site(a.site);
  const Step step = parse_step(a.step);
  const IrradiationSeries series = load_csv(a.series, site, step);
  const std::size_t cut = split_point(series.size(), a.train_fraction);
  const IrradiationSeries train_part = series.slice(0, cut);

  const StationarizedSeries st = detrend(train_part);
  const NormStats norm = fit_minmax(st);
  const WindowSet windows = make_windows(st, norm);
  const auto pairs = windows.pairs();
  const TrainResult trained = train(pairs, a.cfg, norm, site.name, step);
  save_model(trained.model, a.out);

  const auto report_path =
      a.report.empty() ? sibling(a.out, ".train.csv")
                       : std::filesystem::path(a.report);
  std::string report = "epoch,train_mse,validation_mse\n";
  for (const auto& e : trained.report.epochs) {
    report += std::to_string(e.epoch) + ',' + fmt(e.train_mse) + ',' +
              fmt(e.validation_mse) + '\n';
  }
  write_text(report_path, report);

  const auto coverage_path =
      a.coverage.empty() ? sibling(a.out, ".windows.csv")
                         : std::filesystem::path(a.coverage);
  std::string coverage = "month,windows\n";
  for (const auto& [month, count] : windows_per_month(windows)) {
    coverage += month + ',' + std::to_string(count) + '\n';
  }
  write_text(coverage_path, coverage);

  out << "trained on " << trained.report.train_pairs << " windows ("
      << trained.report.validation_pairs << " validation), best epoch "
      << trained.report.best_epoch << ", stopped at epoch "
      << trained.report.stopped_epoch << '\n';

  const auto held_out =
      evaluation_indices(series, series.timestamp(cut));
  if (held_out.size() >= kMinBootstrapSamples) {
    const std::string label = "held-out " + std::to_string(series.size() - cut) +
                              " " + std::string(to_string(step)) + " steps";
    const ForecastRun ann =
        run_ann(trained.model, series, held_out, Predictor::AnnLocal);
    print_metrics(out, label + ", ann_local", evaluate(ann, a.cfg.seed));
    const ForecastRun naive = run_persistence(series, held_out);
    if (naive.size() >= kMinBootstrapSamples) {
      print_metrics(out, label + ", persistence", evaluate(naive, a.cfg.seed));
    }
  } else {
    out << "held-out part yields only " << held_out.size()
        << " windows; metrics skipped\n";
  }
  out << "model written to " << a.out << '\n';
  return kOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  bool want_ann = false, want_persistence = false;
  for (const auto& p : split_list(a.predictors)) {
    if (p == "ann") {
      want_ann = true;
    } else if (p == "persistence") {
      want_persistence = true;
    } else {
      throw ValidationError("--predictors: unknown predictor '" + p +
                            "' (expected ann, persistence)");
    }
  }
  if (!want_ann && !want_persistence) {
    throw ValidationError("--predictors: nothing to evaluate");
  }
  if (want_ann && a.model.empty()) {
    throw ValidationError("--model is required when the ann predictor is "
                          "requested");
  }

  const SiteConfig site = load_site(a.site);
  std::optional<MlpModel> model;
  if (!a.model.empty()) model = load_model(a.model);
  Step step;
  if (!a.step.empty()) {
    step = parse_step(a.step);
    if (model && model->step != step) {
      throw ValidationError("--step " + a.step + " differs from the model's " +
                            std::string(to_string(model->step)) + " step");
    }
  } else if (model) {
    step = model->step;
  } else {
    throw ValidationError("--step is required without --model");
  }

  const IrradiationSeries series = load_csv(a.series, site, step);
  std::optional<Timestamp> from;
  if (!a.from.empty()) from = Timestamp{parse_date_arg(a.from)};
  const auto indices = evaluation_indices(series, from);
  if (indices.empty()) {
    throw Error("series '" + a.series + "' yields no forecast window");
  }

  std::vector<ForecastRun> runs;
  if (want_ann) {
    const Predictor label = model->training_site == site.name
                                ? Predictor::AnnLocal
                                : Predictor::AnnRelocated;
    runs.push_back(run_ann(*model, series, indices, label, a.threads));
  }
  if (want_persistence) runs.push_back(run_persistence(series, indices));

  std::vector<EvaluationReport> reports;
  for (const auto& run : runs) reports.push_back(evaluate(run, a.seed));

  const std::string csv = report_csv(reports);
  out << csv;
  if (!a.report.empty()) write_text(a.report, csv);
  if (!a.forecast.empty()) write_forecast_csv(runs, a.forecast);
  return kOk;
}

int cmd_pv(const PvArgs& a, std::ostream& out) {
  const SiteConfig site = load_site(a.site);
  const PvPlantConfig plant = load_plant(a.plant);
  const MlpModel model = load_model(a.model);
  if (model.step != Step::Hourly) {
    throw ValidationError("pv needs an hourly model, '" + a.model + "' is " +
                          std::string(to_string(model.step)));
  }
  out << "plant " << plant_to_json(plant);

  const IrradiationSeries series = load_csv(a.series, site, Step::Hourly);
  std::optional<Timestamp> from;
  if (!a.from.empty()) from = Timestamp{parse_date_arg(a.from)};
  const auto indices = evaluation_indices(series, from);
  if (indices.empty()) {
    throw Error("series '" + a.series + "' yields no forecast window");
  }

  const Predictor label = model.training_site == site.name
                              ? Predictor::AnnLocal
                              : Predictor::AnnRelocated;
  const std::vector<ForecastRun> ghi_runs = {
      run_ann(model, series, indices, label, a.threads),
      run_persistence(series, indices)};

  std::vector<ForecastRun> energy_runs;
  for (const auto& ghi : ghi_runs) {
    ForecastRun e = ghi;
    for (std::size_t i = 0; i < e.size(); ++i) {
      e.measured[i] =
          pv_energy(transpose_hour(ghi.measured[i], site, ghi.instants[i], plant),
                    plant);
      e.predicted[i] = pv_energy(
          transpose_hour(ghi.predicted[i], site, ghi.instants[i], plant), plant);
    }
    energy_runs.push_back(std::move(e));
  }

  std::string csv = "timestamp,predicted_wh,measured_wh\n";
  const ForecastRun& ann = energy_runs.front();
  for (std::size_t i = 0; i < ann.size(); ++i) {
    csv += format_timestamp(ann.instants[i], Step::Hourly) + ',' +
           fmt(ann.predicted[i]) + ',' + fmt(ann.measured[i]) + '\n';
  }
  write_text(a.out, csv);

  std::vector<EvaluationReport> reports;
  for (const auto& run : energy_runs) {
    EvaluationReport r = evaluate(run, a.seed);
    r.site += "/pv";
    reports.push_back(r);
  }
  const std::string report = report_csv(reports);
  out << report;
  if (!a.report.empty()) write_text(a.report, report);
  return kOk;
}

int cmd_stationarize(const StationarizeArgs& a, std::ostream& out) {
  const SiteConfig site = load_site(a.site);
  const Step step = parse_step(a.step);
  const StationarizedSeries st = detrend(load_csv(a.series, site, step));
  write_csv(st, a.out);
  std::size_t usable = 0;
  for (std::size_t i = 0; i < st.size(); ++i) usable += st.usable(i) ? 1 : 0;
  out << "wrote " << st.size() << " rows (" << usable << " usable) to " << a.out
      << '\n';
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solar irradiation forecasting with relocated MLP learning"};
  app.name("relocast");
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic series");
  synth->add_option("--site", synth_args.site, "Site config (JSON)")->required();
  synth->add_option("--years", synth_args.years, "Calendar years to generate")
      ->required()
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_args.seed, "Random seed")->required();
  synth->add_option("--out", synth_args.out, "Output series CSV")->required();
  synth->add_option("--start", synth_args.start, "First day, YYYY-MM-DD")
      ->capture_default_str();
  synth->add_option("--step", synth_args.step, "hourly or daily")
      ->check(CLI::IsMember({"hourly", "daily"}))
      ->capture_default_str();
  synth->add_option("--phi", synth_args.cloud.phi, "AR(1) coefficient")
      ->capture_default_str();
  synth->add_option("--sigma", synth_args.cloud.sigma, "Innovation std")
      ->capture_default_str();
  synth->add_option("--attenuation", synth_args.cloud.mean_attenuation,
                    "Mean cloud attenuation")
      ->capture_default_str();

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train an 8-3-1 forecaster");
  train_cmd->add_option("--series", train_args.series, "Series CSV")->required();
  train_cmd->add_option("--site", train_args.site, "Site config (JSON)")
      ->required();
  train_cmd->add_option("--step", train_args.step, "hourly or daily")
      ->required()
      ->check(CLI::IsMember({"hourly", "daily"}));
  train_cmd->add_option("--seed", train_args.cfg.seed, "Weight seed")
      ->required();
  train_cmd->add_option("--out", train_args.out, "Model file (JSON)")
      ->required();
  train_cmd->add_option("--report", train_args.report,
                        "Per-epoch loss CSV [<out>.train.csv]");
  train_cmd->add_option("--coverage", train_args.coverage,
                        "Windows per month CSV [<out>.windows.csv]");
  train_cmd->add_option("--train-fraction", train_args.train_fraction,
                        "Chronological training share")
      ->capture_default_str();
  train_cmd->add_option("--lr", train_args.cfg.learning_rate, "Learning rate")
      ->capture_default_str();
  train_cmd->add_option("--momentum", train_args.cfg.momentum, "Momentum")
      ->capture_default_str();
  train_cmd->add_option("--epochs", train_args.cfg.max_epochs, "Maximum epochs")
      ->capture_default_str();
  train_cmd->add_option("--patience", train_args.cfg.patience,
                        "Early-stopping patience")
      ->capture_default_str();
  train_cmd->add_option("--validation-fraction",
                        train_args.cfg.validation_fraction,
                        "Validation tail of the training part")
      ->capture_default_str();

  EvaluateArgs eval_args;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Compare predictors on a series");
  eval_cmd->add_option("--model", eval_args.model, "Model file (JSON)");
  eval_cmd->add_option("--series", eval_args.series, "Series CSV")->required();
  eval_cmd->add_option("--site", eval_args.site, "Site config (JSON)")
      ->required();
  eval_cmd->add_option("--predictors", eval_args.predictors,
                       "Comma list of ann, persistence")
      ->capture_default_str();
  eval_cmd->add_option("--step", eval_args.step,
                       "hourly or daily [model step]")
      ->check(CLI::IsMember({"hourly", "daily"}));
  eval_cmd->add_option("--from", eval_args.from,
                       "Evaluate targets on or after YYYY-MM-DD");
  eval_cmd->add_option("--report", eval_args.report, "Report CSV");
  eval_cmd->add_option("--forecast", eval_args.forecast,
                       "Per-timestamp forecast CSV");
  eval_cmd->add_option("--seed", eval_args.seed, "Bootstrap seed")
      ->capture_default_str();
  eval_cmd->add_option("--threads", eval_args.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  PvArgs pv_args;
  auto* pv_cmd = app.add_subcommand("pv", "Forecast PV plant energy");
  pv_cmd->add_option("--model", pv_args.model, "Hourly model (JSON)")
      ->required();
  pv_cmd->add_option("--series", pv_args.series, "Hourly series CSV")
      ->required();
  pv_cmd->add_option("--site", pv_args.site, "Site config (JSON)")->required();
  pv_cmd->add_option("--plant", pv_args.plant, "Plant config (JSON)")
      ->required();
  pv_cmd->add_option("--out", pv_args.out, "Energy forecast CSV")->required();
  pv_cmd->add_option("--report", pv_args.report, "Report CSV");
  pv_cmd->add_option("--from", pv_args.from,
                     "Evaluate targets on or after YYYY-MM-DD");
  pv_cmd->add_option("--seed", pv_args.seed, "Bootstrap seed")
      ->capture_default_str();
  pv_cmd->add_option("--threads", pv_args.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  StationarizeArgs st_args;
  auto* st_cmd = app.add_subcommand("stationarize",
                                    "Dump the detrended ratio series");
  st_cmd->add_option("--series", st_args.series, "Series CSV")->required();
  st_cmd->add_option("--site", st_args.site, "Site config (JSON)")->required();
  st_cmd->add_option("--step", st_args.step, "hourly or daily")
      ->required()
      ->check(CLI::IsMember({"hourly", "daily"}));
  st_cmd->add_option("--out", st_args.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kUsageFailure;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_args, out);
    if (train_cmd->parsed()) return cmd_train(train_args, out);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_args, out);
    if (pv_cmd->parsed()) return cmd_pv(pv_args, out);
    if (st_cmd->parsed()) return cmd_stationarize(st_args, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageFailure;
}

}  // namespace relocast::cli
