#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "commands.hpp"
#include "relocast/config.hpp"
#include "relocast/error.hpp"
#include "relocast/forecast.hpp"
#include "relocast/metrics.hpp"
#include "relocast/pv_plant.hpp"
#include "relocast/stationarize.hpp"
#include "relocast/synth.hpp"

namespace py = pybind11;
using namespace relocast;

namespace {

// Timestamps cross the boundary as the library's CSV text form.
Timestamp parse_instant(const std::string& text) {
  for (Step step : {Step::Hourly, Step::Daily}) {
    if (auto t = parse_timestamp(text, step)) return *t;
  }
  throw ValidationError("cannot parse timestamp '" + text +
                        "' (expected YYYY-MM-DD or YYYY-MM-DDTHH:MM)");
}

Date parse_day(const std::string& text) {
  const auto t = parse_timestamp(text, Step::Daily);
  if (!t) throw ValidationError("cannot parse date '" + text + "' (expected YYYY-MM-DD)");
  return date_of(*t);
}

std::vector<std::string> instants_text(const IrradiationSeries& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.push_back(format_timestamp(s.timestamp(i), s.step()));
  }
  return out;
}

py::dict report_dict(const EvaluationReport& r) {
  py::dict d;
  d["site"] = r.site;
  d["predictor"] = r.predictor;
  d["step"] = std::string(to_string(r.step));
  d["period"] = r.period;
  d["rmse"] = r.rmse;
  d["nrmse_pct"] = r.nrmse_pct;
  d["nrmse_ci95_pct"] = r.nrmse_ci95_halfwidth;
  d["cc"] = r.cc;
  d["n"] = r.n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_relocast, m) {
  m.doc() = "Solar irradiation forecasting with relocatable MLP models";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  auto parse = py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ShapeMismatchError>(m, "ShapeMismatchError", parse.ptr());
  py::register_exception<BoundError>(m, "BoundError", error.ptr());
  py::register_exception<UnsupportedSiteError>(m, "UnsupportedSiteError", error.ptr());
  py::register_exception<MaskedInstantError>(m, "MaskedInstantError", error.ptr());
  py::register_exception<TrainingError>(m, "TrainingError", error.ptr());

  py::class_<SiteConfig>(m, "SiteConfig")
      .def(py::init([](std::string name, double lat, double lon, double alt, double utc) {
             SiteConfig s{std::move(name), lat, lon, alt, utc};
             s.validate();
             return s;
           }),
           py::arg("name"), py::arg("latitude_deg"), py::arg("longitude_deg"),
           py::arg("altitude_m") = 0.0, py::arg("utc_offset_h") = 0.0)
      .def_readonly("name", &SiteConfig::name)
      .def_readonly("latitude_deg", &SiteConfig::latitude_deg)
      .def_readonly("longitude_deg", &SiteConfig::longitude_deg)
      .def_readonly("altitude_m", &SiteConfig::altitude_m)
      .def_readonly("utc_offset_h", &SiteConfig::utc_offset_h)
      .def("to_json", &site_to_json)
      .def_static("from_json", &site_from_json)
      .def_static("load", [](const std::filesystem::path& p) { return load_site(p); })
      .def(py::self == py::self)
      .def("__repr__", [](const SiteConfig& s) {
        return "SiteConfig(" + s.name + ", " + std::to_string(s.latitude_deg) + ")";
      });

  py::class_<PvPlantConfig>(m, "PvPlantConfig")
      .def(py::init([](double tilt, double azimuth, double eff, double surface, double kw) {
             PvPlantConfig p{tilt, azimuth, eff, surface, kw};
             p.validate();
             return p;
           }),
           py::arg("tilt_deg"), py::arg("azimuth_deg"), py::arg("efficiency"),
           py::arg("surface_m2"), py::arg("nominal_power_kw") = 0.0)
      .def_readonly("tilt_deg", &PvPlantConfig::tilt_deg)
      .def_readonly("azimuth_deg", &PvPlantConfig::azimuth_deg)
      .def_readonly("efficiency", &PvPlantConfig::efficiency)
      .def_readonly("surface_m2", &PvPlantConfig::surface_m2)
      .def_readonly("nominal_power_kw", &PvPlantConfig::nominal_power_kw)
      .def("to_json", &plant_to_json)
      .def_static("from_json", &plant_from_json)
      .def_static("load", [](const std::filesystem::path& p) { return load_plant(p); })
      .def(py::self == py::self);

  // Solar geometry.
  m.def("declination", &declination, py::arg("day_of_year"));
  m.def("extraterrestrial_hourly",
        [](const SiteConfig& s, const std::string& t) {
          return extraterrestrial_hourly(s, parse_instant(t));
        },
        py::arg("site"), py::arg("hour_start"));
  m.def("extraterrestrial_daily",
        [](const SiteConfig& s, const std::string& d) {
          return extraterrestrial_daily(s, parse_day(d));
        },
        py::arg("site"), py::arg("day"));
  m.def("solar_altitude",
        [](const SiteConfig& s, const std::string& t) {
          return solar_position(s, parse_instant(t)).altitude_rad;
        },
        py::arg("site"), py::arg("instant"));
  m.def("clear_sky_ghi",
        [](const SiteConfig& s, const std::string& t) {
          return clear_sky_ghi(s, parse_instant(t));
        },
        py::arg("site"), py::arg("instant"));

  // Series.
  py::class_<IrradiationSeries>(m, "IrradiationSeries")
      .def(py::init([](const SiteConfig& s, const std::string& step,
                       const std::string& start, std::vector<Sample> values) {
             return IrradiationSeries(s, parse_step(step), parse_instant(start),
                                      std::move(values));
           }),
           py::arg("site"), py::arg("step"), py::arg("start"), py::arg("values"))
      .def_property_readonly("site", &IrradiationSeries::site)
      .def_property_readonly("step",
                             [](const IrradiationSeries& s) { return std::string(to_string(s.step())); })
      .def_property_readonly("values", &IrradiationSeries::values)
      .def_property_readonly("timestamps", &instants_text)
      .def("slice", &IrradiationSeries::slice, py::arg("first"), py::arg("count"))
      .def("__len__", &IrradiationSeries::size)
      .def(py::self == py::self);

  m.def("load_csv",
        [](const std::filesystem::path& p, const SiteConfig& s, const std::string& step) {
          return load_csv(p, s, parse_step(step));
        },
        py::arg("path"), py::arg("site"), py::arg("step"));
  m.def("write_csv",
        [](const IrradiationSeries& s, const std::filesystem::path& p) { write_csv(s, p); },
        py::arg("series"), py::arg("path"));

  py::class_<CloudParams>(m, "CloudParams")
      .def(py::init([](double phi, double sigma, double mean) {
             CloudParams c{phi, sigma, mean};
             c.validate();
             return c;
           }),
           py::arg("phi") = 0.9, py::arg("sigma") = 0.1, py::arg("mean_attenuation") = 0.6)
      .def_readonly("phi", &CloudParams::phi)
      .def_readonly("sigma", &CloudParams::sigma)
      .def_readonly("mean_attenuation", &CloudParams::mean_attenuation);
  m.def("generate",
        [](const SiteConfig& s, const std::string& start, int years, const CloudParams& c,
           std::uint64_t seed) { return generate(s, parse_day(start), years, c, seed); },
        py::arg("site"), py::arg("start"), py::arg("years"),
        py::arg("cloud") = CloudParams{}, py::arg("seed") = 0);
  m.def("aggregate_daily", &aggregate_daily, py::arg("hourly"));

  // Stationarization: returns (ratios, daylight); masked entries are None.
  m.def("detrend",
        [](const IrradiationSeries& s) {
          const auto st = detrend(s);
          return py::make_tuple(st.values(), st.daylight());
        },
        py::arg("series"));
  m.def("retrend",
        [](double v, const SiteConfig& s, const std::string& t, const std::string& step) {
          return retrend(v, s, parse_instant(t), parse_step(step));
        },
        py::arg("ratio"), py::arg("site"), py::arg("instant"), py::arg("step"));

  // Models.
  py::class_<MlpModel>(m, "MlpModel")
      .def_readonly("training_site", &MlpModel::training_site)
      .def_property_readonly("step",
                             [](const MlpModel& mo) { return std::string(to_string(mo.step)); })
      .def_property_readonly("norm",
                             [](const MlpModel& mo) { return py::make_tuple(mo.norm.min, mo.norm.max); })
      .def("forward",
           [](const MlpModel& mo, const InputVector& x) { return forward(mo, x); },
           py::arg("inputs"))
      .def("to_json", &model_to_json)
      .def_static("from_json", &model_from_json)
      .def("save", [](const MlpModel& mo, const std::filesystem::path& p) { save_model(mo, p); })
      .def_static("load", [](const std::filesystem::path& p) { return load_model(p); })
      .def(py::self == py::self);

  m.def("train",
        [](const IrradiationSeries& s, std::uint64_t seed, int max_epochs, double lr,
           double momentum, int patience) {
          TrainConfig cfg;
          cfg.seed = seed;
          cfg.max_epochs = max_epochs;
          cfg.learning_rate = lr;
          cfg.momentum = momentum;
          cfg.patience = patience;
          auto r = train_on_series(s, cfg);
          return py::make_tuple(r.model, r.report.best_epoch, r.report.stopped_epoch);
        },
        py::arg("series"), py::arg("seed") = 0, py::arg("max_epochs") = 2000,
        py::arg("learning_rate") = 0.05, py::arg("momentum") = 0.9, py::arg("patience") = 50,
        "Train on a series; returns (model, best_epoch, stopped_epoch).");

  m.def("predict_next",
        [](const MlpModel& mo, std::vector<double> history, const std::string& t,
           const SiteConfig& s) { return predict_next(mo, history, parse_instant(t), s); },
        py::arg("model"), py::arg("history"), py::arg("target"), py::arg("site"));

  m.def("evaluate",
        [](std::optional<MlpModel> model, const IrradiationSeries& eval, bool ann,
           bool persistence, unsigned threads, std::uint64_t seed) {
          ExperimentConfig cfg;
          cfg.ann = ann && model.has_value();
          cfg.persistence = persistence;
          cfg.threads = threads;
          ModelSource source = TrainedElsewhere{model.value_or(MlpModel{})};
          py::list out;
          for (const auto& run : run_experiment(source, eval, cfg)) {
            out.append(report_dict(relocast::evaluate(run, seed)));
          }
          return out;
        },
        py::arg("model"), py::arg("series"), py::arg("ann") = true,
        py::arg("persistence") = true, py::arg("threads") = 1, py::arg("seed") = 0,
        "Forecast the series with a stored model and persistence; one report dict per predictor.");

  // Metrics.
  m.def("rmse", [](std::vector<double> a, std::vector<double> b) { return rmse(a, b); });
  m.def("nrmse", [](std::vector<double> a, std::vector<double> b) { return nrmse(a, b); });
  m.def("correlation",
        [](std::vector<double> a, std::vector<double> b) { return correlation(a, b); });
  m.def("nrmse_ci95",
        [](std::vector<double> a, std::vector<double> b, std::uint64_t seed) {
          return nrmse_ci95(a, b, seed);
        },
        py::arg("measured"), py::arg("predicted"), py::arg("seed") = 0);

  // PV chain.
  m.def("transpose",
        [](double ghi, const SiteConfig& s, const std::string& t, const PvPlantConfig& p) {
          return transpose(ghi, s, parse_instant(t), p);
        },
        py::arg("ghi_wh_m2"), py::arg("site"), py::arg("instant"), py::arg("plant"));
  m.def("pv_energy", &pv_energy, py::arg("tilted_wh_m2"), py::arg("plant"));

  // Command-line entry point; returns (exit_code, stdout, stderr).
  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "relocast");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
