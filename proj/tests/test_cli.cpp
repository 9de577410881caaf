#include <gtest/gtest.h>

#include <fstream>

#include "cli_harness.hpp"
#include "relocast/config.hpp"
#include "relocast/mlp.hpp"

using relocast::testing::run_cli;
using relocast::testing::slurp;
using relocast::testing::Workspace;

namespace {

// Two synthetic years at Ajaccio and one at Bastia, plus a quickly trained
// hourly model, shared by the tests below.
class CliTest : public ::testing::Test {
 protected:
  static inline Workspace* ws = nullptr;

  static void SetUpTestSuite() {
    ws = new Workspace("cli_suite");
    const Workspace& w = *ws;
    ASSERT_EQ(run_cli({"synth", "--site", w / "ajaccio.json", "--years", "2", "--seed",
                       "42", "--out", w / "a.csv"})
                  .code,
              0);
    ASSERT_EQ(run_cli({"synth", "--site", w / "bastia.json", "--years", "1", "--seed",
                       "5", "--phi", "0.85", "--sigma", "0.12", "--attenuation",
                       "0.65", "--start", "2001-01-01", "--out", w / "b.csv"})
                  .code,
              0);
    ASSERT_EQ(run_cli({"train", "--series", w / "a.csv", "--site", w / "ajaccio.json",
                       "--step", "hourly", "--seed", "7", "--epochs", "200", "--out",
                       w / "model.json"})
                  .code,
              0);
  }
  static void TearDownTestSuite() {
    delete ws;
    ws = nullptr;
  }
};

}  // namespace

TEST_F(CliTest, SynthWritesHourlyRows) {
  const std::string csv = slurp(*ws / "a.csv");
  EXPECT_EQ(csv.rfind("timestamp,ghi_wh_m2\n2000-01-01T00:00,0\n", 0), 0u);
  // Header plus 2000 (leap) and 2001.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 24 * (366 + 365));
}

TEST_F(CliTest, SynthIsByteIdentical) {
  const Workspace& w = *ws;
  ASSERT_EQ(run_cli({"synth", "--site", w / "ajaccio.json", "--years", "2", "--seed",
                     "42", "--out", w / "a2.csv"})
                .code,
            0);
  EXPECT_EQ(slurp(w / "a.csv"), slurp(w / "a2.csv"));
}

TEST_F(CliTest, SynthDailyAggregates) {
  const Workspace& w = *ws;
  ASSERT_EQ(run_cli({"synth", "--site", w / "ajaccio.json", "--years", "1", "--seed",
                     "1", "--step", "daily", "--out", w / "d.csv"})
                .code,
            0);
  const std::string csv = slurp(w / "d.csv");
  EXPECT_EQ(csv.rfind("timestamp,ghi_wh_m2\n2000-01-01,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 366);
}

TEST_F(CliTest, MissingSiteIsUsageError) {
  const auto r = run_cli({"synth", "--years", "5", "--seed", "42", "--out", *ws / "x.csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--site"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
}

TEST_F(CliTest, HelpSucceedsForEverySubcommand) {
  for (const char* cmd : {"synth", "train", "evaluate", "pv", "stationarize"}) {
    const auto r = run_cli({cmd, "--help"});
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_FALSE(r.out.empty()) << cmd;
  }
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
}

TEST_F(CliTest, TrainedModelLoadsAndRetrainsIdentically) {
  const Workspace& w = *ws;
  const auto m = relocast::load_model(w / "model.json");
  EXPECT_EQ(m.training_site, "ajaccio");
  EXPECT_EQ(m.step, relocast::Step::Hourly);
  const auto r = run_cli({"train", "--series", w / "a.csv", "--site", w / "ajaccio.json",
                          "--step", "hourly", "--seed", "7", "--epochs", "200", "--out",
                          w / "model2.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(w / "model.json"), slurp(w / "model2.json"));
  EXPECT_EQ(slurp(w / "model.train.csv"), slurp(w / "model2.train.csv"));
  // Held-out metrics are printed.
  EXPECT_NE(r.out.find("ann_local: n="), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("nRMSE="), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("CC="), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("persistence: n="), std::string::npos) << r.out;
  const std::string coverage = slurp(w / "model2.windows.csv");
  EXPECT_EQ(coverage.rfind("month,windows\n", 0), 0u) << coverage.substr(0, 40);
}

TEST_F(CliTest, EvaluateReportsBothPredictorsInTableOrder) {
  const Workspace& w = *ws;
  const auto r = run_cli({"evaluate", "--model", w / "model.json", "--series",
                          w / "b.csv", "--site", w / "bastia.json", "--predictors",
                          "ann,persistence", "--report", w / "rep.csv", "--forecast",
                          w / "fc.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string rep = slurp(w / "rep.csv");
  EXPECT_EQ(rep, r.out);
  EXPECT_EQ(rep.rfind("site,predictor,rmse_wh_m2,nrmse_pct,nrmse_ci95_pct,cc,n,step,period\n", 0),
            0u);
  const auto ann = rep.find("\nbastia,ann_relocated,");
  const auto pers = rep.find("\nbastia,persistence,");
  EXPECT_NE(ann, std::string::npos);
  EXPECT_NE(pers, std::string::npos);
  EXPECT_LT(ann, pers);
  EXPECT_EQ(slurp(w / "fc.csv").rfind("timestamp,measured_wh_m2,predicted_wh_m2,predictor\n", 0),
            0u);
}

TEST_F(CliTest, EvaluateWithoutModelNeedsPersistenceOnly) {
  const Workspace& w = *ws;
  EXPECT_EQ(run_cli({"evaluate", "--series", w / "b.csv", "--site", w / "bastia.json",
                     "--predictors", "ann,persistence"})
                .code,
            2);
  EXPECT_EQ(run_cli({"evaluate", "--series", w / "b.csv", "--site", w / "bastia.json",
                     "--predictors", "persistence", "--step", "hourly"})
                .code,
            0);
}

TEST_F(CliTest, PersistenceOnConstantSeriesHasZeroRmse) {
  const Workspace& w = *ws;
  {
    std::ofstream f(w / "const.csv");
    f << "timestamp,ghi_wh_m2\n";
    for (int d = 1; d <= 60; ++d) {
      f << "2020-" << (d <= 31 ? "01-" : "02-") << (d <= 31 ? d : d - 31) / 10
        << (d <= 31 ? d : d - 31) % 10 << ",3000\n";
    }
  }
  const auto r = run_cli({"evaluate", "--series", w / "const.csv", "--site",
                          w / "ajaccio.json", "--step", "daily", "--predictors",
                          "persistence"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\najaccio,persistence,0,0,0,nan,52,daily,"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, PvEchoesPlantAndWritesEnergyCsv) {
  const Workspace& w = *ws;
  const auto r = run_cli({"pv", "--model", w / "model.json", "--series", w / "a.csv",
                          "--site", w / "ajaccio.json", "--plant", w / "plant.json",
                          "--from", "2001-06-01", "--out", w / "pv.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.out.rfind("plant ", 0), 0u) << r.out;
  const auto echoed = relocast::plant_from_json(r.out.substr(6, r.out.find("\n}") + 2 - 6));
  EXPECT_EQ(echoed, relocast::load_plant(w / "plant.json"));
  EXPECT_EQ(echoed.tilt_deg, 80.0);
  EXPECT_EQ(echoed.azimuth_deg, 0.0);
  EXPECT_EQ(echoed.efficiency, 0.13);
  EXPECT_EQ(echoed.surface_m2, 10.125);
  EXPECT_EQ(slurp(w / "pv.csv").rfind("timestamp,predicted_wh,measured_wh\n", 0), 0u);
  EXPECT_NE(r.out.find("ajaccio/pv,ann_local,"), std::string::npos) << r.out;
}

TEST_F(CliTest, NegativeEfficiencyNamesField) {
  const Workspace& w = *ws;
  {
    std::ofstream f(w / "bad_plant.json");
    f << R"({"tilt_deg": 80, "azimuth_deg": 0, "efficiency": -0.13,
             "surface_m2": 10.125, "nominal_power_kw": 1.175})";
  }
  const auto r = run_cli({"pv", "--model", w / "model.json", "--series", w / "a.csv",
                          "--site", w / "ajaccio.json", "--plant", w / "bad_plant.json",
                          "--out", w / "pv_bad.csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("efficiency"), std::string::npos) << r.err;
}

TEST_F(CliTest, RuntimeFailuresExitOne) {
  const Workspace& w = *ws;
  EXPECT_EQ(run_cli({"evaluate", "--series", w / "missing.csv", "--site",
                     w / "bastia.json", "--predictors", "persistence", "--step",
                     "hourly"})
                .code,
            1);
  {
    std::ofstream f(w / "neg.csv");
    f << "timestamp,ghi_wh_m2\n2020-01-01T10:00,-5\n";
  }
  const auto r = run_cli({"stationarize", "--series", w / "neg.csv", "--site",
                          w / "ajaccio.json", "--step", "hourly", "--out", w / "st.csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, StationarizeDumpsRatios) {
  const Workspace& w = *ws;
  const auto r = run_cli({"stationarize", "--series", w / "b.csv", "--site",
                          w / "bastia.json", "--step", "hourly", "--out", w / "st.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(w / "st.csv").rfind("timestamp,ratio,daylight\n", 0), 0u);
}
