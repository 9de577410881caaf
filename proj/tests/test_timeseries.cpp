#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "relocast/error.hpp"
#include "relocast/timeseries.hpp"

using namespace relocast;
namespace fs = std::filesystem;

namespace {

const SiteConfig kSite{"ajaccio", 41.917, 8.8, 0.0, 1.0};

class TimeseriesTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("relocast_ts_" + std::to_string(::testing::UnitTest::GetInstance()
                                               ->random_seed()) +
           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
};

IrradiationSeries random_series(std::mt19937_64& rng, Step step,
                                std::size_t n) {
  std::uniform_real_distribution<double> value(0.0, upper_bound_wh_m2(step));
  std::bernoulli_distribution gap(0.1);
  std::vector<Sample> v(n);
  for (auto& s : v) {
    if (!gap(rng)) s = value(rng);
  }
  const Timestamp start = step == Step::Hourly ? make_timestamp(2001, 2, 27, 21)
                                               : make_timestamp(2001, 2, 27);
  return IrradiationSeries(kSite, step, start, v);
}

}  // namespace

TEST_F(TimeseriesTest, LoadsMinimalHourlyFile) {
  const auto p = write("a.csv",
                       "timestamp,ghi_wh_m2\n2020-06-01T10:00,500\n"
                       "2020-06-01T11:00,612.5\n2020-06-01T12:00,\n");
  const auto s = load_csv(p, kSite, Step::Hourly);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.start(), make_timestamp(2020, 6, 1, 10));
  EXPECT_EQ(*s[1], 612.5);
  EXPECT_FALSE(s[2].has_value());
  EXPECT_EQ(s.timestamp(2), make_timestamp(2020, 6, 1, 12));
}

TEST_F(TimeseriesTest, NegativeValueNamesRow) {
  const auto p = write("neg.csv",
                       "timestamp,ghi_wh_m2\n2020-06-01T10:00,500\n"
                       "2020-06-01T11:00,-3\n");
  try {
    load_csv(p, kSite, Step::Hourly);
    FAIL() << "expected BoundError";
  } catch (const BoundError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
}

TEST_F(TimeseriesTest, UpperBoundsPerStep) {
  const auto hourly = write("h.csv", "timestamp,ghi_wh_m2\n2020-06-01T10:00,1414\n");
  EXPECT_THROW(load_csv(hourly, kSite, Step::Hourly), BoundError);
  const auto daily = write("d.csv", "timestamp,ghi_wh_m2\n2020-06-01,12000.5\n");
  EXPECT_THROW(load_csv(daily, kSite, Step::Daily), BoundError);
  const auto ok = write("ok.csv", "timestamp,ghi_wh_m2\n2020-06-01,12000\n");
  EXPECT_NO_THROW(load_csv(ok, kSite, Step::Daily));
}

TEST_F(TimeseriesTest, SkippedHourAsksForGap) {
  const auto p = write("skip.csv",
                       "timestamp,ghi_wh_m2\n2020-06-01T10:00,500\n"
                       "2020-06-01T12:00,400\n");
  try {
    load_csv(p, kSite, Step::Hourly);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("GAP"), std::string::npos) << msg;
  }
}

TEST_F(TimeseriesTest, RejectsMalformedInput) {
  EXPECT_THROW(load_csv(write("h.csv", "time,ghi\n"), kSite, Step::Hourly),
               ParseError);
  EXPECT_THROW(load_csv(write("t.csv", "timestamp,ghi_wh_m2\n2020-06-01,5\n"),
                        kSite, Step::Hourly),
               ParseError);
  EXPECT_THROW(load_csv(write("v.csv", "timestamp,ghi_wh_m2\n2020-06-01,1,5\n"),
                        kSite, Step::Daily),
               ParseError);
  EXPECT_THROW(load_csv(write("x.csv", "timestamp,ghi_wh_m2\n2020-06-01,abc\n"),
                        kSite, Step::Daily),
               ParseError);
  EXPECT_THROW(load_csv(write("e.csv", "timestamp,ghi_wh_m2\n"), kSite,
                        Step::Daily),
               ParseError);
  EXPECT_THROW(load_csv(dir / "missing.csv", kSite, Step::Daily), IoError);
}

TEST_F(TimeseriesTest, RoundTripIsIdentity) {
  std::mt19937_64 rng(17);
  for (Step step : {Step::Hourly, Step::Daily}) {
    for (int k = 0; k < 20; ++k) {
      const auto s = random_series(rng, step, 100 + k * 37);
      const auto p = dir / "rt.csv";
      write_csv(s, p);
      EXPECT_EQ(load_csv(p, kSite, step), s);
    }
  }
}

TEST_F(TimeseriesTest, RoundTripKeepsGaps) {
  IrradiationSeries s(kSite, Step::Daily, make_timestamp(2020, 1, 1),
                      {1.0, std::nullopt, 2.5, std::nullopt});
  write_csv(s, dir / "g.csv");
  const auto back = load_csv(dir / "g.csv", kSite, Step::Daily);
  EXPECT_FALSE(back[1].has_value());
  EXPECT_FALSE(back[3].has_value());
  EXPECT_EQ(back, s);
}

TEST_F(TimeseriesTest, StationarizedRoundTrip) {
  StationarizedSeries s(kSite, Step::Hourly, make_timestamp(2020, 1, 1),
                        {std::nullopt, 0.25, std::nullopt, 1.0 / 3.0},
                        {false, true, true, true});
  write_csv(s, dir / "st.csv");
  EXPECT_EQ(load_stationarized_csv(dir / "st.csv", kSite, Step::Hourly), s);
}

TEST_F(TimeseriesTest, WriteToUnwritablePathFails) {
  IrradiationSeries s(kSite, Step::Daily, make_timestamp(2020, 1, 1), {1.0});
  EXPECT_THROW(write_csv(s, dir / "no_such_dir" / "x.csv"), IoError);
}

TEST(Split, EightyTwenty) {
  IrradiationSeries s(kSite, Step::Daily, make_timestamp(2020, 1, 1),
                      std::vector<Sample>(100, 1.0));
  const auto [train, test] = split_train_test(s, 0.8);
  EXPECT_EQ(train.size(), 80u);
  EXPECT_EQ(test.size(), 20u);
  EXPECT_EQ(test.start(), s.timestamp(80));
}

TEST(Split, Halving) {
  IrradiationSeries s(kSite, Step::Daily, make_timestamp(2020, 1, 1),
                      std::vector<Sample>(10, 1.0));
  const auto [train, test] = split_train_test(s, 0.5);
  EXPECT_EQ(train.size(), 5u);
  EXPECT_EQ(test.size(), 5u);
}

TEST(Split, TooShort) {
  IrradiationSeries s(kSite, Step::Daily, make_timestamp(2020, 1, 1),
                      std::vector<Sample>(5, 1.0));
  EXPECT_THROW(split_train_test(s, 0.8), ValidationError);
  IrradiationSeries ok(kSite, Step::Daily, make_timestamp(2020, 1, 1),
                       std::vector<Sample>(20, 1.0));
  EXPECT_THROW(split_train_test(ok, 1.0), ValidationError);
}

TEST(Split, PartsConcatenateToOriginal) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_series(rng, Step::Hourly, 10 + k * 13);
    const double fraction = 0.05 + 0.9 * (k / 50.0);
    const auto [a, b] = split_train_test(s, fraction);
    std::vector<Sample> joined = a.values();
    joined.insert(joined.end(), b.values().begin(), b.values().end());
    EXPECT_EQ(joined, s.values());
    EXPECT_EQ(a.start(), s.start());
    EXPECT_EQ(b.start(), a.timestamp(a.size()));
  }
}

TEST(Timestamps, FormatParseRoundTrip) {
  const Timestamp t = make_timestamp(2024, 2, 29, 23, 0);
  EXPECT_EQ(format_timestamp(t, Step::Hourly), "2024-02-29T23:00");
  EXPECT_EQ(parse_timestamp("2024-02-29T23:00", Step::Hourly), t);
  EXPECT_FALSE(parse_timestamp("2023-02-29", Step::Daily));
  EXPECT_FALSE(parse_timestamp("2023-01-01T24:00", Step::Hourly));
  EXPECT_EQ(day_of_year(make_date(2024, 12, 31)), 366);
}

TEST(Series, RejectsMisalignedStart) {
  EXPECT_THROW(IrradiationSeries(kSite, Step::Daily, make_timestamp(2020, 1, 1, 6),
                                 {1.0}),
               ValidationError);
  EXPECT_THROW(IrradiationSeries(kSite, Step::Hourly,
                                 make_timestamp(2020, 1, 1, 6, 30), {1.0}),
               ValidationError);
}
