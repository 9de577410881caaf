#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "relocast/error.hpp"
#include "relocast/synth.hpp"

using namespace relocast;
using namespace std::chrono_literals;

namespace {

const SiteConfig kAjaccio{"ajaccio", 41.917, 8.8, 0.0, 1.0};
const SiteConfig kLille{"lille", 50.63, 3.06, 0.0, 1.0};

}  // namespace

TEST(Generate, NoiselessEqualsClearSky) {
  const auto s = generate(kAjaccio, make_date(2020, 1, 1), 1, CloudParams{0.9, 0.0, 1.0}, 3);
  ASSERT_EQ(s.size(), 366u * 24u);
  EXPECT_EQ(s.start(), make_timestamp(2020, 1, 1));
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(*s[i], clear_sky_ghi(kAjaccio, s.timestamp(i) + 30min));
  }
}

TEST(Generate, NoiselessMatchesIndependentClearSky) {
  const auto s = generate(kAjaccio, make_date(2021, 1, 1), 1, CloudParams{0.9, 0.0, 1.0}, 3);
  for (std::size_t i = 0; i < s.size(); i += 7) {
    const int n = static_cast<int>(i / 24) + 1;
    const double ref = oracle::clear_sky_ghi(kAjaccio, n, (i % 24) + 0.5);
    EXPECT_NEAR(*s[i], ref, 1e-9 * std::max(1.0, ref));
  }
}

TEST(Generate, DeterministicPerSeed) {
  const CloudParams c{};
  const auto a = generate(kAjaccio, make_date(2020, 1, 1), 1, c, 17);
  EXPECT_EQ(a, generate(kAjaccio, make_date(2020, 1, 1), 1, c, 17));
  EXPECT_NE(a.values(), generate(kAjaccio, make_date(2020, 1, 1), 1, c, 18).values());
}

TEST(Generate, LagOneAutocorrelationOfAttenuation) {
  const auto s = generate(kAjaccio, make_date(2000, 1, 1), 5, CloudParams{0.9, 0.1, 0.6}, 21);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double cs = clear_sky_ghi(kAjaccio, s.timestamp(i) + 30min);
    if (cs > 0.0) ratios.push_back(*s[i] / cs);
  }
  const double r1 = oracle::autocorrelation(ratios, 1);
  EXPECT_GE(r1, 0.8);
  EXPECT_LE(r1, 0.95);
}

TEST(Generate, BoundsAndNightZeroAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = generate(kAjaccio, make_date(2000, 1, 1), 1, CloudParams{0.7, 0.4, 0.8}, seed);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double cs = clear_sky_ghi(kAjaccio, s.timestamp(i) + 30min);
      ASSERT_TRUE(s[i]);
      EXPECT_LE(*s[i], kMaxHourlyWhM2);
      if (cs == 0.0) {
        EXPECT_EQ(*s[i], 0.0);
      } else {
        EXPECT_GE(*s[i], kMinAttenuation * cs * (1 - 1e-12));
        EXPECT_LE(*s[i], cs * (1 + 1e-12));
      }
    }
  }
}

TEST(Generate, LatitudeEntersTheSeries) {
  const CloudParams c{};
  EXPECT_NE(generate(kAjaccio, make_date(2020, 1, 1), 1, c, 4).values(),
            generate(kLille, make_date(2020, 1, 1), 1, c, 4).values());
}

TEST(Generate, InvalidParams) {
  EXPECT_THROW(generate(kAjaccio, make_date(2020, 1, 1), 0, CloudParams{}, 1),
               ValidationError);
  EXPECT_THROW(generate(kAjaccio, make_date(2020, 1, 1), 1, CloudParams{1.0, 0.1, 0.6}, 1),
               ValidationError);
  EXPECT_THROW(generate(kAjaccio, make_date(2020, 1, 1), 1, CloudParams{0.9, -0.1, 0.6}, 1),
               ValidationError);
  EXPECT_THROW(generate(kAjaccio, make_date(2020, 1, 1), 1, CloudParams{0.9, 0.1, 0.0}, 1),
               ValidationError);
}

TEST(Aggregate, Examples) {
  std::vector<Sample> v(48, 0.0);
  for (std::size_t i = 24; i < 48; ++i) v[i] = 1.0;
  const auto d = aggregate_daily(
      IrradiationSeries(kAjaccio, Step::Hourly, make_timestamp(2020, 1, 1), v));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.step(), Step::Daily);
  EXPECT_EQ(*d[0], 0.0);
  EXPECT_EQ(*d[1], 24.0);
}

TEST(Aggregate, GapDayPropagates) {
  std::vector<Sample> v(48, 1.0);
  v[30] = std::nullopt;
  const auto d = aggregate_daily(
      IrradiationSeries(kAjaccio, Step::Hourly, make_timestamp(2020, 1, 1), v));
  EXPECT_EQ(*d[0], 24.0);
  EXPECT_FALSE(d[1]);
}

TEST(Aggregate, PartialDayRejected) {
  EXPECT_THROW(aggregate_daily(IrradiationSeries(kAjaccio, Step::Hourly,
                                                 make_timestamp(2020, 1, 1),
                                                 std::vector<Sample>(30, 1.0))),
               ValidationError);
  EXPECT_THROW(aggregate_daily(IrradiationSeries(kAjaccio, Step::Hourly,
                                                 make_timestamp(2020, 1, 1, 5),
                                                 std::vector<Sample>(24, 1.0))),
               ValidationError);
}

TEST(Aggregate, YearMatchesBruteForceSums) {
  const auto h = generate(kAjaccio, make_date(2019, 1, 1), 1, CloudParams{}, 9);
  const auto d = aggregate_daily(h);
  ASSERT_EQ(d.size(), 365u);
  for (std::size_t day = 0; day < d.size(); ++day) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 24; ++k) sum += *h[day * 24 + k];
    EXPECT_NEAR(*d[day], sum, 1e-9 * std::max(1.0, sum));
    EXPECT_EQ(d.timestamp(day), h.timestamp(day * 24));
  }
}
