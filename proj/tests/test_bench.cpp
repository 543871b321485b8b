#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "parcv/bench.hpp"

using namespace parcv;

TEST(SpeedupBound, Examples) {
  EXPECT_DOUBLE_EQ(speedup_bound(10, 50, 1.0, 1.0).worst, 10.0);
  EXPECT_DOUBLE_EQ(speedup_bound(10, 5, 1.0, 1.0).worst, 6.0);
  EXPECT_DOUBLE_EQ(speedup_bound(10, 5, 1.0, 1.0).best, 10.0);
  EXPECT_NEAR(speedup_bound(10, 5, 1.0, 1e12).worst, 1.0, 1e-9);
}

TEST(SpeedupBound, RejectsNonPositiveInputs) {
  EXPECT_THROW(speedup_bound(1, 5, 1, 1), std::invalid_argument);
  EXPECT_THROW(speedup_bound(10, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(speedup_bound(10, 5, -1, 1), std::invalid_argument);
  EXPECT_THROW(speedup_bound(10, 5, 1, 0), std::invalid_argument);
}

TEST(Metrics, ReferenceTimingsRecomputed) {
  EXPECT_NEAR(overhead_percent(31, 2.6), 1092.3, 0.1);
  EXPECT_NEAR(overhead_percent(31, 2.6), 1100, 0.05 * 1100);
  EXPECT_NEAR(31 / 3.4, 9.2, 0.05 * 9.2);
  EXPECT_NEAR(overhead_percent(0.10, 0.028), 257.1, 0.1);
  EXPECT_NEAR(overhead_percent(0.10, 0.028), 260, 0.05 * 260);
}

TEST(TimingReport, DerivedFieldsRecomputeAndRoundTrip) {
  TimingReport report;
  report.n = 10;
  report.t_actual = 2.6;
  report.t_serial = 31;
  report.t_parallel = 3.4;
  report.serial_evaluations = 1000;
  report.parallel_evaluations = 100;
  report.counter_speedup = 10.0;
  report.recompute_derived();
  EXPECT_NEAR(*report.speedup, 31 / 3.4, 1e-12);
  EXPECT_NEAR(*report.overhead_serial, 100 * (31 / 2.6 - 1), 1e-9);
  EXPECT_NEAR(*report.overhead_parallel, 100 * (3.4 / 2.6 - 1), 1e-9);
  auto again = timing_report_from_json(to_json(report));
  EXPECT_EQ(again.speedup, report.speedup);
  EXPECT_EQ(again.serial_evaluations, report.serial_evaluations);
  EXPECT_EQ(to_json(again), to_json(report));
}

TEST(Synthetic, StableHasNoBifurcations) {
  auto d = generate_synthetic(Regime::Stable, 1000, 20, 3);
  InductionConfig config;
  auto forest = grow_forest(d, assign_folds(d, 10, 3), config);
  auto metrics = forest_metrics(forest);
  EXPECT_EQ(metrics.bifurcations, 0u);
  for (double f : metrics.f) EXPECT_DOUBLE_EQ(f, 1.0);
}

TEST(Synthetic, UnstableBifurcatesOnMostSeeds) {
  int bifurcating = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto d = generate_synthetic(Regime::Unstable, 200, 10, seed);
    InductionConfig config;
    auto metrics = forest_metrics(grow_forest(d, assign_folds(d, 10, seed), config));
    bifurcating += std::any_of(metrics.f.begin(), metrics.f.end(), [](double f) { return f > 1.0; }) ? 1 : 0;
  }
  EXPECT_GT(bifurcating, 10);
}

TEST(Synthetic, DeterministicPerSeed) {
  std::ostringstream a, b;
  write_dataset(a, generate_synthetic(Regime::Mixed, 100, 5, 9));
  write_dataset(b, generate_synthetic(Regime::Mixed, 100, 5, 9));
  EXPECT_EQ(a.str(), b.str());
}

TEST(MeasureTimings, StableRunObeysCounterLawAndReports) {
  auto d = generate_synthetic(Regime::Stable, 3000, 20, 5);
  InductionConfig config;
  config.folds = 5;
  BenchOptions options;
  options.repeats = 1;
  options.min_measurable_seconds = 0.0;
  auto report = measure_timings(d, config, options);
  ASSERT_TRUE(report.counter_speedup);
  EXPECT_DOUBLE_EQ(*report.counter_speedup, 5.0);
  ASSERT_TRUE(report.t_serial && report.t_parallel && report.speedup);
  EXPECT_GT(report.t_actual, 0.0);
  EXPECT_EQ(report.root_tests, 20u);
  ASSERT_TRUE(report.bound);
  EXPECT_LE(report.bound->worst, 5.0);
  EXPECT_FALSE(report.levels.empty());
  std::ostringstream csv;
  write_csv(csv, report);
  EXPECT_EQ(csv.str().rfind("n,N,a,", 0), 0u);
}

TEST(PerLevelProfile, DepthOneForestHasOneRow) {
  // A pure dataset: the root is a leaf for every fold.
  Dataset d(Schema({{"x0", AttributeKind::Discrete, {"0", "1"}}}, Target{"class", TargetKind::Class, {"neg", "pos"}}),
            {{0, 1, 0, 1, 1, 0}}, std::vector<double>(6, 1.0));
  InductionConfig config;
  config.folds = 2;
  auto forest = grow_forest(d, assign_folds(d, 2, 1), config);
  std::vector<double> serial{0.5};
  auto rows = per_level_profile(forest, serial);
  ASSERT_EQ(forest_metrics(forest).depth, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].f, 1.0);
}

TEST(PerLevelProfile, RootTestWithLeafChildrenIsTwoLevels) {
  auto d = generate_synthetic(Regime::Stable, 50, 1, 2);  // class = x0
  InductionConfig config;
  config.folds = 2;
  Counters counters;
  config.variant = Variant::LevelWise;
  auto forest = grow_forest(d, assign_folds(d, 2, 1), config, &counters);
  EXPECT_EQ(forest_metrics(forest).depth, 2);
  EXPECT_EQ(counters.data_passes, 2u);
  EXPECT_EQ(per_level_profile(forest, std::vector<double>{}).size(), 2u);
}
