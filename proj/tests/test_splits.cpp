#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "parcv/splits.hpp"
#include "test_util.hpp"

using namespace parcv;
using parcv::testing::all_rows;
using parcv::testing::parse_csv;

namespace {

// Entropy in bits from a class histogram, in extended precision.
long double entropy_oracle(std::initializer_list<long double> counts) {
  long double total = 0;
  for (auto c : counts) total += c;
  long double h = 0;
  for (auto c : counts)
    if (c > 0) h -= (c / total) * std::log2(c / total);
  return h;
}

StatisticsMatrix classes_matrix(std::size_t outcomes, std::size_t classes,
                                std::initializer_list<std::int64_t> cells) {
  auto m = StatisticsMatrix::for_classes(outcomes, classes);
  auto raw = m.raw_counts();
  std::copy(cells.begin(), cells.end(), raw.begin());
  return m;
}

}  // namespace

TEST(EnumerateTests, DiscreteAttributeGivesOneTestOfItsArity) {
  auto d = parse_csv("A,class\na,pos\nb,neg\nc,pos\n");
  ThresholdGrid grid(d);
  auto tests = enumerate_tests(d, grid, all_rows(d));
  ASSERT_EQ(tests.size(), 1u);
  EXPECT_EQ(tests[0].kind, AttributeKind::Discrete);
  EXPECT_EQ(tests[0].arity, 3u);
}

TEST(EnumerateTests, NumericMidpoints) {
  auto d = parse_csv("A,class\n7,pos\n1,neg\n3,pos\n3,neg\n");
  ThresholdGrid grid(d);
  auto tests = enumerate_tests(d, grid, all_rows(d));
  ASSERT_EQ(tests.size(), 2u);
  EXPECT_DOUBLE_EQ(tests[0].threshold, 2.0);
  EXPECT_DOUBLE_EQ(tests[1].threshold, 5.0);
  EXPECT_EQ(tests[0].arity, 2u);
  EXPECT_EQ(tests[0].outcome_of(1.0), 0u);
  EXPECT_EQ(tests[0].outcome_of(2.0), 1u);
}

TEST(EnumerateTests, ConstantNumericGivesNoTests) {
  auto d = parse_csv("A,B,class\n4,x,pos\n4,y,neg\n");
  ThresholdGrid grid(d);
  auto tests = enumerate_tests(d, grid, all_rows(d));
  ASSERT_EQ(tests.size(), 1u);
  EXPECT_EQ(tests[0].attribute, 1u);
}

TEST(EnumerateTests, NodeKeepsOnlyThresholdsThatSplitIt) {
  auto d = parse_csv("A,class\n1,pos\n3,neg\n7,pos\n9,neg\n");
  ThresholdGrid grid(d);
  std::vector<std::size_t> node{1, 2};  // values 3 and 7
  auto tests = enumerate_tests(d, grid, node);
  ASSERT_EQ(tests.size(), 1u);
  EXPECT_DOUBLE_EQ(tests[0].threshold, 5.0);
}

TEST(UpdateStatistics, ClassIncrement) {
  auto m = StatisticsMatrix::for_classes(2, 2);
  update_statistics(m, 1, 1);
  EXPECT_EQ(m.count(1, 1), 1);
  EXPECT_EQ(m.total(), 1);
  EXPECT_THROW(update_statistics(m, 2, 0), std::out_of_range);
}

TEST(UpdateStatistics, NumericTriple) {
  auto m = StatisticsMatrix::for_numeric(1);
  for (double y : {1.0, 2.0, 3.0}) update_statistics(m, 0, y);
  EXPECT_DOUBLE_EQ(m.sum_sq(0), 14.0);
  EXPECT_DOUBLE_EQ(m.sum(0), 6.0);
  EXPECT_EQ(m.outcome_count(0), 3);
  update_statistics(m, 0, 2.0);
  EXPECT_DOUBLE_EQ(m.sum_sq(0), 18.0);
  EXPECT_DOUBLE_EQ(m.sum(0), 8.0);
  EXPECT_EQ(m.outcome_count(0), 4);
}

TEST(DeriveTrainingStatistics, ElementwiseSubtraction) {
  // Parts D_1 and D_2 with S(D) = [[3,1],[0,4]] and S(D_1) = [[1,0],[0,2]].
  std::vector<StatisticsMatrix> parts{StatisticsMatrix::for_classes(2, 2), classes_matrix(2, 2, {1, 0, 0, 2}),
                                      classes_matrix(2, 2, {2, 1, 0, 2})};
  auto training = derive_training_statistics(std::span<const StatisticsMatrix>(parts));
  EXPECT_EQ(training[0], classes_matrix(2, 2, {3, 1, 0, 4}));
  EXPECT_EQ(training[1], classes_matrix(2, 2, {2, 1, 0, 2}));
  EXPECT_EQ(training[2], classes_matrix(2, 2, {1, 0, 0, 2}));
}

TEST(DeriveTrainingStatistics, ShapeMismatchRejected) {
  std::vector<StatisticsMatrix> parts{StatisticsMatrix::for_classes(2, 2), StatisticsMatrix::for_classes(2, 2),
                                      StatisticsMatrix::for_classes(3, 2)};
  EXPECT_THROW(derive_training_statistics(std::span<const StatisticsMatrix>(parts)), std::invalid_argument);
}

TEST(ComputeQuality, GainExample) {
  auto m = classes_matrix(2, 2, {0, 3, 2, 1});  // (neg, pos) per outcome
  long double expected = entropy_oracle({4, 2}) - 0.5L * 0 - 0.5L * entropy_oracle({1, 2});
  EXPECT_NEAR(compute_quality(m, Measure::InformationGain), static_cast<double>(expected), 1e-12);
  EXPECT_NEAR(compute_quality(m, Measure::InformationGain), 0.4591, 5e-5);
}

TEST(ComputeQuality, PerfectSplitIsOneBit) {
  auto m = classes_matrix(2, 2, {4, 0, 0, 4});
  EXPECT_DOUBLE_EQ(compute_quality(m, Measure::InformationGain), 1.0);
  EXPECT_DOUBLE_EQ(compute_quality(m, Measure::GainRatio), 1.0);
}

TEST(ComputeQuality, VarianceOfSingleOutcome) {
  auto m = StatisticsMatrix::for_numeric(1);
  for (double y : {1.0, 2.0, 3.0}) update_statistics(m, 0, y);
  EXPECT_NEAR(variance(m.sum_sq(0), m.sum(0), m.outcome_count(0)), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(compute_quality(m, Measure::VarianceReduction), 0.0, 1e-15);
}

TEST(ComputeQuality, RejectsEmptyOrMismatchedMeasure) {
  EXPECT_THROW(compute_quality(StatisticsMatrix::for_classes(2, 2), Measure::InformationGain), std::invalid_argument);
  auto m = StatisticsMatrix::for_numeric(2);
  update_statistics(m, 0, 1.0);
  EXPECT_THROW(compute_quality(m, Measure::InformationGain), std::invalid_argument);
}

TEST(BestChoice, TiesGoToLowestId) {
  StopInputs inputs{10, false};
  std::vector<double> scores{0.2, 0.5, 0.5, 0.1};
  EXPECT_EQ(best_choice(scores, inputs, 2), Choice::split(1));
}

TEST(BestChoice, StopsOnPurityCountAndUselessScores) {
  std::vector<double> scores{0.3};
  EXPECT_TRUE(best_choice(scores, StopInputs{10, true}, 2).is_leaf());
  EXPECT_TRUE(best_choice(scores, StopInputs{1, false}, 2).is_leaf());
  std::vector<double> zero{0.0, 0.0};
  EXPECT_TRUE(best_choice(zero, StopInputs{10, false}, 2).is_leaf());
}

TEST(BestChoice, UnanimousFolds) {
  QualityTable table;
  table.folds = {0, 1, 2};
  table.scores = {{0.1, 0.7}, {0.2, 0.6}, {0.0, 0.9}};
  std::vector<StopInputs> inputs(3, StopInputs{20, false});
  auto choices = best_choice_per_fold(table, inputs, 2);
  for (auto c : choices) EXPECT_EQ(c, Choice::split(1));
}

// Additivity and subtraction as properties over random example sets.
TEST(StatisticsProperties, AdditivityAndSubtractionMatchDirectAccumulation) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 20; ++round) {
    std::string numeric_csv = "A,B,y\n", class_csv = "A,B,y\n";
    std::uniform_int_distribution<int> value(0, 9);
    std::uniform_real_distribution<double> y(-5.0, 5.0);
    const int rows = 30 + round * 3;
    for (int r = 0; r < rows; ++r) {
      std::string prefix = std::to_string(value(rng)) + ",k" + std::to_string(value(rng) % 3) + ",";
      numeric_csv += prefix + std::to_string(y(rng)) + "\n";
      class_csv += prefix + "c" + std::to_string(value(rng) % 3) + "\n";
    }
    for (const std::string* text : {&numeric_csv, &class_csv}) {
      auto d = parse_csv(*text, "y");
      auto folds = assign_folds(d, 4, static_cast<std::uint64_t>(round));
      ThresholdGrid grid(d);
      auto rows_all = all_rows(d);
      auto tests = enumerate_tests(d, grid, rows_all);
      Counters counters;
      auto per_part = accumulate_fold_statistics(d, folds, rows_all, tests, counters);
      EXPECT_EQ(counters.evaluations, tests.size() * rows_all.size());
      auto training = derive_training_statistics(per_part);
      for (std::size_t t = 0; t < tests.size(); ++t) {
        for (int i = 0; i <= 4; ++i) {
          auto direct = accumulate_statistics(d, training_view(d, folds, i), tests[t]);
          ASSERT_TRUE(direct.same_shape(training[t][i]));
          auto a = direct.raw_counts();
          auto b = training[t][i].raw_counts();
          EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
          auto sa = direct.raw_sums();
          auto sb = training[t][i].raw_sums();
          for (std::size_t k = 0; k < sa.size(); ++k)
            EXPECT_LE(std::abs(sa[k] - sb[k]), 1e-9 * std::max(1.0, std::abs(sa[k])));
        }
      }
    }
  }
}

TEST(AccumulateFoldStatistics, SinglePartLeavesOthersEmpty) {
  auto d = parse_csv("A,class\n1,pos\n2,neg\n3,pos\n4,neg\n5,pos\n6,neg\n");
  auto folds = FoldAssignment(3, {1, 2, 3, 1, 2, 3});
  ThresholdGrid grid(d);
  std::vector<std::size_t> node{2, 5};  // both in D_3
  auto tests = enumerate_tests(d, grid, node);
  Counters counters;
  auto per_part = accumulate_fold_statistics(d, folds, node, tests, counters);
  for (std::size_t t = 0; t < tests.size(); ++t) {
    EXPECT_EQ(per_part[t][1].total(), 0);
    EXPECT_EQ(per_part[t][2].total(), 0);
    EXPECT_EQ(per_part[t][3].total(), 2);
  }
}
