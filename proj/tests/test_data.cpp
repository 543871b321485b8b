#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "parcv/data.hpp"
#include "test_util.hpp"

using namespace parcv;
using parcv::testing::parse_csv;

TEST(LoadDataset, ThreeRowFileInfersNumericAttributeAndClassTarget) {
  auto d = parse_csv("A,C\n1.5,yes\n2,no\n3,yes\n", "C");
  EXPECT_EQ(d.size(), 3u);
  ASSERT_EQ(d.schema().num_attributes(), 1u);
  EXPECT_EQ(d.schema().attribute(0).kind, AttributeKind::Numeric);
  EXPECT_EQ(d.schema().target_kind(), TargetKind::Class);
  EXPECT_EQ(d.schema().num_classes(), 2u);
  EXPECT_DOUBLE_EQ(d.value(0, 0), 1.5);
}

TEST(LoadDataset, EmptyCellNamesRowAndColumn) {
  try {
    parse_csv("A,B,class\n1,2,pos\n3,,neg\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    std::string message = e.what();
    EXPECT_NE(message.find("row 2"), std::string::npos) << message;
    EXPECT_NE(message.find("'B'"), std::string::npos) << message;
  }
}

TEST(LoadDataset, ForcedDiscreteKeepsObservedDomain) {
  std::istringstream in("V,class\n1,a\n2,b\nx,a\n");
  LoadOptions options;
  options.target = "class";
  options.forced_kinds["V"] = AttributeKind::Discrete;
  auto d = load_dataset(in, options);
  const auto& domain = d.schema().attribute(0).domain;
  EXPECT_EQ(domain, (std::vector<std::string>{"1", "2", "x"}));
}

TEST(LoadDataset, RejectsEmptyInputAndBadNumbers) {
  EXPECT_THROW(parse_csv(""), DataError);
  EXPECT_THROW(parse_csv("A,class\n"), DataError);
  std::istringstream in("A,class\n1,a\nzz,b\n");
  LoadOptions options;
  options.target = "class";
  options.forced_kinds["A"] = AttributeKind::Numeric;
  EXPECT_THROW(load_dataset(in, options), DataError);
  EXPECT_THROW(parse_csv("A,B\n1,2\n", "class"), DataError);
}

TEST(LoadDataset, NumericTargetAndRoundTrip) {
  auto d = parse_csv("A,y\n1,0.5\n2,1.5\n", "y");
  EXPECT_EQ(d.schema().target_kind(), TargetKind::Numeric);
  std::ostringstream out;
  write_dataset(out, d);
  auto again = parse_csv(out.str(), "y");
  EXPECT_EQ(again.schema(), d.schema());
  EXPECT_EQ(std::vector<double>(again.targets().begin(), again.targets().end()),
            std::vector<double>(d.targets().begin(), d.targets().end()));
}

namespace {
Dataset numbered(std::size_t rows, bool two_classes = true) {
  std::vector<double> column(rows), targets(rows);
  for (std::size_t e = 0; e < rows; ++e) {
    column[e] = static_cast<double>(e);
    targets[e] = two_classes ? static_cast<double>(e % 3 == 0) : 0.0;
  }
  return Dataset(Schema({{"A", AttributeKind::Numeric, {}}}, parcv::testing::classes()), {column}, targets);
}
}  // namespace

TEST(AssignFolds, TwelveExamplesThreeFolds) {
  auto d = numbered(12);
  auto folds = assign_folds(d, 3, 42);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(folds.part_size(i), 4u);
    EXPECT_EQ(training_view(d, folds, i).size(), 8u);
  }
}

TEST(AssignFolds, LeaveOneOutShape) {
  auto d = numbered(10);
  auto folds = assign_folds(d, 10, 7);
  for (int i = 1; i <= 10; ++i) EXPECT_EQ(folds.part_size(i), 1u);
}

TEST(AssignFolds, DeterministicForSeedAndVariesAcrossSeeds) {
  auto d = numbered(50);
  EXPECT_EQ(assign_folds(d, 5, 3), assign_folds(d, 5, 3));
  auto a = assign_folds(d, 5, 3), b = assign_folds(d, 5, 4);
  EXPECT_FALSE(std::equal(a.fold_map().begin(), a.fold_map().end(), b.fold_map().begin()));
}

TEST(AssignFolds, RejectsBadFoldCounts) {
  auto d = numbered(4);
  EXPECT_THROW(assign_folds(d, 5, 1), std::invalid_argument);
  EXPECT_THROW(assign_folds(d, 1, 1), std::invalid_argument);
}

TEST(AssignFolds, StratifiedBalancesClasses) {
  auto d = numbered(30);  // 10 pos, 20 neg
  auto folds = assign_folds(d, 5, 9, true);
  for (int i = 1; i <= 5; ++i) {
    std::size_t pos = 0;
    for (auto e : folds.part(i)) pos += d.class_of(e);
    EXPECT_EQ(pos, 2u);
    EXPECT_EQ(folds.part_size(i), 6u);
  }
}

TEST(TrainingView, FoldZeroAndHeldOutFold) {
  auto d = numbered(12);
  auto folds = assign_folds(d, 3, 5);
  EXPECT_EQ(training_view(d, folds, 0).size(), 12u);
  for (auto e : training_view(d, folds, 2)) EXPECT_NE(folds.fold_of(e), 2);
  EXPECT_THROW(training_view(d, folds, 4), std::out_of_range);
}

TEST(TrainingView, EachExampleTrainsInNMinusOneFolds) {
  for (int n : {2, 3, 5, 10}) {
    auto d = numbered(37);
    auto folds = assign_folds(d, n, 11);
    std::vector<int> count(d.size(), 0);
    for (int i = 1; i <= n; ++i)
      for (auto e : training_view(d, folds, i)) ++count[e];
    for (int c : count) EXPECT_EQ(c, n - 1);
  }
}
