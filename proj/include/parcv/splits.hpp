#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "parcv/data.hpp"
#include "parcv/instrumentation.hpp"

namespace parcv {

// A candidate test: the value of a discrete attribute (one outcome per domain
// value) or the comparison "attribute < threshold" (outcome 0 when true).
struct Test {
  std::size_t attribute = 0;
  AttributeKind kind = AttributeKind::Discrete;
  double threshold = 0.0;
  std::size_t arity = 2;

  std::size_t outcome_of(double value) const {
    return kind == AttributeKind::Discrete ? static_cast<std::size_t>(value) : (value < threshold ? 0 : 1);
  }
  std::size_t outcome(const Dataset& dataset, std::size_t row) const {
    return outcome_of(dataset.value(row, attribute));
  }

  bool operator==(const Test&) const = default;
};

std::string describe(const Test& test, const Schema& schema);

// Candidate thresholds per numeric attribute: midpoints between consecutive
// distinct values of the whole dataset, ascending. Every tree or forest built
// on a dataset draws its numeric tests from this one grid, so a threshold test
// means the same thing in every fold.
class ThresholdGrid {
 public:
  explicit ThresholdGrid(const Dataset& dataset);
  std::span<const double> thresholds(std::size_t attribute) const { return grid_.at(attribute); }

 private:
  std::vector<std::vector<double>> grid_;
};

// One test per discrete attribute, plus every grid threshold that splits the
// node's example set (min < c <= max). Order: schema order, thresholds ascending.
// The position in the returned list is the test id used for tie-breaking.
std::vector<Test> enumerate_tests(const Dataset& dataset, const ThresholdGrid& grid,
                                  std::span<const std::size_t> node_examples);

// Additive sufficient statistics of one test over one example set.
// Class targets: integer count per (outcome, class).
// Numeric targets: per outcome the triple (sum y^2, sum y, count).
class StatisticsMatrix {
 public:
  StatisticsMatrix() = default;
  static StatisticsMatrix for_classes(std::size_t outcomes, std::size_t classes);
  static StatisticsMatrix for_numeric(std::size_t outcomes);

  TargetKind kind() const { return kind_; }
  std::size_t outcomes() const { return outcomes_; }
  std::size_t classes() const { return classes_; }

  std::int64_t count(std::size_t outcome, std::size_t cls) const { return counts_[outcome * classes_ + cls]; }
  std::int64_t outcome_count(std::size_t outcome) const;
  std::int64_t total() const;
  std::int64_t class_total(std::size_t cls) const;
  double sum(std::size_t outcome) const { return sums_[2 * outcome + 1]; }
  double sum_sq(std::size_t outcome) const { return sums_[2 * outcome]; }

  // Unchecked single-cell increments used by the accumulation loops.
  void add_class(std::size_t outcome, std::size_t cls) { ++counts_[outcome * classes_ + cls]; }
  void add_value(std::size_t outcome, double y) {
    sums_[2 * outcome] += y * y;
    sums_[2 * outcome + 1] += y;
    ++counts_[outcome];
  }

  std::span<std::int64_t> raw_counts() { return counts_; }
  std::span<double> raw_sums() { return sums_; }
  std::span<const std::int64_t> raw_counts() const { return counts_; }
  std::span<const double> raw_sums() const { return sums_; }

  bool same_shape(const StatisticsMatrix& other) const {
    return kind_ == other.kind_ && outcomes_ == other.outcomes_ && classes_ == other.classes_;
  }
  StatisticsMatrix& operator+=(const StatisticsMatrix& other);
  StatisticsMatrix& operator-=(const StatisticsMatrix& other);
  bool operator==(const StatisticsMatrix&) const = default;

 private:
  TargetKind kind_ = TargetKind::Class;
  std::size_t outcomes_ = 0;
  std::size_t classes_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
};

StatisticsMatrix operator+(StatisticsMatrix lhs, const StatisticsMatrix& rhs);
StatisticsMatrix operator-(StatisticsMatrix lhs, const StatisticsMatrix& rhs);

// Checked single update: class code or numeric y depending on the matrix kind.
void update_statistics(StatisticsMatrix& statistics, std::size_t outcome, double target);

// Statistics of every test, split by fold part: result[t][k] holds S[D_k, t]
// for k in 1..n; result[t][0] stays empty (the virtual fold has no part).
using FoldStatistics = std::vector<std::vector<StatisticsMatrix>>;

StatisticsMatrix empty_statistics(const Schema& schema, std::size_t outcomes);

// Each example is evaluated once per test and counted in its own part only;
// counters.evaluations grows by tests.size() * node_examples.size().
FoldStatistics accumulate_fold_statistics(const Dataset& dataset, const FoldAssignment& folds,
                                          std::span<const std::size_t> node_examples, std::span<const Test> tests,
                                          Counters& counters);

// S[T_0] = sum_k S[D_k]; S[T_i] = S[T_0] - S[D_i]. Index 0 of `parts` is ignored.
std::vector<StatisticsMatrix> derive_training_statistics(std::span<const StatisticsMatrix> parts);
FoldStatistics derive_training_statistics(const FoldStatistics& per_part);

// Direct accumulation over an explicit example set (the oracle route and the
// serial builder's route).
StatisticsMatrix accumulate_statistics(const Dataset& dataset, std::span<const std::size_t> examples, const Test& test);

enum class Measure { InformationGain, GainRatio, VarianceReduction };

Measure parse_measure(const std::string& name);
std::string to_string(Measure measure);
bool measure_fits(Measure measure, TargetKind kind);

// Throws std::invalid_argument on an empty matrix or a measure that does not
// fit the target kind.
double compute_quality(const StatisticsMatrix& statistics, Measure measure);

double entropy_bits(std::span<const std::int64_t> counts);
double variance(double sum_sq, double sum, std::int64_t count);

// Scores at or below this are treated as "no useful split"; it absorbs
// rounding residue on splits whose true gain is zero.
inline constexpr double kMinUsefulScore = 1e-12;

// Scores within this relative distance of the best count as tied. Regression
// statistics reach a node by different summation orders in different
// builders, so mathematically equal scores may differ in the last bits.
inline constexpr double kTieTolerance = 1e-9;

struct Choice {
  static constexpr std::size_t kMakeLeaf = std::numeric_limits<std::size_t>::max();
  std::size_t test = kMakeLeaf;

  static Choice make_leaf() { return {}; }
  static Choice split(std::size_t id) { return {id}; }
  bool is_leaf() const { return test == kMakeLeaf; }
  bool operator==(const Choice&) const = default;
};

// What the stop criterion needs about one training set at a node.
struct StopInputs {
  std::int64_t count = 0;
  bool pure = false;
};

StopInputs stop_inputs(const StatisticsMatrix& marginal);
bool stops_before_tests(const StopInputs& inputs, std::size_t min_examples);

struct QualityTable {
  Measure measure = Measure::InformationGain;
  std::vector<int> folds;                  // row labels
  std::vector<std::vector<double>> scores;  // [row][test id]
};

// MAKE-LEAF when the slice is pure or smaller than min_examples or no score is
// useful; otherwise the argmax, ties (see kTieTolerance) to the lowest test id.
Choice best_choice(std::span<const double> scores, const StopInputs& inputs, std::size_t min_examples);
std::vector<Choice> best_choice_per_fold(const QualityTable& quality, std::span<const StopInputs> inputs,
                                         std::size_t min_examples);

}  // namespace parcv
