#include "parcv/splits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace parcv {

std::string describe(const Test& test, const Schema& schema) {
  const auto& attribute = schema.attribute(test.attribute);
  if (test.kind == AttributeKind::Discrete) return attribute.name;
  std::ostringstream out;
  out.precision(17);
  out << attribute.name << " < " << test.threshold;
  return out.str();
}

ThresholdGrid::ThresholdGrid(const Dataset& dataset) : grid_(dataset.schema().num_attributes()) {
  for (std::size_t a = 0; a < grid_.size(); ++a) {
    if (dataset.schema().attribute(a).kind != AttributeKind::Numeric) continue;
    auto column = dataset.column(a);
    std::vector<double> values(column.begin(), column.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
      double lo = values[i - 1], hi = values[i];
      double mid = 0.5 * (lo + hi);
      // Adjacent doubles can round the midpoint onto lo; hi still separates them.
      if (!(mid > lo)) mid = hi;
      grid_[a].push_back(mid);
    }
  }
}

std::vector<Test> enumerate_tests(const Dataset& dataset, const ThresholdGrid& grid,
                                  std::span<const std::size_t> node_examples) {
  if (node_examples.empty()) throw std::invalid_argument("enumerate_tests needs a non-empty example set");
  const auto& schema = dataset.schema();
  std::vector<Test> tests;
  for (std::size_t a = 0; a < schema.num_attributes(); ++a) {
    const auto& attribute = schema.attribute(a);
    if (attribute.kind == AttributeKind::Discrete) {
      tests.push_back(Test{a, AttributeKind::Discrete, 0.0, attribute.domain.size()});
      continue;
    }
    auto column = dataset.column(a);
    double lo = column[node_examples[0]], hi = lo;
    for (std::size_t e : node_examples) {
      lo = std::min(lo, column[e]);
      hi = std::max(hi, column[e]);
    }
    auto thresholds = grid.thresholds(a);
    auto first = std::upper_bound(thresholds.begin(), thresholds.end(), lo);
    auto last = std::upper_bound(thresholds.begin(), thresholds.end(), hi);
    for (auto it = first; it != last; ++it) tests.push_back(Test{a, AttributeKind::Numeric, *it, 2});
  }
  return tests;
}

StatisticsMatrix StatisticsMatrix::for_classes(std::size_t outcomes, std::size_t classes) {
  StatisticsMatrix s;
  s.kind_ = TargetKind::Class;
  s.outcomes_ = outcomes;
  s.classes_ = classes;
  s.counts_.assign(outcomes * classes, 0);
  return s;
}

StatisticsMatrix StatisticsMatrix::for_numeric(std::size_t outcomes) {
  StatisticsMatrix s;
  s.kind_ = TargetKind::Numeric;
  s.outcomes_ = outcomes;
  s.classes_ = 1;
  s.counts_.assign(outcomes, 0);
  s.sums_.assign(2 * outcomes, 0.0);
  return s;
}

std::int64_t StatisticsMatrix::outcome_count(std::size_t outcome) const {
  std::int64_t total = 0;
  for (std::size_t c = 0; c < classes_; ++c) total += counts_[outcome * classes_ + c];
  return total;
}

std::int64_t StatisticsMatrix::total() const {
  std::int64_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

std::int64_t StatisticsMatrix::class_total(std::size_t cls) const {
  std::int64_t total = 0;
  for (std::size_t o = 0; o < outcomes_; ++o) total += counts_[o * classes_ + cls];
  return total;
}

StatisticsMatrix& StatisticsMatrix::operator+=(const StatisticsMatrix& other) {
  if (!same_shape(other)) throw std::invalid_argument("statistics matrices differ in shape");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] += other.sums_[i];
  return *this;
}

StatisticsMatrix& StatisticsMatrix::operator-=(const StatisticsMatrix& other) {
  if (!same_shape(other)) throw std::invalid_argument("statistics matrices differ in shape");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= other.counts_[i];
  for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] -= other.sums_[i];
  return *this;
}

StatisticsMatrix operator+(StatisticsMatrix lhs, const StatisticsMatrix& rhs) { return lhs += rhs; }
StatisticsMatrix operator-(StatisticsMatrix lhs, const StatisticsMatrix& rhs) { return lhs -= rhs; }

void update_statistics(StatisticsMatrix& statistics, std::size_t outcome, double target) {
  if (outcome >= statistics.outcomes()) throw std::out_of_range("test outcome outside the matrix");
  if (statistics.kind() == TargetKind::Numeric) {
    statistics.add_value(outcome, target);
    return;
  }
  if (target < 0 || static_cast<std::size_t>(target) >= statistics.classes())
    throw std::out_of_range("class code outside the matrix");
  statistics.add_class(outcome, static_cast<std::size_t>(target));
}

StatisticsMatrix empty_statistics(const Schema& schema, std::size_t outcomes) {
  return schema.target_kind() == TargetKind::Class ? StatisticsMatrix::for_classes(outcomes, schema.num_classes())
                                                   : StatisticsMatrix::for_numeric(outcomes);
}

FoldStatistics accumulate_fold_statistics(const Dataset& dataset, const FoldAssignment& folds,
                                          std::span<const std::size_t> node_examples, std::span<const Test> tests,
                                          Counters& counters) {
  if (folds.size() != dataset.size()) throw std::invalid_argument("fold assignment does not match the dataset size");
  const int n = folds.folds();
  FoldStatistics result(tests.size());
  const bool numeric = dataset.schema().target_kind() == TargetKind::Numeric;
  for (std::size_t t = 0; t < tests.size(); ++t) {
    result[t].assign(n + 1, empty_statistics(dataset.schema(), tests[t].arity));
    const auto column = dataset.column(tests[t].attribute);
    for (std::size_t e : node_examples) {
      if (e >= dataset.size()) throw std::out_of_range("example index outside the dataset");
      auto& part = result[t][folds.fold_of(e)];
      std::size_t outcome = tests[t].outcome_of(column[e]);
      if (numeric)
        part.add_value(outcome, dataset.target(e));
      else
        part.add_class(outcome, dataset.class_of(e));
    }
  }
  counters.evaluations += tests.size() * node_examples.size();
  return result;
}

std::vector<StatisticsMatrix> derive_training_statistics(std::span<const StatisticsMatrix> parts) {
  if (parts.size() < 2) throw std::invalid_argument("need the placeholder plus at least one fold part");
  StatisticsMatrix all = parts[1];
  for (std::size_t k = 2; k < parts.size(); ++k) {
    if (!parts[k].same_shape(all)) throw std::invalid_argument("fold-part statistics differ in shape");
    all += parts[k];
  }
  std::vector<StatisticsMatrix> training;
  training.reserve(parts.size());
  training.push_back(all);
  for (std::size_t i = 1; i < parts.size(); ++i) training.push_back(all - parts[i]);
  return training;
}

FoldStatistics derive_training_statistics(const FoldStatistics& per_part) {
  FoldStatistics result;
  result.reserve(per_part.size());
  for (const auto& parts : per_part) result.push_back(derive_training_statistics(std::span(parts)));
  return result;
}

StatisticsMatrix accumulate_statistics(const Dataset& dataset, std::span<const std::size_t> examples, const Test& test) {
  auto statistics = empty_statistics(dataset.schema(), test.arity);
  for (std::size_t e : examples) update_statistics(statistics, test.outcome(dataset, e), dataset.target(e));
  return statistics;
}

Measure parse_measure(const std::string& name) {
  if (name == "gain") return Measure::InformationGain;
  if (name == "gainratio") return Measure::GainRatio;
  if (name == "variance") return Measure::VarianceReduction;
  throw std::invalid_argument("unknown quality measure '" + name + "'");
}

std::string to_string(Measure measure) {
  switch (measure) {
    case Measure::InformationGain: return "gain";
    case Measure::GainRatio: return "gainratio";
    case Measure::VarianceReduction: return "variance";
  }
  return "?";
}

bool measure_fits(Measure measure, TargetKind kind) {
  return (measure == Measure::VarianceReduction) == (kind == TargetKind::Numeric);
}

double entropy_bits(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double variance(double sum_sq, double sum, std::int64_t count) {
  if (count == 0) return 0.0;
  double n = static_cast<double>(count);
  double mean = sum / n;
  return sum_sq / n - mean * mean;
}

namespace {

double information_gain(const StatisticsMatrix& s, double& split_info) {
  const std::size_t classes = s.classes();
  std::vector<std::int64_t> marginal(classes, 0), row(classes), outcome_totals(s.outcomes());
  for (std::size_t o = 0; o < s.outcomes(); ++o)
    for (std::size_t c = 0; c < classes; ++c) marginal[c] += s.count(o, c);
  const double total = static_cast<double>(s.total());
  double conditional = 0.0;
  for (std::size_t o = 0; o < s.outcomes(); ++o) {
    for (std::size_t c = 0; c < classes; ++c) row[c] = s.count(o, c);
    outcome_totals[o] = s.outcome_count(o);
    if (outcome_totals[o] == 0) continue;
    conditional += static_cast<double>(outcome_totals[o]) / total * entropy_bits(row);
  }
  split_info = entropy_bits(outcome_totals);
  return std::max(0.0, entropy_bits(marginal) - conditional);
}

double variance_reduction(const StatisticsMatrix& s) {
  double all_sq = 0.0, all_sum = 0.0;
  std::int64_t all_count = 0;
  for (std::size_t o = 0; o < s.outcomes(); ++o) {
    all_sq += s.sum_sq(o);
    all_sum += s.sum(o);
    all_count += s.outcome_count(o);
  }
  double within = 0.0;
  for (std::size_t o = 0; o < s.outcomes(); ++o) {
    std::int64_t c = s.outcome_count(o);
    if (c == 0) continue;
    within += static_cast<double>(c) / static_cast<double>(all_count) * variance(s.sum_sq(o), s.sum(o), c);
  }
  return variance(all_sq, all_sum, all_count) - within;
}

}  // namespace

double compute_quality(const StatisticsMatrix& statistics, Measure measure) {
  if (statistics.total() <= 0) throw std::invalid_argument("cannot score a test on an empty example set");
  if (!measure_fits(measure, statistics.kind()))
    throw std::invalid_argument("measure '" + to_string(measure) + "' does not fit the target kind");
  double split_info = 0.0;
  switch (measure) {
    case Measure::InformationGain: return information_gain(statistics, split_info);
    case Measure::GainRatio: {
      double gain = information_gain(statistics, split_info);
      return split_info > 0.0 ? gain / split_info : 0.0;
    }
    case Measure::VarianceReduction: return variance_reduction(statistics);
  }
  return 0.0;
}

StopInputs stop_inputs(const StatisticsMatrix& marginal) {
  StopInputs inputs;
  inputs.count = marginal.total();
  if (inputs.count == 0) {
    inputs.pure = true;
    return inputs;
  }
  if (marginal.kind() == TargetKind::Class) {
    std::size_t nonzero = 0;
    for (std::size_t c = 0; c < marginal.classes(); ++c) nonzero += marginal.class_total(c) > 0 ? 1 : 0;
    inputs.pure = nonzero <= 1;
  } else {
    double sq = 0.0, sum = 0.0;
    for (std::size_t o = 0; o < marginal.outcomes(); ++o) {
      sq += marginal.sum_sq(o);
      sum += marginal.sum(o);
    }
    double mean = sum / static_cast<double>(inputs.count);
    inputs.pure = variance(sq, sum, inputs.count) <= 1e-12 * std::max(1.0, mean * mean);
  }
  return inputs;
}

bool stops_before_tests(const StopInputs& inputs, std::size_t min_examples) {
  return inputs.pure || inputs.count < static_cast<std::int64_t>(min_examples);
}

Choice best_choice(std::span<const double> scores, const StopInputs& inputs, std::size_t min_examples) {
  if (stops_before_tests(inputs, min_examples)) return Choice::make_leaf();
  auto top = std::max_element(scores.begin(), scores.end());
  if (top == scores.end() || !(*top > kMinUsefulScore)) return Choice::make_leaf();
  const double floor = *top - kTieTolerance * std::abs(*top);
  for (std::size_t t = 0; t < scores.size(); ++t)
    if (scores[t] >= floor) return Choice::split(t);
  return Choice::split(static_cast<std::size_t>(top - scores.begin()));
}

std::vector<Choice> best_choice_per_fold(const QualityTable& quality, std::span<const StopInputs> inputs,
                                         std::size_t min_examples) {
  if (inputs.size() != quality.scores.size()) throw std::invalid_argument("one stop input per quality row required");
  std::vector<Choice> choices;
  choices.reserve(inputs.size());
  for (std::size_t row = 0; row < inputs.size(); ++row)
    choices.push_back(best_choice(quality.scores[row], inputs[row], min_examples));
  return choices;
}

}  // namespace parcv
