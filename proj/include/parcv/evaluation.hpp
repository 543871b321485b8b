#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "parcv/data.hpp"
#include "parcv/forest.hpp"

namespace parcv {

// Leaf majority class code, or leaf mean for numeric targets.
double predict(const Tree& tree, std::span<const double> attribute_values);
double predict(const Tree& tree, const Dataset& dataset, std::size_t row);

struct FoldEvaluation {
  int fold = 0;
  std::size_t examples = 0;  // |D_i|
  std::size_t correct = 0;   // class targets
  double accuracy = 0.0;     // class targets
  double squared_error = 0.0;  // numeric targets
  double mse = 0.0;            // numeric targets
  std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]

  bool operator==(const FoldEvaluation&) const = default;
};

struct EvaluationReport {
  TargetKind kind = TargetKind::Class;
  std::vector<FoldEvaluation> folds;  // folds 1..n in order
  std::size_t examples = 0;
  double accuracy = 0.0;  // sum of correct / N
  double mse = 0.0;       // sum of squared error / N

  bool operator==(const EvaluationReport&) const = default;
};

// Evaluates fold i's tree on D_i only. Throws std::invalid_argument when the
// forest was built with a different fold assignment or schema.
EvaluationReport cross_validation_estimate(const Forest& forest, const Dataset& dataset, const FoldAssignment& folds);
// Same estimate from independently built trees; fold_trees[i - 1] belongs to fold i.
EvaluationReport cross_validation_estimate(std::span<const Tree> fold_trees, const Dataset& dataset,
                                           const FoldAssignment& folds);

ordered_json to_json(const EvaluationReport& report, const Schema& schema);
void write_csv(std::ostream& out, const EvaluationReport& report);

}  // namespace parcv
