#include "parcv/evaluation.hpp"

#include <ostream>
#include <stdexcept>

namespace parcv {

double predict(const Tree& tree, std::span<const double> attribute_values) {
  if (attribute_values.size() != tree.schema().num_attributes())
    throw std::invalid_argument("example has " + std::to_string(attribute_values.size()) + " values, schema expects " +
                                std::to_string(tree.schema().num_attributes()));
  if (tree.size() == 0) throw std::invalid_argument("cannot predict with an empty tree");
  std::size_t id = 0;
  while (true) {
    const auto& node = tree.node(id);
    if (!node.test)
      return node.leaf.kind == TargetKind::Class ? static_cast<double>(node.leaf.majority) : node.leaf.mean;
    const double value = attribute_values[node.test->attribute];
    if (node.test->kind == AttributeKind::Discrete &&
        (value < 0 || static_cast<std::size_t>(value) >= node.test->arity))
      throw std::invalid_argument("discrete value outside the test's domain");
    id = node.children[node.test->outcome_of(value)];
  }
}

double predict(const Tree& tree, const Dataset& dataset, std::size_t row) {
  if (!(dataset.schema() == tree.schema())) throw std::invalid_argument("dataset schema differs from the tree's schema");
  return predict(tree, dataset.row(row));
}

EvaluationReport cross_validation_estimate(std::span<const Tree> fold_trees, const Dataset& dataset,
                                           const FoldAssignment& folds) {
  if (folds.size() != dataset.size()) throw std::invalid_argument("fold assignment does not match the dataset size");
  if (fold_trees.size() != static_cast<std::size_t>(folds.folds()))
    throw std::invalid_argument("need exactly one tree per fold");
  const auto& schema = dataset.schema();
  EvaluationReport report;
  report.kind = schema.target_kind();
  report.examples = dataset.size();
  std::size_t correct = 0;
  double squared_error = 0.0;
  for (int i = 1; i <= folds.folds(); ++i) {
    const Tree& tree = fold_trees[i - 1];
    FoldEvaluation fold;
    fold.fold = i;
    if (report.kind == TargetKind::Class)
      fold.confusion.assign(schema.num_classes(), std::vector<std::size_t>(schema.num_classes(), 0));
    for (std::size_t e : folds.part(i)) {
      double predicted = predict(tree, dataset, e);
      ++fold.examples;
      if (report.kind == TargetKind::Class) {
        auto actual = dataset.class_of(e);
        auto guess = static_cast<std::size_t>(predicted);
        ++fold.confusion[actual][guess];
        fold.correct += actual == guess ? 1 : 0;
      } else {
        double diff = predicted - dataset.target(e);
        fold.squared_error += diff * diff;
      }
    }
    if (fold.examples > 0) {
      fold.accuracy = static_cast<double>(fold.correct) / static_cast<double>(fold.examples);
      fold.mse = fold.squared_error / static_cast<double>(fold.examples);
    }
    correct += fold.correct;
    squared_error += fold.squared_error;
    report.folds.push_back(std::move(fold));
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(report.examples);
  report.mse = squared_error / static_cast<double>(report.examples);
  return report;
}

EvaluationReport cross_validation_estimate(const Forest& forest, const Dataset& dataset, const FoldAssignment& folds) {
  if (!(forest.fold_assignment() == folds)) throw std::invalid_argument("forest was built with a different fold assignment");
  if (!(forest.schema() == dataset.schema())) throw std::invalid_argument("forest schema differs from the dataset schema");
  std::vector<Tree> trees;
  for (int i = 1; i <= folds.folds(); ++i) trees.push_back(extract_fold_tree(forest, i));
  return cross_validation_estimate(std::span<const Tree>(trees), dataset, folds);
}

ordered_json to_json(const EvaluationReport& report, const Schema& schema) {
  ordered_json j;
  const bool classes = report.kind == TargetKind::Class;
  j["target"] = schema.target().name;
  j["examples"] = report.examples;
  if (classes)
    j["accuracy"] = report.accuracy;
  else
    j["mse"] = report.mse;
  j["folds"] = ordered_json::array();
  for (const auto& fold : report.folds) {
    ordered_json f;
    f["fold"] = fold.fold;
    f["examples"] = fold.examples;
    if (classes) {
      f["correct"] = fold.correct;
      f["accuracy"] = fold.accuracy;
      f["confusion"] = fold.confusion;
    } else {
      f["squared_error"] = fold.squared_error;
      f["mse"] = fold.mse;
    }
    j["folds"].push_back(std::move(f));
  }
  return j;
}

void write_csv(std::ostream& out, const EvaluationReport& report) {
  const bool classes = report.kind == TargetKind::Class;
  out << (classes ? "fold,examples,correct,accuracy\n" : "fold,examples,squared_error,mse\n");
  auto precision = out.precision(17);
  for (const auto& fold : report.folds) {
    out << fold.fold << ',' << fold.examples << ',';
    if (classes)
      out << fold.correct << ',' << fold.accuracy << '\n';
    else
      out << fold.squared_error << ',' << fold.mse << '\n';
  }
  out << "all," << report.examples << ',';
  if (classes) {
    std::size_t correct = 0;
    for (const auto& fold : report.folds) correct += fold.correct;
    out << correct << ',' << report.accuracy << '\n';
  } else {
    double se = 0.0;
    for (const auto& fold : report.folds) se += fold.squared_error;
    out << se << ',' << report.mse << '\n';
  }
  out.precision(precision);
}

}  // namespace parcv
