#include "parcv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "parcv/evaluation.hpp"

namespace parcv {

Dataset generate_random_dataset(std::uint64_t seed, bool numeric_target) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const auto examples = static_cast<std::size_t>(uniform(20, 200));
  const auto attribute_count = static_cast<std::size_t>(uniform(1, 8));
  const auto classes = static_cast<std::size_t>(uniform(2, 3));

  std::vector<Attribute> attributes;
  std::vector<std::vector<double>> columns;
  for (std::size_t a = 0; a < attribute_count; ++a) {
    Attribute attribute{"a" + std::to_string(a), AttributeKind::Numeric, {}};
    std::vector<double> column(examples);
    switch (uniform(0, 2)) {
      case 0: {
        attribute.kind = AttributeKind::Discrete;
        const int size = uniform(2, 4);
        for (int v = 0; v < size; ++v) attribute.domain.push_back(std::string(1, static_cast<char>('p' + v)));
        for (auto& v : column) v = uniform(0, size - 1);
        break;
      }
      case 1:
        for (auto& v : column) v = uniform(0, 9);
        break;
      default:
        for (auto& v : column) v = std::round(std::uniform_real_distribution<double>(0.0, 5.0)(rng) * 10.0) / 10.0;
        break;
    }
    attributes.push_back(std::move(attribute));
    columns.push_back(std::move(column));
  }

  // Concept: the class follows one attribute, with label noise.
  const auto key = static_cast<std::size_t>(uniform(0, static_cast<int>(attribute_count) - 1));
  const double noise = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
  std::vector<double> sorted(columns[key]);
  std::sort(sorted.begin(), sorted.end());
  const double cut = sorted[sorted.size() / 2];
  std::vector<double> targets(examples);
  for (std::size_t e = 0; e < examples; ++e) {
    const double v = columns[key][e];
    std::size_t cls = attributes[key].kind == AttributeKind::Discrete ? static_cast<std::size_t>(v) % classes
                                                                      : (v < cut ? 0 : classes - 1);
    if (std::bernoulli_distribution(noise)(rng)) cls = static_cast<std::size_t>(uniform(0, static_cast<int>(classes) - 1));
    targets[e] = numeric_target ? 1.0 + 3.0 * static_cast<double>(cls) + std::uniform_real_distribution<double>(0.0, 1.0)(rng)
                                : static_cast<double>(cls);
  }
  Target target{"y", TargetKind::Class, {}};
  if (numeric_target) {
    target.kind = TargetKind::Numeric;
  } else {
    for (std::size_t c = 0; c < classes; ++c) target.classes.push_back("c" + std::to_string(c));
  }
  return Dataset(Schema(std::move(attributes), std::move(target)), std::move(columns), std::move(targets));
}

VerifyOutcome verify_dataset(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config) {
  VerifyOutcome outcome;
  const bool numeric = dataset.schema().target_kind() == TargetKind::Numeric;
  const double tolerance = numeric ? 1e-9 : 0.0;

  InductionConfig checked = config;
  checked.verify_mode = true;
  Forest forest;
  try {
    forest = grow_forest_depth_first(dataset, folds, checked);
  } catch (const VerificationError& error) {
    outcome.subtraction_matches = false;
    outcome.failures.push_back(std::string("subtraction: ") + error.what());
    checked.verify_mode = false;
    forest = grow_forest_depth_first(dataset, folds, checked);
  }

  Counters level_counters;
  checked.verify_mode = false;
  const Forest level_forest = grow_forest_level_wise(dataset, folds, checked, &level_counters);
  if (to_json(level_forest) != to_json(forest)) {
    outcome.variants_match = false;
    outcome.failures.push_back("level-wise forest differs from depth-first forest");
  }
  const auto metrics = forest_metrics(forest);
  if (level_counters.data_passes != static_cast<std::uint64_t>(metrics.depth)) {
    outcome.passes_match_depth = false;
    outcome.failures.push_back("data passes " + std::to_string(level_counters.data_passes) + " != forest depth " +
                               std::to_string(metrics.depth));
  }
  if (metrics.test_nodes > static_cast<std::size_t>(folds.folds() + 1) * metrics.fold0_tree_nodes) {
    outcome.memory_bound_holds = false;
    outcome.failures.push_back("forest test nodes exceed (n+1) x fold-0 tree nodes");
  }

  const ThresholdGrid grid(dataset);
  std::vector<Tree> serial_folds;
  for (int i = 0; i <= folds.folds(); ++i) {
    Counters counters;
    const auto view = training_view(dataset, folds, i);
    Tree serial = grow_tree_serial(dataset, view, grid, config, counters);
    std::string difference;
    if (!structurally_equal(extract_fold_tree(forest, i), serial, &difference, tolerance)) {
      outcome.fold_trees_match = false;
      outcome.failures.push_back("fold " + std::to_string(i) + " tree differs at " + difference);
    }
    if (i > 0) serial_folds.push_back(std::move(serial));
  }

  if (!numeric && outcome.fold_trees_match) {
    if (!(cross_validation_estimate(forest, dataset, folds) ==
          cross_validation_estimate(std::span<const Tree>(serial_folds), dataset, folds))) {
      outcome.reports_match = false;
      outcome.failures.push_back("cross-validation estimates differ");
    }
  }
  return outcome;
}

}  // namespace parcv
