#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parcv/data.hpp"
#include "parcv/forest.hpp"
#include "parcv/instrumentation.hpp"
#include "parcv/splits.hpp"

namespace parcv {

enum class Variant { DepthFirst, LevelWise };

Variant parse_variant(const std::string& name);
std::string to_string(Variant variant);

struct InductionConfig {
  Measure measure = Measure::InformationGain;
  std::size_t min_examples = 2;
  int folds = 10;
  std::uint64_t seed = 1;
  bool stratified = false;
  Variant variant = Variant::DepthFirst;
  // Recompute S(T_i) by direct accumulation at every node and compare it with
  // the subtraction route; a mismatch throws VerificationError.
  bool verify_mode = false;

  // Throws std::invalid_argument when the settings do not fit the schema.
  void validate(const Schema& schema) const;
};

// The examples relevant at one forest node and the folds that reach it.
struct NodeContext {
  std::vector<std::size_t> examples;  // pooled over `folds`, dataset order
  std::vector<int> folds;             // ascending, subset of 0..n
  int depth = 0;
  std::vector<LeafInfo> fallback;     // per fold: parent prediction for empty slices
};

// One bifurcation group produced by refining a node. `leaves` holds every
// member fold's leaf info at this node: the payload of a MAKE-LEAF group and
// the fallback of children otherwise.
struct RefinedGroup {
  std::vector<int> folds;
  std::optional<Test> test;
  std::vector<LeafInfo> leaves;
  std::vector<NodeContext> children;  // one per outcome; may have empty example sets
};

// Refines every fold reaching the node at once: one statistics pass per test
// over the pooled examples, S(T_i) by subtraction, per-fold argmax, grouping
// of equal choices, and one partition per distinct test.
std::vector<RefinedGroup> refine_node_parallel(const NodeContext& context, const Dataset& dataset,
                                               const FoldAssignment& folds, const ThresholdGrid& grid,
                                               const InductionConfig& config, Counters& counters);

NodeContext root_context(const Dataset& dataset, const FoldAssignment& folds);

Forest grow_forest_depth_first(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                               Counters* counters = nullptr);
Forest grow_forest_level_wise(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                              Counters* counters = nullptr);
Forest grow_forest(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                   Counters* counters = nullptr);

// The classic single-tree builder on an explicit training view. It shares
// test enumeration, scoring, tie rule and stop criterion with the forest
// builders.
Tree grow_tree_serial(const Dataset& dataset, std::span<const std::size_t> training_view, const ThresholdGrid& grid,
                      const InductionConfig& config, Counters& counters);
Tree grow_tree_serial(const Dataset& dataset, std::span<const std::size_t> training_view,
                      const InductionConfig& config, Counters& counters);

struct SerialRun {
  Tree actual;
  std::vector<Tree> fold_trees;  // fold_trees[i - 1] trained on T_i
  Counters counters;             // totals over all n + 1 builds
  Counters actual_counters;
  double actual_seconds = 0.0;
  std::vector<double> fold_seconds;
  double total_seconds = 0.0;
};

SerialRun run_serial_cross_validation(const Dataset& dataset, const FoldAssignment& folds,
                                      const InductionConfig& config);

}  // namespace parcv
