#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "parcv/data.hpp"
#include "parcv/instrumentation.hpp"
#include "parcv/splits.hpp"

namespace parcv {

using ordered_json = nlohmann::ordered_json;

// What a leaf stores for one fold. Class targets: majority class and the
// class distribution of the fold's training examples at the leaf. Numeric
// targets: mean and count. An empty leaf inherits its parent's prediction.
struct LeafInfo {
  TargetKind kind = TargetKind::Class;
  std::size_t majority = 0;
  std::vector<std::int64_t> distribution;
  double mean = 0.0;
  std::int64_t count = 0;

  bool operator==(const LeafInfo&) const = default;
};

// Builds the leaf from a one-outcome marginal. Majority ties go to the lowest
// class code. `fallback` supplies the prediction when the marginal is empty.
LeafInfo make_leaf(const StatisticsMatrix& marginal, const LeafInfo* fallback);

// An ordinary decision tree (a single fold's view). Node 0 is the root.
struct TreeNode {
  int depth = 0;
  std::optional<Test> test;
  std::vector<std::size_t> children;  // one per outcome when test is set
  LeafInfo leaf;                       // meaningful when test is unset
};

class Tree {
 public:
  Tree() = default;
  explicit Tree(Schema schema) : schema_(std::move(schema)) {}

  const Schema& schema() const { return schema_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t add_node(TreeNode node);
  TreeNode& mutable_node(std::size_t id) { return nodes_.at(id); }
  int depth() const;  // number of node levels

 private:
  Schema schema_;
  std::vector<TreeNode> nodes_;
};

// Tests, topology and leaf contents must match. Leaf means of numeric
// targets are compared with the given relative tolerance; everything else is
// exact. On mismatch, `difference` receives the path to the first difference.
bool structurally_equal(const Tree& a, const Tree& b, std::string* difference = nullptr, double mean_tolerance = 0.0);

// One branch at a bifurcation point: the folds that made the same choice.
struct BifurcationGroup {
  std::vector<int> folds;  // ascending
  std::optional<Test> test;  // unset: MAKE-LEAF for every member fold
  std::vector<std::size_t> children;  // forest node ids, one per outcome
  std::vector<LeafInfo> leaves;  // per member fold (parallel to `folds`), MAKE-LEAF only

  bool is_leaf() const { return !test.has_value(); }
};

struct ForestNode {
  int depth = 0;
  // False for nodes materialised directly from an empty child bucket.
  bool refined = false;
  std::vector<BifurcationGroup> groups;  // ordered by minimal fold index
};

// The shared multi-fold structure built by the parallel algorithm.
class Forest {
 public:
  Forest() = default;
  Forest(Schema schema, FoldAssignment folds) : schema_(std::move(schema)), folds_(std::move(folds)) {}

  const Schema& schema() const { return schema_; }
  const FoldAssignment& fold_assignment() const { return folds_; }
  int folds() const { return folds_.folds(); }
  const std::vector<ForestNode>& nodes() const { return nodes_; }
  const ForestNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t root() const { return 0; }

  std::size_t add_node(ForestNode node);
  ForestNode& mutable_node(std::size_t id) { return nodes_.at(id); }

  // Per-depth refinement seconds recorded by the builder.
  const std::vector<double>& level_seconds() const { return level_seconds_; }
  void set_level_seconds(std::vector<double> seconds) { level_seconds_ = std::move(seconds); }

 private:
  Schema schema_;
  FoldAssignment folds_;
  std::vector<ForestNode> nodes_;
  std::vector<double> level_seconds_;
};

struct ChoiceGroup {
  std::vector<int> folds;
  Choice choice;
};

// Folds with equal choices share a group; groups ordered by minimal fold.
std::vector<ChoiceGroup> group_folds_by_choice(std::span<const int> folds, std::span<const Choice> choices);

// One bucket per outcome, order preserved; counters.partition_ops grows by
// examples.size().
std::vector<std::vector<std::size_t>> partition_examples(std::span<const std::size_t> examples, const Test& test,
                                                         const Dataset& dataset, Counters& counters);

// Follows the group containing fold i at every bifurcation point.
Tree extract_fold_tree(const Forest& forest, int fold);

struct ForestMetrics {
  std::size_t forest_nodes = 0;      // bifurcation points, refined or not
  std::size_t test_nodes = 0;        // test-choice groups
  std::size_t leaf_groups = 0;
  std::size_t bifurcations = 0;      // nodes with more than one group
  int depth = 0;                     // levels holding at least one refined node
  std::vector<double> f;             // per level: mean distinct choices per refined node
  std::vector<std::size_t> level_nodes;
  std::size_t fold0_tree_nodes = 0;
};

ForestMetrics forest_metrics(const Forest& forest);

ordered_json leaf_to_json(const LeafInfo& leaf, const Schema& schema);
ordered_json to_json(const Tree& tree);
ordered_json to_json(const Forest& forest);

}  // namespace parcv
