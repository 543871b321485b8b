#include "parcv/forest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parcv {

LeafInfo make_leaf(const StatisticsMatrix& marginal, const LeafInfo* fallback) {
  LeafInfo leaf;
  leaf.kind = marginal.kind();
  leaf.count = marginal.total();
  if (leaf.kind == TargetKind::Class) {
    leaf.distribution.resize(marginal.classes());
    for (std::size_t c = 0; c < marginal.classes(); ++c) leaf.distribution[c] = marginal.class_total(c);
    if (leaf.count == 0) {
      leaf.majority = fallback ? fallback->majority : 0;
    } else {
      leaf.majority = static_cast<std::size_t>(
          std::max_element(leaf.distribution.begin(), leaf.distribution.end()) - leaf.distribution.begin());
    }
  } else {
    double sum = 0.0;
    for (std::size_t o = 0; o < marginal.outcomes(); ++o) sum += marginal.sum(o);
    leaf.mean = leaf.count == 0 ? (fallback ? fallback->mean : 0.0) : sum / static_cast<double>(leaf.count);
  }
  return leaf;
}

std::size_t Tree::add_node(TreeNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

int Tree::depth() const {
  int depth = 0;
  for (const auto& node : nodes_) depth = std::max(depth, node.depth + 1);
  return depth;
}

namespace {

bool leaves_equal(const LeafInfo& a, const LeafInfo& b, double tolerance) {
  if (a.kind != b.kind || a.count != b.count) return false;
  if (a.kind == TargetKind::Class) return a.majority == b.majority && a.distribution == b.distribution;
  if (tolerance == 0.0) return a.mean == b.mean;
  return std::abs(a.mean - b.mean) <= tolerance * std::max({1.0, std::abs(a.mean), std::abs(b.mean)});
}

bool equal_from(const Tree& a, std::size_t ia, const Tree& b, std::size_t ib, std::string path, std::string* difference,
                double tolerance) {
  const auto& na = a.node(ia);
  const auto& nb = b.node(ib);
  auto fail = [&](const std::string& what) {
    if (difference) *difference = (path.empty() ? "root" : path) + ": " + what;
    return false;
  };
  if (na.test.has_value() != nb.test.has_value()) return fail("test node vs leaf");
  if (!na.test) {
    if (!leaves_equal(na.leaf, nb.leaf, tolerance)) return fail("leaf contents differ");
    return true;
  }
  if (!(*na.test == *nb.test))
    return fail("'" + describe(*na.test, a.schema()) + "' vs '" + describe(*nb.test, b.schema()) + "'");
  if (na.children.size() != nb.children.size()) return fail("child count differs");
  for (std::size_t o = 0; o < na.children.size(); ++o)
    if (!equal_from(a, na.children[o], b, nb.children[o], path + "/" + std::to_string(o), difference, tolerance))
      return false;
  return true;
}

}  // namespace

bool structurally_equal(const Tree& a, const Tree& b, std::string* difference, double mean_tolerance) {
  if (a.size() == 0 || b.size() == 0) {
    if (difference && a.size() != b.size()) *difference = "one tree is empty";
    return a.size() == b.size();
  }
  return equal_from(a, 0, b, 0, "", difference, mean_tolerance);
}

std::size_t Forest::add_node(ForestNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::vector<ChoiceGroup> group_folds_by_choice(std::span<const int> folds, std::span<const Choice> choices) {
  if (folds.size() != choices.size()) throw std::invalid_argument("one choice per fold required");
  if (folds.empty()) throw std::invalid_argument("at least one fold must reach the node");
  std::vector<std::size_t> order(folds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return folds[x] < folds[y]; });

  std::vector<ChoiceGroup> groups;
  for (std::size_t i : order) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const ChoiceGroup& g) { return g.choice == choices[i]; });
    if (it == groups.end())
      groups.push_back({{folds[i]}, choices[i]});
    else
      it->folds.push_back(folds[i]);
  }
  return groups;
}

std::vector<std::vector<std::size_t>> partition_examples(std::span<const std::size_t> examples, const Test& test,
                                                         const Dataset& dataset, Counters& counters) {
  const auto column = dataset.column(test.attribute);
  std::vector<std::vector<std::size_t>> buckets(test.arity);
  for (std::size_t e : examples) buckets[test.outcome_of(column[e])].push_back(e);
  counters.partition_ops += examples.size();
  return buckets;
}

Tree extract_fold_tree(const Forest& forest, int fold) {
  if (fold < 0 || fold > forest.folds()) throw std::out_of_range("fold index outside 0..n");
  Tree tree(forest.schema());
  if (forest.nodes().empty()) return tree;

  struct Item {
    std::size_t forest_id;
    std::size_t tree_id;
  };
  std::vector<Item> stack;
  stack.push_back({forest.root(), tree.add_node(TreeNode{forest.node(forest.root()).depth, {}, {}, {}})});
  while (!stack.empty()) {
    auto [forest_id, tree_id] = stack.back();
    stack.pop_back();
    const auto& node = forest.node(forest_id);
    auto group = std::find_if(node.groups.begin(), node.groups.end(), [&](const BifurcationGroup& g) {
      return std::binary_search(g.folds.begin(), g.folds.end(), fold);
    });
    if (group == node.groups.end())
      throw std::logic_error("fold " + std::to_string(fold) + " does not reach forest node " + std::to_string(forest_id));
    if (group->is_leaf()) {
      auto pos = static_cast<std::size_t>(
          std::lower_bound(group->folds.begin(), group->folds.end(), fold) - group->folds.begin());
      tree.mutable_node(tree_id).leaf = group->leaves.at(pos);
      continue;
    }
    std::vector<std::size_t> child_ids;
    for (std::size_t child : group->children)
      child_ids.push_back(tree.add_node(TreeNode{forest.node(child).depth, {}, {}, {}}));
    auto& out = tree.mutable_node(tree_id);
    out.test = group->test;
    out.children = child_ids;
    for (std::size_t o = group->children.size(); o-- > 0;) stack.push_back({group->children[o], child_ids[o]});
  }
  return tree;
}

ForestMetrics forest_metrics(const Forest& forest) {
  ForestMetrics metrics;
  metrics.forest_nodes = forest.nodes().size();
  std::vector<std::size_t> choice_sum;
  for (const auto& node : forest.nodes()) {
    for (const auto& group : node.groups) (group.is_leaf() ? metrics.leaf_groups : metrics.test_nodes) += 1;
    if (node.groups.size() > 1) ++metrics.bifurcations;
    if (!node.refined) continue;
    auto level = static_cast<std::size_t>(node.depth);
    if (metrics.level_nodes.size() <= level) {
      metrics.level_nodes.resize(level + 1, 0);
      choice_sum.resize(level + 1, 0);
    }
    ++metrics.level_nodes[level];
    choice_sum[level] += node.groups.size();
  }
  metrics.depth = static_cast<int>(metrics.level_nodes.size());
  for (std::size_t level = 0; level < metrics.level_nodes.size(); ++level)
    metrics.f.push_back(metrics.level_nodes[level] == 0
                            ? 0.0
                            : static_cast<double>(choice_sum[level]) / static_cast<double>(metrics.level_nodes[level]));
  if (!forest.nodes().empty()) metrics.fold0_tree_nodes = extract_fold_tree(forest, 0).size();
  return metrics;
}

namespace {

ordered_json test_to_json(const Test& test, const Schema& schema) {
  ordered_json j;
  j["attribute"] = schema.attribute(test.attribute).name;
  if (test.kind == AttributeKind::Discrete) {
    j["kind"] = "discrete";
  } else {
    j["kind"] = "threshold";
    j["threshold"] = test.threshold;
  }
  j["arity"] = test.arity;
  return j;
}

ordered_json tree_node_to_json(const Tree& tree, std::size_t id) {
  const auto& node = tree.node(id);
  if (!node.test) return leaf_to_json(node.leaf, tree.schema());
  ordered_json j;
  j["type"] = "test";
  j["test"] = test_to_json(*node.test, tree.schema());
  j["children"] = ordered_json::array();
  for (std::size_t child : node.children) j["children"].push_back(tree_node_to_json(tree, child));
  return j;
}

ordered_json forest_node_to_json(const Forest& forest, std::size_t id);

ordered_json group_to_json(const Forest& forest, const BifurcationGroup& group) {
  ordered_json j;
  if (group.is_leaf()) {
    j["type"] = "leaf";
    j["folds"] = group.folds;
    j["leaves"] = ordered_json::array();
    for (std::size_t i = 0; i < group.folds.size(); ++i) {
      ordered_json leaf;
      leaf["fold"] = group.folds[i];
      leaf.update(leaf_to_json(group.leaves[i], forest.schema()));
      leaf.erase("type");
      j["leaves"].push_back(std::move(leaf));
    }
    return j;
  }
  j["type"] = "test";
  j["folds"] = group.folds;
  j["test"] = test_to_json(*group.test, forest.schema());
  j["children"] = ordered_json::array();
  for (std::size_t child : group.children) j["children"].push_back(forest_node_to_json(forest, child));
  return j;
}

ordered_json forest_node_to_json(const Forest& forest, std::size_t id) {
  const auto& node = forest.node(id);
  if (node.groups.size() == 1) return group_to_json(forest, node.groups.front());
  ordered_json j;
  j["type"] = "bifurcation";
  j["groups"] = ordered_json::array();
  for (const auto& group : node.groups) j["groups"].push_back(group_to_json(forest, group));
  return j;
}

}  // namespace

ordered_json leaf_to_json(const LeafInfo& leaf, const Schema& schema) {
  ordered_json j;
  j["type"] = "leaf";
  if (leaf.kind == TargetKind::Class) {
    j["majority"] = schema.target().classes.at(leaf.majority);
    j["distribution"] = leaf.distribution;
  } else {
    j["mean"] = leaf.mean;
  }
  j["count"] = leaf.count;
  return j;
}

ordered_json to_json(const Tree& tree) {
  if (tree.size() == 0) return nullptr;
  return tree_node_to_json(tree, 0);
}

ordered_json to_json(const Forest& forest) {
  ordered_json j;
  j["folds"] = forest.folds();
  j["examples"] = forest.fold_assignment().size();
  j["root"] = forest.nodes().empty() ? ordered_json(nullptr) : forest_node_to_json(forest, forest.root());
  return j;
}

}  // namespace parcv
