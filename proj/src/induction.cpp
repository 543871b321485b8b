#include "parcv/induction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace parcv {

Variant parse_variant(const std::string& name) {
  if (name == "depth") return Variant::DepthFirst;
  if (name == "level") return Variant::LevelWise;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string to_string(Variant variant) { return variant == Variant::DepthFirst ? "depth" : "level"; }

void InductionConfig::validate(const Schema& schema) const {
  if (min_examples < 1) throw std::invalid_argument("min_examples must be at least 1");
  if (folds < 2) throw std::invalid_argument("fold count must be at least 2");
  if (!measure_fits(measure, schema.target_kind()))
    throw std::invalid_argument("measure '" + to_string(measure) + "' does not fit a " +
                                (schema.target_kind() == TargetKind::Class ? "class" : "numeric") + " target");
  if (stratified && schema.target_kind() != TargetKind::Class)
    throw std::invalid_argument("stratified folds require a class target");
}

namespace {

// Flat per-test statistics blocks. Class targets use `counts` laid out as
// [part][outcome][class]; numeric targets use `counts` as [part][outcome] and
// `sums` as [part][outcome][sum_sq, sum]. The serial builder uses a single part.
struct StatBlocks {
  std::size_t parts = 1;
  std::size_t classes = 1;  // 1 for numeric targets
  bool numeric = false;
  std::vector<std::size_t> count_offset;
  std::vector<std::int64_t> counts;
  std::vector<double> sums;

  void allocate(std::span<const Test> tests) {
    count_offset.assign(tests.size() + 1, 0);
    for (std::size_t t = 0; t < tests.size(); ++t)
      count_offset[t + 1] = count_offset[t] + parts * tests[t].arity * classes;
    counts.assign(count_offset.back(), 0);
    if (numeric) sums.assign(2 * count_offset.back(), 0.0);
  }

  void add(std::size_t t, const Test& test, std::size_t part, std::size_t outcome, std::size_t cls, double y) {
    std::size_t cell = count_offset[t] + (part * test.arity + outcome) * classes + cls;
    ++counts[cell];
    if (numeric) {
      sums[2 * cell] += y * y;
      sums[2 * cell + 1] += y;
    }
  }

  StatisticsMatrix matrix(std::size_t t, const Test& test, std::size_t part, const Schema& schema) const {
    auto m = empty_statistics(schema, test.arity);
    std::size_t first = count_offset[t] + part * test.arity * classes;
    auto out = m.raw_counts();
    std::copy_n(counts.begin() + static_cast<std::ptrdiff_t>(first), out.size(), out.begin());
    if (numeric) {
      auto out_sums = m.raw_sums();
      std::copy_n(sums.begin() + static_cast<std::ptrdiff_t>(2 * first), out_sums.size(), out_sums.begin());
    }
    return m;
  }

  // Sum of all parts into `total`, which must already have the test's shape.
  void sum_parts(std::size_t t, const Test& test, StatisticsMatrix& total) const {
    auto out = total.raw_counts();
    std::fill(out.begin(), out.end(), 0);
    const std::size_t stride = test.arity * classes;
    for (std::size_t k = 0; k < parts; ++k) {
      const std::int64_t* cell = counts.data() + count_offset[t] + k * stride;
      for (std::size_t c = 0; c < stride; ++c) out[c] += cell[c];
    }
    if (numeric) {
      auto out_sums = total.raw_sums();
      std::fill(out_sums.begin(), out_sums.end(), 0.0);
      for (std::size_t k = 0; k < parts; ++k) {
        const double* cell = sums.data() + 2 * (count_offset[t] + k * stride);
        for (std::size_t c = 0; c < 2 * stride; ++c) out_sums[c] += cell[c];
      }
    }
  }

  void subtract_part(std::size_t t, const Test& test, std::size_t part, StatisticsMatrix& m) const {
    const std::size_t stride = test.arity * classes;
    const std::size_t first = count_offset[t] + part * stride;
    auto out = m.raw_counts();
    for (std::size_t c = 0; c < stride; ++c) out[c] -= counts[first + c];
    if (numeric) {
      auto out_sums = m.raw_sums();
      for (std::size_t c = 0; c < 2 * stride; ++c) out_sums[c] -= sums[2 * first + c];
    }
  }
};

// Test-major accumulation over an example list (the inner loops of both
// builders). `parts` may be empty, in which case everything lands in part 0.
void accumulate_test_major(const Dataset& dataset, std::span<const std::size_t> examples,
                           std::span<const std::uint32_t> parts, std::span<const Test> tests, StatBlocks& blocks) {
  const bool with_parts = !parts.empty();
  const std::size_t classes = blocks.classes;
  std::vector<std::uint32_t> class_code;
  std::vector<double> y;
  if (blocks.numeric) {
    y.resize(examples.size());
    for (std::size_t j = 0; j < examples.size(); ++j) y[j] = dataset.target(examples[j]);
  } else {
    class_code.resize(examples.size());
    for (std::size_t j = 0; j < examples.size(); ++j)
      class_code[j] = static_cast<std::uint32_t>(dataset.class_of(examples[j]));
  }

  for (std::size_t t = 0; t < tests.size(); ++t) {
    const Test& test = tests[t];
    const auto column = dataset.column(test.attribute);
    const std::size_t part_stride = test.arity * classes;
    if (!blocks.numeric) {
      std::int64_t* block = blocks.counts.data() + blocks.count_offset[t];
      if (test.kind == AttributeKind::Discrete) {
        for (std::size_t j = 0; j < examples.size(); ++j) {
          std::size_t part = with_parts ? parts[j] : 0;
          ++block[part * part_stride + static_cast<std::size_t>(column[examples[j]]) * classes + class_code[j]];
        }
      } else {
        const double threshold = test.threshold;
        for (std::size_t j = 0; j < examples.size(); ++j) {
          std::size_t part = with_parts ? parts[j] : 0;
          std::size_t outcome = column[examples[j]] < threshold ? 0 : 1;
          ++block[part * part_stride + outcome * classes + class_code[j]];
        }
      }
    } else {
      for (std::size_t j = 0; j < examples.size(); ++j) {
        std::size_t part = with_parts ? parts[j] : 0;
        blocks.add(t, test, part, test.outcome_of(column[examples[j]]), 0, y[j]);
      }
    }
  }
}

void check_same(const StatisticsMatrix& derived, const StatisticsMatrix& direct, int fold, const Test& test,
                const Schema& schema) {
  bool same = derived.same_shape(direct) && std::equal(derived.raw_counts().begin(), derived.raw_counts().end(),
                                                       direct.raw_counts().begin());
  if (same && derived.kind() == TargetKind::Numeric) {
    auto a = derived.raw_sums();
    auto b = direct.raw_sums();
    for (std::size_t i = 0; i < a.size() && same; ++i) {
      double scale = std::max(std::abs(a[i]), std::abs(b[i]));
      same = scale == 0.0 || std::abs(a[i] - b[i]) <= 1e-9 * scale;
    }
  }
  if (!same)
    throw VerificationError("statistics for fold " + std::to_string(fold) + ", test '" + describe(test, schema) +
                            "' differ between subtraction and direct accumulation");
}

class NodeRefinement {
 public:
  NodeRefinement(const NodeContext& context, const Dataset& dataset, const FoldAssignment& folds,
                 const ThresholdGrid& grid, const InductionConfig& config)
      : context_(context), dataset_(dataset), folds_(folds), grid_(grid), config_(config) {
    // Statistics are kept per slot: slot 0 pools every part that is not one of
    // the node's folds, slots 1.. hold the parts of the node's folds.
    const auto& schema = dataset.schema();
    slot_of_fold_.assign(static_cast<std::size_t>(folds.folds()) + 1, 0);
    std::uint32_t slots = 1;
    for (int fold : context.folds)
      if (fold > 0) slot_of_fold_[static_cast<std::size_t>(fold)] = slots++;
    part_marginals_.assign(slots, empty_statistics(schema, 1));
    blocks_.parts = slots;
    blocks_.numeric = schema.target_kind() == TargetKind::Numeric;
    blocks_.classes = blocks_.numeric ? 1 : schema.num_classes();
  }

  void add_marginal(std::size_t e) {
    update_statistics(part_marginals_[slot_of(e)], 0, dataset_.target(e));
  }

  void compute_marginals() {
    for (std::size_t e : context_.examples) add_marginal(e);
    resolve_marginals();
  }

  // Per-fold marginals and stop inputs; valid once all examples have been added.
  void resolve_marginals() {
    StatisticsMatrix total = part_marginals_[0];
    for (std::size_t k = 1; k < part_marginals_.size(); ++k) total += part_marginals_[k];
    stop_.clear();
    leaves_.clear();
    for (std::size_t r = 0; r < context_.folds.size(); ++r) {
      const int fold = context_.folds[r];
      const StatisticsMatrix marginal = fold > 0 ? total - part_marginals_[slot_of_fold_[fold]] : total;
      stop_.push_back(stop_inputs(marginal));
      leaves_.push_back(make_leaf(marginal, &context_.fallback[r]));
    }
  }

  bool any_fold_needs_tests() const {
    return std::any_of(stop_.begin(), stop_.end(),
                       [&](const StopInputs& s) { return !stops_before_tests(s, config_.min_examples); });
  }

  void enumerate() {
    tests_ = enumerate_tests(dataset_, grid_, context_.examples);
    blocks_.allocate(tests_);
    tests_evaluated_ = true;
  }

  void accumulate_tests(Counters& counters) {
    Stopwatch watch;
    std::vector<std::uint32_t> parts(context_.examples.size());
    for (std::size_t j = 0; j < parts.size(); ++j)
      parts[j] = slot_of(context_.examples[j]);
    accumulate_test_major(dataset_, context_.examples, parts, tests_, blocks_);
    counters.evaluations += tests_.size() * context_.examples.size();
    counters.accumulate_seconds += watch.seconds();
  }

  void add_example_to_tests(std::size_t e) {
    const std::size_t part = slot_of(e);
    const double y = dataset_.target(e);
    const std::size_t cls = blocks_.numeric ? 0 : dataset_.class_of(e);
    for (std::size_t t = 0; t < tests_.size(); ++t)
      blocks_.add(t, tests_[t], part, tests_[t].outcome(dataset_, e), cls, y);
  }

  std::size_t test_count() const { return tests_.size(); }

  std::vector<RefinedGroup> resolve(Counters& counters) {
    const auto& schema = dataset_.schema();
    std::vector<Choice> choices(context_.folds.size(), Choice::make_leaf());
    if (tests_evaluated_) {
      if (config_.verify_mode) verify(schema);

      QualityTable quality;
      quality.measure = config_.measure;
      quality.folds = context_.folds;
      quality.scores.assign(context_.folds.size(), std::vector<double>(tests_.size(), 0.0));
      StatisticsMatrix total, training;
      for (std::size_t t = 0; t < tests_.size(); ++t) {
        if (total.outcomes() != tests_[t].arity) total = empty_statistics(schema, tests_[t].arity);
        blocks_.sum_parts(t, tests_[t], total);
        for (std::size_t r = 0; r < context_.folds.size(); ++r) {
          if (stops_before_tests(stop_[r], config_.min_examples)) continue;
          training_statistics(t, total, context_.folds[r], training);
          quality.scores[r][t] = compute_quality(training, config_.measure);
        }
      }
      choices = best_choice_per_fold(quality, stop_, config_.min_examples);
    }

    std::vector<RefinedGroup> result;
    for (auto& group : group_folds_by_choice(context_.folds, choices)) {
      RefinedGroup refined;
      refined.folds = group.folds;
      for (int fold : group.folds) {
        auto r = static_cast<std::size_t>(
            std::lower_bound(context_.folds.begin(), context_.folds.end(), fold) - context_.folds.begin());
        refined.leaves.push_back(leaves_[r]);
      }
      if (!group.choice.is_leaf()) {
        refined.test = tests_[group.choice.test];
        Stopwatch watch;
        auto buckets = partition_examples(relevant_examples(group.folds), *refined.test, dataset_, counters);
        counters.partition_seconds += watch.seconds();
        for (auto& bucket : buckets)
          refined.children.push_back(NodeContext{std::move(bucket), refined.folds, context_.depth + 1, refined.leaves});
      }
      result.push_back(std::move(refined));
    }
    ++counters.nodes_refined;
    return result;
  }

 private:
  // Pooled examples that belong to the training set of at least one member fold.
  std::vector<std::size_t> relevant_examples(const std::vector<int>& group_folds) const {
    if (group_folds.size() > 1 || group_folds.front() == 0) return context_.examples;
    const int only = group_folds.front();
    std::vector<std::size_t> relevant;
    relevant.reserve(context_.examples.size());
    for (std::size_t e : context_.examples)
      if (folds_.fold_of(e) != only) relevant.push_back(e);
    return relevant;
  }

  std::uint32_t slot_of(std::size_t e) const { return slot_of_fold_[static_cast<std::size_t>(folds_.fold_of(e))]; }

  void training_statistics(std::size_t t, const StatisticsMatrix& total, int fold, StatisticsMatrix& out) const {
    out = total;
    if (fold > 0) blocks_.subtract_part(t, tests_[t], slot_of_fold_[static_cast<std::size_t>(fold)], out);
  }

  void verify(const Schema& schema) const {
    StatisticsMatrix total, derived;
    for (int fold : context_.folds) {
      std::vector<std::size_t> slice;
      for (std::size_t e : context_.examples)
        if (folds_.in_training(e, fold)) slice.push_back(e);
      for (std::size_t t = 0; t < tests_.size(); ++t) {
        total = empty_statistics(schema, tests_[t].arity);
        blocks_.sum_parts(t, tests_[t], total);
        training_statistics(t, total, fold, derived);
        check_same(derived, accumulate_statistics(dataset_, slice, tests_[t]), fold, tests_[t], schema);
      }
    }
  }

  const NodeContext& context_;
  const Dataset& dataset_;
  const FoldAssignment& folds_;
  const ThresholdGrid& grid_;
  const InductionConfig& config_;
  std::vector<std::uint32_t> slot_of_fold_;
  std::vector<StatisticsMatrix> part_marginals_;
  std::vector<StopInputs> stop_;
  std::vector<LeafInfo> leaves_;
  std::vector<Test> tests_;
  StatBlocks blocks_;
  bool tests_evaluated_ = false;
};

void check_inputs(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config) {
  config.validate(dataset.schema());
  if (folds.size() != dataset.size()) throw std::invalid_argument("fold assignment does not match the dataset size");
}

ForestNode empty_leaf_node(const NodeContext& context, const Schema& schema) {
  BifurcationGroup group;
  group.folds = context.folds;
  const auto empty = empty_statistics(schema, 1);
  for (const auto& fallback : context.fallback) group.leaves.push_back(make_leaf(empty, &fallback));
  return ForestNode{context.depth, false, {std::move(group)}};
}

// Wires refined groups into the forest; returns the new child work items in
// (group, outcome) order.
std::vector<std::pair<std::size_t, NodeContext>> attach(Forest& forest, std::size_t node_id,
                                                        std::vector<RefinedGroup> groups) {
  std::vector<std::pair<std::size_t, NodeContext>> work;
  std::vector<BifurcationGroup> bifurcation;
  for (auto& refined : groups) {
    BifurcationGroup group;
    group.folds = refined.folds;
    group.test = refined.test;
    if (!refined.test) {
      group.leaves = std::move(refined.leaves);
    } else {
      for (auto& child : refined.children) {
        std::size_t id = forest.add_node(ForestNode{child.depth, false, {}});
        group.children.push_back(id);
        work.emplace_back(id, std::move(child));
      }
    }
    bifurcation.push_back(std::move(group));
  }
  auto& node = forest.mutable_node(node_id);
  node.refined = true;
  node.groups = std::move(bifurcation);
  return work;
}

}  // namespace

NodeContext root_context(const Dataset& dataset, const FoldAssignment& folds) {
  NodeContext context;
  context.examples.resize(dataset.size());
  std::iota(context.examples.begin(), context.examples.end(), std::size_t{0});
  context.folds.resize(folds.folds() + 1);
  std::iota(context.folds.begin(), context.folds.end(), 0);
  LeafInfo fallback;
  fallback.kind = dataset.schema().target_kind();
  context.fallback.assign(context.folds.size(), fallback);
  return context;
}

std::vector<RefinedGroup> refine_node_parallel(const NodeContext& context, const Dataset& dataset,
                                               const FoldAssignment& folds, const ThresholdGrid& grid,
                                               const InductionConfig& config, Counters& counters) {
  if (context.examples.empty()) throw std::invalid_argument("node context has no examples");
  if (context.folds.empty() || context.fallback.size() != context.folds.size())
    throw std::invalid_argument("node context needs at least one fold and one fallback per fold");
  NodeRefinement refinement(context, dataset, folds, grid, config);
  refinement.compute_marginals();
  if (refinement.any_fold_needs_tests()) {
    refinement.enumerate();
    refinement.accumulate_tests(counters);
  }
  return refinement.resolve(counters);
}

Forest grow_forest_depth_first(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                               Counters* counters_out) {
  check_inputs(dataset, folds, config);
  const ThresholdGrid grid(dataset);
  Counters counters;
  Forest forest(dataset.schema(), folds);

  std::vector<std::pair<std::size_t, NodeContext>> stack;
  stack.emplace_back(forest.add_node(ForestNode{0, false, {}}), root_context(dataset, folds));
  while (!stack.empty()) {
    auto [id, context] = std::move(stack.back());
    stack.pop_back();
    if (context.examples.empty()) {
      forest.mutable_node(id) = empty_leaf_node(context, dataset.schema());
      continue;
    }
    Stopwatch watch;
    auto children = attach(forest, id, refine_node_parallel(context, dataset, folds, grid, config, counters));
    counters.add_level_time(context.depth, watch.seconds());
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
  forest.set_level_seconds(counters.level_seconds);
  if (counters_out) *counters_out += counters;
  return forest;
}

Forest grow_forest_level_wise(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                              Counters* counters_out) {
  check_inputs(dataset, folds, config);
  const ThresholdGrid grid(dataset);
  Counters counters;
  Forest forest(dataset.schema(), folds);

  std::vector<std::pair<std::size_t, NodeContext>> frontier;
  frontier.emplace_back(forest.add_node(ForestNode{0, false, {}}), root_context(dataset, folds));
  int depth = 0;
  while (!frontier.empty()) {
    Stopwatch level_watch;
    std::vector<std::size_t> active;
    std::vector<NodeRefinement> work;
    work.reserve(frontier.size());
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      auto& [id, context] = frontier[k];
      if (context.examples.empty()) {
        forest.mutable_node(id) = empty_leaf_node(context, dataset.schema());
        continue;
      }
      active.push_back(k);
      work.emplace_back(context, dataset, folds, grid, config);
      work.back().enumerate();
    }

    std::vector<std::pair<std::size_t, NodeContext>> next;
    if (!work.empty()) {
      // Route every example to each frontier node whose pooled set holds it,
      // then sweep the data once.
      std::vector<std::size_t> offsets(dataset.size() + 1, 0);
      for (std::size_t w = 0; w < work.size(); ++w)
        for (std::size_t e : frontier[active[w]].second.examples) ++offsets[e + 1];
      std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
      std::vector<std::uint32_t> routes(offsets.back());
      std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
      for (std::size_t w = 0; w < work.size(); ++w)
        for (std::size_t e : frontier[active[w]].second.examples) routes[fill[e]++] = static_cast<std::uint32_t>(w);

      Stopwatch pass_watch;
      ++counters.data_passes;
      for (std::size_t e = 0; e < dataset.size(); ++e) {
        for (std::size_t r = offsets[e]; r < offsets[e + 1]; ++r) {
          auto& node = work[routes[r]];
          node.add_marginal(e);
          node.add_example_to_tests(e);
          counters.evaluations += node.test_count();
        }
      }
      counters.accumulate_seconds += pass_watch.seconds();

      for (std::size_t w = 0; w < work.size(); ++w) {
        work[w].resolve_marginals();
        auto children = attach(forest, frontier[active[w]].first, work[w].resolve(counters));
        for (auto& child : children) next.push_back(std::move(child));
      }
    }
    counters.add_level_time(depth, level_watch.seconds());
    frontier = std::move(next);
    ++depth;
  }
  // Trailing levels that only held empty-bucket leaves carry no refinement.
  auto seconds = counters.level_seconds;
  seconds.resize(std::min<std::size_t>(seconds.size(), counters.data_passes));
  forest.set_level_seconds(std::move(seconds));
  if (counters_out) *counters_out += counters;
  return forest;
}

Forest grow_forest(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config,
                   Counters* counters) {
  return config.variant == Variant::DepthFirst ? grow_forest_depth_first(dataset, folds, config, counters)
                                               : grow_forest_level_wise(dataset, folds, config, counters);
}

Tree grow_tree_serial(const Dataset& dataset, std::span<const std::size_t> training_view, const ThresholdGrid& grid,
                      const InductionConfig& config, Counters& counters) {
  config.validate(dataset.schema());
  if (training_view.empty()) throw std::invalid_argument("training view is empty");
  const auto& schema = dataset.schema();
  Tree tree(schema);

  struct Item {
    std::size_t id;
    std::vector<std::size_t> examples;
    LeafInfo fallback;
  };
  LeafInfo root_fallback;
  root_fallback.kind = schema.target_kind();
  std::vector<Item> stack;
  stack.push_back({tree.add_node(TreeNode{0, {}, {}, {}}),
                   std::vector<std::size_t>(training_view.begin(), training_view.end()), root_fallback});
  StatBlocks blocks;
  blocks.numeric = schema.target_kind() == TargetKind::Numeric;
  blocks.classes = blocks.numeric ? 1 : schema.num_classes();

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    const int depth = tree.node(item.id).depth;
    auto marginal = empty_statistics(schema, 1);
    if (item.examples.empty()) {
      tree.mutable_node(item.id).leaf = make_leaf(marginal, &item.fallback);
      continue;
    }

    Stopwatch node_watch;
    for (std::size_t e : item.examples) update_statistics(marginal, 0, dataset.target(e));
    const StopInputs inputs = stop_inputs(marginal);
    LeafInfo leaf = make_leaf(marginal, &item.fallback);
    Choice choice = Choice::make_leaf();
    std::vector<Test> tests;
    if (!stops_before_tests(inputs, config.min_examples)) {
      tests = enumerate_tests(dataset, grid, item.examples);
      Stopwatch watch;
      blocks.allocate(tests);
      accumulate_test_major(dataset, item.examples, {}, tests, blocks);
      counters.evaluations += tests.size() * item.examples.size();
      counters.accumulate_seconds += watch.seconds();
      std::vector<double> scores(tests.size());
      for (std::size_t t = 0; t < tests.size(); ++t)
        scores[t] = compute_quality(blocks.matrix(t, tests[t], 0, schema), config.measure);
      choice = best_choice(scores, inputs, config.min_examples);
    }

    if (choice.is_leaf()) {
      tree.mutable_node(item.id).leaf = std::move(leaf);
    } else {
      const Test& test = tests[choice.test];
      Stopwatch watch;
      auto buckets = partition_examples(item.examples, test, dataset, counters);
      counters.partition_seconds += watch.seconds();
      std::vector<std::size_t> child_ids;
      for (std::size_t o = 0; o < buckets.size(); ++o) child_ids.push_back(tree.add_node(TreeNode{depth + 1, {}, {}, {}}));
      auto& node = tree.mutable_node(item.id);
      node.test = test;
      node.children = child_ids;
      node.leaf = leaf;
      for (std::size_t o = buckets.size(); o-- > 0;) stack.push_back({child_ids[o], std::move(buckets[o]), leaf});
    }
    ++counters.nodes_refined;
    counters.add_level_time(depth, node_watch.seconds());
  }
  return tree;
}

Tree grow_tree_serial(const Dataset& dataset, std::span<const std::size_t> training_view,
                      const InductionConfig& config, Counters& counters) {
  return grow_tree_serial(dataset, training_view, ThresholdGrid(dataset), config, counters);
}

SerialRun run_serial_cross_validation(const Dataset& dataset, const FoldAssignment& folds,
                                      const InductionConfig& config) {
  check_inputs(dataset, folds, config);
  SerialRun run;
  Stopwatch total;
  const ThresholdGrid grid(dataset);
  {
    Stopwatch watch;
    auto view = training_view(dataset, folds, 0);
    run.actual = grow_tree_serial(dataset, view, grid, config, run.actual_counters);
    run.actual_seconds = watch.seconds();
  }
  run.counters += run.actual_counters;
  for (int i = 1; i <= folds.folds(); ++i) {
    Stopwatch watch;
    auto view = training_view(dataset, folds, i);
    run.fold_trees.push_back(grow_tree_serial(dataset, view, grid, config, run.counters));
    run.fold_seconds.push_back(watch.seconds());
  }
  run.total_seconds = total.seconds();
  return run;
}

}  // namespace parcv
