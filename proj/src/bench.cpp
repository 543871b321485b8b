#include "parcv/bench.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace parcv {

SpeedupBound speedup_bound(int n, double a, double t_e, double t_p) {
  if (n < 2) throw std::invalid_argument("speedup bound needs n >= 2");
  if (!(a > 0) || !(t_e > 0) || !(t_p > 0)) throw std::invalid_argument("speedup bound needs positive a, t_e, t_p");
  const double folds = static_cast<double>(n);
  return {std::min(folds, 1.0 + a * t_e / t_p), folds};
}

std::vector<LevelRow> per_level_profile(const Forest& forest, std::span<const double> serial_level_seconds) {
  const auto metrics = forest_metrics(forest);
  const auto& parallel = forest.level_seconds();
  std::size_t levels = std::max({parallel.size(), serial_level_seconds.size(), metrics.f.size()});
  std::vector<LevelRow> rows;
  for (std::size_t level = 0; level < levels; ++level) {
    LevelRow row;
    row.level = static_cast<int>(level);
    row.parallel_seconds = level < parallel.size() ? parallel[level] : 0.0;
    row.serial_seconds = level < serial_level_seconds.size() ? serial_level_seconds[level] : 0.0;
    row.f = level < metrics.f.size() ? metrics.f[level] : 0.0;
    rows.push_back(row);
  }
  return rows;
}

RunMode parse_run_mode(const std::string& name) {
  if (name == "serial") return RunMode::Serial;
  if (name == "parallel") return RunMode::Parallel;
  if (name == "both") return RunMode::Both;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

double overhead_percent(double t_procedure, double t_actual) { return 100.0 * (t_procedure / t_actual - 1.0); }

void TimingReport::recompute_derived() {
  speedup.reset();
  overhead_serial.reset();
  overhead_parallel.reset();
  slack.reset();
  if (t_serial) overhead_serial = overhead_percent(*t_serial, t_actual);
  if (t_parallel) overhead_parallel = overhead_percent(*t_parallel, t_actual);
  if (t_serial && t_parallel) speedup = *t_serial / *t_parallel;
  if (speedup && counter_speedup) slack = *speedup / *counter_speedup;
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

TimingReport measure_timings(const Dataset& dataset, const InductionConfig& config, const BenchOptions& options) {
  config.validate(dataset.schema());
  if (options.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  const FoldAssignment folds = assign_folds(dataset, config.folds, config.seed, config.stratified);
  const bool run_serial = options.mode != RunMode::Parallel;
  const bool run_parallel = options.mode != RunMode::Serial;

  TimingReport report;
  report.n = config.folds;
  report.examples = dataset.size();
  report.variant = to_string(config.variant);
  {
    const ThresholdGrid grid(dataset);
    auto all = training_view(dataset, folds, 0);
    report.root_tests = enumerate_tests(dataset, grid, all).size();
  }

  int repeats = options.repeats;
  std::vector<double> actual_times, serial_times, parallel_times;
  Counters serial_counters, parallel_counters;
  std::vector<double> serial_levels;
  Forest forest;
  while (true) {
    actual_times.clear();
    serial_times.clear();
    parallel_times.clear();
    for (int r = 0; r < repeats; ++r) {
      {
        Counters counters;
        Stopwatch watch;
        auto view = training_view(dataset, folds, 0);
        grow_tree_serial(dataset, view, config, counters);
        actual_times.push_back(watch.seconds());
      }
      if (run_serial) {
        Stopwatch watch;
        auto run = run_serial_cross_validation(dataset, folds, config);
        serial_times.push_back(watch.seconds());
        serial_counters = run.counters;
        serial_levels = run.counters.level_seconds;
      }
      if (run_parallel) {
        Counters counters;
        Stopwatch watch;
        forest = grow_forest(dataset, folds, config, &counters);
        parallel_times.push_back(watch.seconds());
        parallel_counters = counters;
      }
    }
    if (median(actual_times) >= options.min_measurable_seconds || repeats >= options.max_repeats) break;
    const int escalated = std::min(options.max_repeats, repeats * 5);
    report.warnings.push_back("actual-tree time " + std::to_string(median(actual_times)) +
                              " s is near timer resolution; repeats raised from " + std::to_string(repeats) + " to " +
                              std::to_string(escalated));
    repeats = escalated;
  }

  report.repeats = repeats;
  report.t_actual = median(actual_times);
  if (run_serial) {
    report.t_serial = median(serial_times);
    report.serial_evaluations = serial_counters.evaluations;
    report.serial_partitions = serial_counters.partition_ops;
  }
  if (run_parallel) {
    report.t_parallel = median(parallel_times);
    report.parallel_evaluations = parallel_counters.evaluations;
    report.parallel_partitions = parallel_counters.partition_ops;
    report.data_passes = parallel_counters.data_passes;
    report.forest = forest_metrics(forest);
    report.levels = per_level_profile(forest, serial_levels);
  }
  if (run_serial && run_parallel && report.parallel_evaluations > 0)
    report.counter_speedup =
        static_cast<double>(report.serial_evaluations) / static_cast<double>(report.parallel_evaluations);

  const Counters& cost_source = run_parallel ? parallel_counters : serial_counters;
  report.cost.n = config.folds;
  report.cost.a = report.root_tests;
  if (cost_source.evaluations > 0) report.cost.t_e = cost_source.accumulate_seconds / cost_source.evaluations;
  if (cost_source.partition_ops > 0) report.cost.t_p = cost_source.partition_seconds / cost_source.partition_ops;
  if (report.cost.t_e > 0 && report.cost.t_p > 0 && report.cost.a > 0)
    report.bound = speedup_bound(config.folds, static_cast<double>(report.cost.a), report.cost.t_e, report.cost.t_p);
  else
    report.warnings.push_back("cost model incomplete (no tests evaluated or nothing partitioned); bound omitted");

  report.recompute_derived();
  return report;
}

namespace {

template <typename T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

ordered_json to_json(const TimingReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["N"] = report.examples;
  j["a"] = report.root_tests;
  j["variant"] = report.variant;
  j["repeats"] = report.repeats;
  j["T_a"] = report.t_actual;
  j["T_s"] = optional_json(report.t_serial);
  j["T_p"] = optional_json(report.t_parallel);
  j["S"] = optional_json(report.speedup);
  j["O_s"] = optional_json(report.overhead_serial);
  j["O_p"] = optional_json(report.overhead_parallel);
  j["counters"] = {{"serial_evaluations", report.serial_evaluations},
                   {"parallel_evaluations", report.parallel_evaluations},
                   {"serial_partitions", report.serial_partitions},
                   {"parallel_partitions", report.parallel_partitions},
                   {"data_passes", report.data_passes}};
  j["counter_speedup"] = optional_json(report.counter_speedup);
  j["slack"] = optional_json(report.slack);
  j["cost_model"] = {{"t_e", report.cost.t_e}, {"t_p", report.cost.t_p}, {"a", report.cost.a}, {"n", report.cost.n}};
  if (report.bound)
    j["speedup_bound"] = {{"worst", report.bound->worst}, {"best", report.bound->best}};
  else
    j["speedup_bound"] = nullptr;
  if (report.forest) {
    j["forest"] = {{"nodes", report.forest->forest_nodes},
                   {"test_nodes", report.forest->test_nodes},
                   {"bifurcations", report.forest->bifurcations},
                   {"depth", report.forest->depth},
                   {"fold0_tree_nodes", report.forest->fold0_tree_nodes}};
  }
  j["levels"] = ordered_json::array();
  for (const auto& row : report.levels)
    j["levels"].push_back(
        {{"level", row.level}, {"t_r_parallel", row.parallel_seconds}, {"t_r_serial", row.serial_seconds}, {"f", row.f}});
  j["warnings"] = report.warnings;
  return j;
}

TimingReport timing_report_from_json(const ordered_json& j) {
  TimingReport report;
  report.n = j.at("n").get<int>();
  report.examples = j.at("N").get<std::size_t>();
  report.root_tests = j.at("a").get<std::size_t>();
  report.variant = j.at("variant").get<std::string>();
  report.repeats = j.at("repeats").get<int>();
  report.t_actual = j.at("T_a").get<double>();
  report.t_serial = optional_from<double>(j, "T_s");
  report.t_parallel = optional_from<double>(j, "T_p");
  report.speedup = optional_from<double>(j, "S");
  report.overhead_serial = optional_from<double>(j, "O_s");
  report.overhead_parallel = optional_from<double>(j, "O_p");
  const auto& counters = j.at("counters");
  report.serial_evaluations = counters.at("serial_evaluations").get<std::uint64_t>();
  report.parallel_evaluations = counters.at("parallel_evaluations").get<std::uint64_t>();
  report.serial_partitions = counters.at("serial_partitions").get<std::uint64_t>();
  report.parallel_partitions = counters.at("parallel_partitions").get<std::uint64_t>();
  report.data_passes = counters.at("data_passes").get<std::uint64_t>();
  report.counter_speedup = optional_from<double>(j, "counter_speedup");
  report.slack = optional_from<double>(j, "slack");
  const auto& cost = j.at("cost_model");
  report.cost = {cost.at("t_e").get<double>(), cost.at("t_p").get<double>(), cost.at("a").get<std::size_t>(),
                 cost.at("n").get<int>()};
  if (!j.at("speedup_bound").is_null())
    report.bound = SpeedupBound{j["speedup_bound"].at("worst").get<double>(), j["speedup_bound"].at("best").get<double>()};
  for (const auto& row : j.at("levels"))
    report.levels.push_back({row.at("level").get<int>(), row.at("t_r_parallel").get<double>(),
                             row.at("t_r_serial").get<double>(), row.at("f").get<double>()});
  report.warnings = j.at("warnings").get<std::vector<std::string>>();
  return report;
}

void write_csv(std::ostream& out, const TimingReport& report) {
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  auto cell = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  out << "n,N,a,variant,repeats,T_a,T_s,T_p,S,O_s,O_p,serial_evaluations,parallel_evaluations,"
         "serial_partitions,parallel_partitions,data_passes,counter_speedup,t_e,t_p,bound_worst,bound_best\n";
  out << report.n << ',' << report.examples << ',' << report.root_tests << ',' << report.variant << ','
      << report.repeats << ',' << num(report.t_actual) << ',' << cell(report.t_serial) << ','
      << cell(report.t_parallel) << ',' << cell(report.speedup) << ',' << cell(report.overhead_serial) << ','
      << cell(report.overhead_parallel) << ',' << report.serial_evaluations << ',' << report.parallel_evaluations
      << ',' << report.serial_partitions << ',' << report.parallel_partitions << ',' << report.data_passes << ','
      << cell(report.counter_speedup) << ',' << num(report.cost.t_e) << ',' << num(report.cost.t_p) << ','
      << (report.bound ? num(report.bound->worst) : "") << ',' << (report.bound ? num(report.bound->best) : "") << '\n';
}

void write_profile_csv(std::ostream& out, std::span<const LevelRow> levels) {
  out << "level,t_r_parallel,t_r_serial,f\n";
  for (const auto& row : levels)
    out << row.level << ',' << row.parallel_seconds << ',' << row.serial_seconds << ',' << row.f << '\n';
}

Regime parse_regime(const std::string& name) {
  if (name == "stable") return Regime::Stable;
  if (name == "unstable") return Regime::Unstable;
  if (name == "mixed") return Regime::Mixed;
  throw std::invalid_argument("unknown regime '" + name + "'");
}

Dataset generate_synthetic(Regime regime, std::size_t examples, std::size_t attributes, std::uint64_t seed) {
  if (examples < 1) throw std::invalid_argument("synthetic dataset needs at least one example");
  if (attributes < 1) throw std::invalid_argument("synthetic dataset needs at least one attribute");
  std::mt19937_64 rng(seed);
  std::vector<Attribute> schema_attributes;
  std::vector<double> probability(attributes, 0.5);
  if (regime == Regime::Stable && attributes >= 3) probability[2] = 0.8;
  if (regime == Regime::Stable && attributes == 2) probability[1] = 0.8;
  for (std::size_t a = 0; a < attributes; ++a)
    schema_attributes.push_back({"x" + std::to_string(a), AttributeKind::Discrete, {"0", "1"}});

  std::vector<std::vector<double>> columns(attributes, std::vector<double>(examples));
  std::vector<double> targets(examples);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t e = 0; e < examples; ++e) {
    for (std::size_t a = 0; a < attributes; ++a)
      columns[a][e] = std::bernoulli_distribution(probability[a])(rng) ? 1.0 : 0.0;
    auto x = [&](std::size_t a) { return columns[a][e] > 0.5; };
    bool positive = false;
    switch (regime) {
      case Regime::Stable:
        if (attributes == 1)
          positive = x(0);
        else if (attributes == 2)
          positive = x(0) || x(1);
        else
          positive = x(0) || (x(1) && x(2));
        break;
      case Regime::Unstable: positive = coin(rng); break;
      case Regime::Mixed: positive = x(0) && coin(rng); break;
    }
    targets[e] = positive ? 1.0 : 0.0;
  }
  return Dataset(Schema(std::move(schema_attributes), Target{"class", TargetKind::Class, {"neg", "pos"}}),
                 std::move(columns), std::move(targets));
}

}  // namespace parcv
