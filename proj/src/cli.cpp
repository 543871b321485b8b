#include "parcv/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parcv/bench.hpp"
#include "parcv/evaluation.hpp"
#include "parcv/induction.hpp"
#include "parcv/verify.hpp"

namespace parcv {

namespace {

struct Options {
  std::string input;
  std::string target;
  bool tab = false;
  std::vector<std::string> discrete;
  std::vector<std::string> numeric;
  int folds = 10;
  std::uint64_t seed = 1;
  bool stratified = false;
  std::string measure = "gain";
  std::size_t min_examples = 2;
  std::string variant = "depth";
  std::string mode = "both";
  int repeats = 3;
  std::string output;
  std::string format = "json";
  bool verify_stats = false;
  std::string forest_output;
  // gen / synthetic bench input
  std::string regime;
  std::size_t rows = 1000;
  std::size_t attributes = 20;
  int count = 50;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_data_options(CLI::App& command, Options& o, bool required) {
  auto* input = command.add_option("--input", o.input, "Delimiter-separated data file with a header row");
  if (required) input->required();
  command.add_option("--target", o.target, "Target column name");
  command.add_flag("--tab", o.tab, "Tab-separated input instead of comma");
  command.add_option("--discrete", o.discrete, "Force these columns to be discrete");
  command.add_option("--numeric", o.numeric, "Force these columns to be numeric");
}

void add_induction_options(CLI::App& command, Options& o) {
  command.add_option("--folds", o.folds, "Number of folds n (>= 2)")->check(CLI::Range(2, 1 << 30));
  command.add_option("--seed", o.seed, "Seed for fold assignment and synthetic data");
  command.add_flag("--stratified", o.stratified, "Stratify folds by class");
  command.add_option("--measure", o.measure, "Quality measure")->check(CLI::IsMember({"gain", "gainratio", "variance"}));
  command.add_option("--min-examples", o.min_examples, "Smallest training slice that may be split")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  command.add_option("--variant", o.variant, "Forest builder")->check(CLI::IsMember({"depth", "level"}));
  command.add_flag("--verify-stats", o.verify_stats, "Cross-check subtraction against direct accumulation");
}

void add_output_options(CLI::App& command, Options& o) {
  command.add_option("--output", o.output, "Write the result here instead of stdout");
  command.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

InductionConfig make_config(const Options& o) {
  InductionConfig config;
  config.measure = parse_measure(o.measure);
  config.min_examples = o.min_examples;
  config.folds = o.folds;
  config.seed = o.seed;
  config.stratified = o.stratified;
  config.variant = parse_variant(o.variant);
  config.verify_mode = o.verify_stats;
  return config;
}

Dataset load(const Options& o) {
  if (o.target.empty()) throw UsageError("--target is required with --input");
  LoadOptions load;
  load.target = o.target;
  load.delimiter = o.tab ? '\t' : ',';
  for (const auto& name : o.discrete) load.forced_kinds[name] = AttributeKind::Discrete;
  for (const auto& name : o.numeric) load.forced_kinds[name] = AttributeKind::Numeric;
  load.target_kind = o.measure == "variance" ? TargetKind::Numeric : TargetKind::Class;
  return load_dataset_file(o.input, load);
}

Dataset load_or_generate(const Options& o) {
  if (!o.input.empty()) return load(o);
  if (o.regime.empty()) throw UsageError("either --input or --regime is required");
  return generate_synthetic(parse_regime(o.regime), o.rows, o.attributes, o.seed);
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw DataError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

int run_train(const Options& o, std::ostream& out) {
  const Dataset dataset = load(o);
  const InductionConfig config = make_config(o);
  Counters counters;
  std::vector<std::size_t> all(dataset.size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  const Tree tree = grow_tree_serial(dataset, all, config, counters);
  Sink sink(o.output, out);
  *sink << to_json(tree).dump(2) << '\n';
  return kExitOk;
}

int run_xval(const Options& o, std::ostream& out) {
  const Dataset dataset = load(o);
  const InductionConfig config = make_config(o);
  config.validate(dataset.schema());
  const FoldAssignment folds = assign_folds(dataset, config.folds, config.seed, config.stratified);
  const RunMode mode = parse_run_mode(o.mode);

  std::optional<EvaluationReport> parallel, serial;
  if (mode != RunMode::Serial) {
    const Forest forest = grow_forest(dataset, folds, config);
    parallel = cross_validation_estimate(forest, dataset, folds);
    if (!o.forest_output.empty()) {
      Sink forest_sink(o.forest_output, out);
      *forest_sink << to_json(forest).dump(2) << '\n';
    }
  }
  if (mode != RunMode::Parallel) {
    const SerialRun run = run_serial_cross_validation(dataset, folds, config);
    serial = cross_validation_estimate(std::span<const Tree>(run.fold_trees), dataset, folds);
  }
  if (parallel && serial && !(*parallel == *serial))
    throw VerificationError("parallel and serial cross-validation reports differ");

  const EvaluationReport& report = parallel ? *parallel : *serial;
  Sink sink(o.output, out);
  if (o.format == "csv")
    write_csv(*sink, report);
  else
    *sink << to_json(report, dataset.schema()).dump(2) << '\n';
  return kExitOk;
}

int run_bench(const Options& o, std::ostream& out) {
  const Dataset dataset = load_or_generate(o);
  const InductionConfig config = make_config(o);
  BenchOptions bench;
  bench.repeats = o.repeats;
  bench.mode = parse_run_mode(o.mode);
  const TimingReport report = measure_timings(dataset, config, bench);
  Sink sink(o.output, out);
  if (o.format == "csv") {
    write_csv(*sink, report);
    *sink << '\n';
    write_profile_csv(*sink, report.levels);
  } else {
    *sink << to_json(report).dump(2) << '\n';
  }
  return kExitOk;
}

int run_gen(const Options& o, std::ostream& out) {
  if (o.regime.empty()) throw UsageError("--regime is required");
  const Dataset dataset = generate_synthetic(parse_regime(o.regime), o.rows, o.attributes, o.seed);
  Sink sink(o.output, out);
  write_dataset(*sink, dataset, o.tab ? '\t' : ',');
  return kExitOk;
}

int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::size_t checked = 0, failed = 0;
  auto check = [&](const std::string& label, const Dataset& dataset, const InductionConfig& config) {
    const FoldAssignment folds = assign_folds(dataset, config.folds, config.seed, config.stratified);
    const VerifyOutcome outcome = verify_dataset(dataset, folds, config);
    ++checked;
    if (outcome.ok()) return;
    ++failed;
    for (const auto& failure : outcome.failures) err << label << ": " << failure << '\n';
  };

  if (!o.input.empty()) {
    const Dataset dataset = load(o);
    check(o.input, dataset, make_config(o));
  } else {
    if (o.count < 1) throw UsageError("--count must be positive");
    const int fold_choices[] = {2, 3, 5, 10};
    for (int k = 0; k < o.count; ++k) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(k);
      const Dataset dataset = generate_random_dataset(seed);
      InductionConfig config = make_config(o);
      config.measure = o.measure == "variance" ? Measure::InformationGain : config.measure;
      config.folds = fold_choices[k % 4];
      config.seed = seed;
      check("dataset seed " + std::to_string(seed), dataset, config);
    }
  }
  out << "verified " << checked << " dataset(s), " << failed << " with mismatches\n";
  return failed == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decision-tree induction with cross-validation built in parallel to the actual tree", "parcv"};
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "Build the tree on all data and print it as JSON");
  add_data_options(*train, o, true);
  add_induction_options(*train, o);
  add_output_options(*train, o);

  auto* xval = app.add_subcommand("xval", "Cross-validate via the parallel forest and report accuracy or MSE");
  add_data_options(*xval, o, true);
  add_induction_options(*xval, o);
  add_output_options(*xval, o);
  xval->add_option("--mode", o.mode, "Which procedure to run")->check(CLI::IsMember({"serial", "parallel", "both"}));
  xval->add_option("--forest-output", o.forest_output, "Also write the forest as JSON here");

  auto* bench = app.add_subcommand("bench", "Time serial vs parallel cross-validation");
  add_data_options(*bench, o, false);
  add_induction_options(*bench, o);
  add_output_options(*bench, o);
  bench->add_option("--mode", o.mode, "Which procedures to time")->check(CLI::IsMember({"serial", "parallel", "both"}));
  bench->add_option("--repeats", o.repeats, "Timed repetitions (median reported)")->check(CLI::PositiveNumber);
  bench->add_option("--regime", o.regime, "Generate synthetic data instead of --input")
      ->check(CLI::IsMember({"stable", "unstable", "mixed"}));
  bench->add_option("--rows", o.rows, "Synthetic example count")->check(CLI::PositiveNumber);
  bench->add_option("--attributes", o.attributes, "Synthetic attribute count")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset");
  gen->add_option("--regime", o.regime, "stable, unstable or mixed")
      ->required()
      ->check(CLI::IsMember({"stable", "unstable", "mixed"}));
  gen->add_option("--rows", o.rows, "Example count")->check(CLI::PositiveNumber);
  gen->add_option("--attributes", o.attributes, "Attribute count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--output", o.output, "Write here instead of stdout");
  gen->add_flag("--tab", o.tab, "Tab-separated output");

  auto* verify = app.add_subcommand("verify", "Check the parallel forest against the serial oracle");
  add_data_options(*verify, o, false);
  add_induction_options(*verify, o);
  verify->add_option("--count", o.count, "Random datasets to check when no --input is given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*train) return run_train(o, out);
    if (*xval) return run_xval(o, out);
    if (*bench) return run_bench(o, out);
    if (*gen) return run_gen(o, out);
    if (*verify) return run_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitData;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace parcv
