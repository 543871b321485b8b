#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parcv/data.hpp"
#include "parcv/forest.hpp"
#include "parcv/induction.hpp"

namespace parcv {

// Per-example costs measured from accumulated phase time over counter values.
struct CostModel {
  double t_e = 0.0;  // seconds per example-test statistics update
  double t_p = 0.0;  // seconds per example partitioned
  std::size_t a = 0;  // candidate tests at the root
  int n = 0;
};

struct SpeedupBound {
  double worst = 0.0;  // min(n, 1 + a t_e / t_p)
  double best = 0.0;   // n
};

// Throws std::invalid_argument for n < 2 or any non-positive input.
SpeedupBound speedup_bound(int n, double a, double t_e, double t_p);

struct LevelRow {
  int level = 0;
  double parallel_seconds = 0.0;
  double serial_seconds = 0.0;
  double f = 0.0;
};

// Rows cover every level seen by either run; f comes from the forest.
std::vector<LevelRow> per_level_profile(const Forest& forest, std::span<const double> serial_level_seconds);

enum class RunMode { Serial, Parallel, Both };
RunMode parse_run_mode(const std::string& name);

struct BenchOptions {
  int repeats = 3;
  RunMode mode = RunMode::Both;
  // Below this median T_a, repeats are escalated (x5, capped at max_repeats).
  double min_measurable_seconds = 1e-3;
  int max_repeats = 25;
};

struct TimingReport {
  int n = 0;
  std::size_t examples = 0;
  std::size_t root_tests = 0;
  std::string variant;
  int repeats = 0;

  double t_actual = 0.0;
  std::optional<double> t_serial;
  std::optional<double> t_parallel;
  std::optional<double> speedup;            // T_s / T_p
  std::optional<double> overhead_serial;    // 100 (T_s / T_a - 1)
  std::optional<double> overhead_parallel;  // 100 (T_p / T_a - 1)

  std::uint64_t serial_evaluations = 0;
  std::uint64_t parallel_evaluations = 0;
  std::uint64_t serial_partitions = 0;
  std::uint64_t parallel_partitions = 0;
  std::uint64_t data_passes = 0;
  std::optional<double> counter_speedup;  // serial / parallel evaluations
  std::optional<double> slack;            // speedup / counter_speedup

  CostModel cost;
  std::optional<SpeedupBound> bound;
  std::vector<LevelRow> levels;
  std::optional<ForestMetrics> forest;
  std::vector<std::string> warnings;

  // Refills S, O_s, O_p and slack from the measured fields.
  void recompute_derived();
};

double overhead_percent(double t_procedure, double t_actual);

TimingReport measure_timings(const Dataset& dataset, const InductionConfig& config, const BenchOptions& options = {});

ordered_json to_json(const TimingReport& report);
TimingReport timing_report_from_json(const ordered_json& j);
void write_csv(std::ostream& out, const TimingReport& report);
void write_profile_csv(std::ostream& out, std::span<const LevelRow> levels);

enum class Regime { Stable, Unstable, Mixed };
Regime parse_regime(const std::string& name);

// Binary attributes x0..x{a-1}, class neg/pos.
//   stable:   class = x0 or (x1 and x2), with P(x2) = 0.8 so every level has a
//             clear winner; the rest are irrelevant coin flips.
//   unstable: class is a coin flip independent of the attributes.
//   mixed:    class = x0 and coin flip (deterministic root, noise below).
Dataset generate_synthetic(Regime regime, std::size_t examples, std::size_t attributes, std::uint64_t seed);

}  // namespace parcv
