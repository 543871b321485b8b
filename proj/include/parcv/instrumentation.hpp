#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace parcv {

// Operation counters and phase timers shared by the serial and parallel
// builders. Both code paths pay the same bookkeeping cost.
struct Counters {
  std::uint64_t evaluations = 0;    // example-test statistics updates
  std::uint64_t partition_ops = 0;  // examples sorted into a child bucket
  std::uint64_t data_passes = 0;    // level-wise sweeps over the dataset
  std::uint64_t nodes_refined = 0;
  double accumulate_seconds = 0.0;
  double partition_seconds = 0.0;
  std::vector<double> level_seconds;  // refinement time per depth

  void add_level_time(int depth, double seconds) {
    if (level_seconds.size() <= static_cast<std::size_t>(depth)) level_seconds.resize(depth + 1, 0.0);
    level_seconds[depth] += seconds;
  }

  Counters& operator+=(const Counters& other) {
    evaluations += other.evaluations;
    partition_ops += other.partition_ops;
    data_passes += other.data_passes;
    nodes_refined += other.nodes_refined;
    accumulate_seconds += other.accumulate_seconds;
    partition_seconds += other.partition_seconds;
    for (std::size_t d = 0; d < other.level_seconds.size(); ++d)
      add_level_time(static_cast<int>(d), other.level_seconds[d]);
    return *this;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace parcv
