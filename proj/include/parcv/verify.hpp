#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parcv/data.hpp"
#include "parcv/induction.hpp"

namespace parcv {

// Small random dataset with a mix of discrete and numeric attributes and a
// noisy single-attribute concept: 20..200 examples, 1..8 attributes, 2..3
// classes. With `numeric_target` the label is replaced by a positive real y.
Dataset generate_random_dataset(std::uint64_t seed, bool numeric_target = false);

struct VerifyOutcome {
  bool fold_trees_match = true;   // extracted fold trees equal the serial trees
  bool variants_match = true;     // depth-first and level-wise forests identical
  bool passes_match_depth = true; // level-wise data passes == forest depth
  bool subtraction_matches = true;
  bool memory_bound_holds = true;
  bool reports_match = true;      // CV estimate from forest == from serial trees
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Runs every cross-check between the parallel builders and the serial oracle
// on one dataset. Numeric targets compare leaf means with relative tolerance
// 1e-9, and a differing choice there is reported like any other mismatch.
VerifyOutcome verify_dataset(const Dataset& dataset, const FoldAssignment& folds, const InductionConfig& config);

}  // namespace parcv
