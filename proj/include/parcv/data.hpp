#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parcv/errors.hpp"

namespace parcv {

enum class AttributeKind { Discrete, Numeric };
enum class TargetKind { Class, Numeric };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;
  std::vector<std::string> domain;  // discrete attributes only; value code = index

  bool operator==(const Attribute&) const = default;
};

struct Target {
  std::string name;
  TargetKind kind = TargetKind::Class;
  std::vector<std::string> classes;  // class targets only; class code = index

  bool operator==(const Target&) const = default;
};

class Schema {
 public:
  Schema() = default;
  // Throws DataError on duplicate names, a target that shadows an attribute,
  // an empty discrete domain, or a class target without classes.
  Schema(std::vector<Attribute> attributes, Target target);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(std::size_t i) const { return attributes_.at(i); }
  std::size_t num_attributes() const { return attributes_.size(); }
  const Target& target() const { return target_; }
  TargetKind target_kind() const { return target_.kind; }
  std::size_t num_classes() const { return target_.classes.size(); }
  std::optional<std::size_t> find_attribute(const std::string& name) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Attribute> attributes_;
  Target target_;
};

// Column-major table. Discrete values and class labels are stored as their
// domain index.
class Dataset {
 public:
  Dataset(Schema schema, std::vector<std::vector<double>> columns, std::vector<double> targets);

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return targets_.size(); }
  double value(std::size_t row, std::size_t attribute) const { return columns_[attribute][row]; }
  std::span<const double> column(std::size_t attribute) const { return columns_.at(attribute); }
  double target(std::size_t row) const { return targets_[row]; }
  std::size_t class_of(std::size_t row) const { return static_cast<std::size_t>(targets_[row]); }
  std::span<const double> targets() const { return targets_; }
  std::vector<double> row(std::size_t row) const;

 private:
  Schema schema_;
  std::vector<std::vector<double>> columns_;
  std::vector<double> targets_;
};

struct LoadOptions {
  std::string target;
  char delimiter = ',';
  std::map<std::string, AttributeKind> forced_kinds;
  // Unset: numeric when every target cell parses as a number, class otherwise.
  std::optional<TargetKind> target_kind;
};

Dataset load_dataset(std::istream& source, const LoadOptions& options);
Dataset load_dataset_file(const std::string& path, const LoadOptions& options);
void write_dataset(std::ostream& out, const Dataset& dataset, char delimiter = ',');

// Fold k (1..n) is the held-out part D_k; the training set of fold i is
// T_i = D - D_i, and the virtual fold 0 trains on all of D.
class FoldAssignment {
 public:
  FoldAssignment() = default;
  FoldAssignment(int n, std::vector<int> fold_of, std::uint64_t seed = 0, bool stratified = false);

  int folds() const { return n_; }
  std::size_t size() const { return fold_of_.size(); }
  int fold_of(std::size_t example) const { return fold_of_[example]; }
  std::span<const int> fold_map() const { return fold_of_; }
  std::uint64_t seed() const { return seed_; }
  bool stratified() const { return stratified_; }

  bool in_training(std::size_t example, int fold) const { return fold == 0 || fold_of_[example] != fold; }
  std::vector<std::size_t> part(int fold) const;
  std::size_t part_size(int fold) const;

  bool operator==(const FoldAssignment& other) const { return n_ == other.n_ && fold_of_ == other.fold_of_; }

 private:
  int n_ = 0;
  std::vector<int> fold_of_;
  std::uint64_t seed_ = 0;
  bool stratified_ = false;
};

FoldAssignment assign_folds(const Dataset& dataset, int n, std::uint64_t seed, bool stratified = false);

// Indices of T_i in dataset order; i = 0 yields every example.
std::vector<std::size_t> training_view(const Dataset& dataset, const FoldAssignment& folds, int i);

}  // namespace parcv
