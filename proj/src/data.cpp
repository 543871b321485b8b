#include "parcv/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace parcv {

Schema::Schema(std::vector<Attribute> attributes, Target target)
    : attributes_(std::move(attributes)), target_(std::move(target)) {
  std::unordered_set<std::string> names;
  for (const auto& attribute : attributes_) {
    if (!names.insert(attribute.name).second) throw DataError("duplicate attribute name '" + attribute.name + "'");
    if (attribute.kind == AttributeKind::Discrete && attribute.domain.empty())
      throw DataError("discrete attribute '" + attribute.name + "' has an empty domain");
  }
  if (names.count(target_.name)) throw DataError("target '" + target_.name + "' is also listed as an attribute");
  if (target_.kind == TargetKind::Class && target_.classes.empty())
    throw DataError("class target '" + target_.name + "' has no classes");
}

std::optional<std::size_t> Schema::find_attribute(const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i].name == name) return i;
  return std::nullopt;
}

Dataset::Dataset(Schema schema, std::vector<std::vector<double>> columns, std::vector<double> targets)
    : schema_(std::move(schema)), columns_(std::move(columns)), targets_(std::move(targets)) {
  if (targets_.empty()) throw DataError("dataset has no examples");
  if (columns_.size() != schema_.num_attributes())
    throw DataError("column count does not match the schema's attribute count");
  for (std::size_t a = 0; a < columns_.size(); ++a) {
    const auto& attribute = schema_.attribute(a);
    if (columns_[a].size() != targets_.size()) throw DataError("column '" + attribute.name + "' has the wrong length");
    for (double v : columns_[a]) {
      if (!std::isfinite(v)) throw DataError("non-finite value in column '" + attribute.name + "'");
      if (attribute.kind == AttributeKind::Discrete &&
          (v < 0 || v != std::floor(v) || v >= static_cast<double>(attribute.domain.size())))
        throw DataError("value outside the domain of discrete attribute '" + attribute.name + "'");
    }
  }
  for (double y : targets_) {
    if (!std::isfinite(y)) throw DataError("non-finite target value");
    if (schema_.target_kind() == TargetKind::Class &&
        (y < 0 || y != std::floor(y) || y >= static_cast<double>(schema_.num_classes())))
      throw DataError("target value outside the class domain");
  }
}

std::vector<double> Dataset::row(std::size_t r) const {
  std::vector<double> values(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) values[a] = columns_[a][r];
  return values;
}

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  s = s.substr(begin, end - begin + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delimiter, start);
    fields.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::optional<double> parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;  // column-major
  std::vector<std::size_t> line_of_row;
};

RawTable read_table(std::istream& source, char delimiter) {
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, delimiter);
    if (!have_header) {
      table.header = std::move(fields);
      for (const auto& name : table.header)
        if (name.empty()) throw DataError("empty column name in header");
      table.cells.resize(table.header.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                      " fields, found " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty())
        throw DataError("missing value at line " + std::to_string(line_no) + " (row " +
                        std::to_string(table.line_of_row.size() + 1) + "), column '" + table.header[c] + "'");
      table.cells[c].push_back(std::move(fields[c]));
    }
    table.line_of_row.push_back(line_no);
  }
  if (!have_header) throw DataError("empty input: no header row");
  if (table.line_of_row.empty()) throw DataError("input has a header but no data rows");
  return table;
}

bool all_numeric(const std::vector<std::string>& cells) {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return parse_number(c).has_value(); });
}

std::vector<double> to_numbers(const RawTable& table, std::size_t c) {
  std::vector<double> values;
  values.reserve(table.cells[c].size());
  for (std::size_t r = 0; r < table.cells[c].size(); ++r) {
    auto v = parse_number(table.cells[c][r]);
    if (!v)
      throw DataError("unparseable numeric value '" + table.cells[c][r] + "' at line " +
                      std::to_string(table.line_of_row[r]) + ", column '" + table.header[c] + "'");
    values.push_back(*v);
  }
  return values;
}

std::vector<double> to_codes(const std::vector<std::string>& cells, std::vector<std::string>& domain) {
  std::set<std::string> observed(cells.begin(), cells.end());
  domain.assign(observed.begin(), observed.end());
  std::unordered_map<std::string, double> code;
  for (std::size_t i = 0; i < domain.size(); ++i) code[domain[i]] = static_cast<double>(i);
  std::vector<double> values;
  values.reserve(cells.size());
  for (const auto& cell : cells) values.push_back(code[cell]);
  return values;
}

}  // namespace

Dataset load_dataset(std::istream& source, const LoadOptions& options) {
  RawTable table = read_table(source, options.delimiter);

  std::optional<std::size_t> target_col;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == options.target) target_col = c;
  if (!target_col) throw DataError("target column '" + options.target + "' not found in header");
  for (const auto& [name, kind] : options.forced_kinds) {
    (void)kind;
    if (std::find(table.header.begin(), table.header.end(), name) == table.header.end())
      throw DataError("column '" + name + "' named in a kind override does not exist");
  }

  std::vector<Attribute> attributes;
  std::vector<std::vector<double>> columns;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == *target_col) continue;
    Attribute attribute{table.header[c], AttributeKind::Numeric, {}};
    auto forced = options.forced_kinds.find(attribute.name);
    if (forced != options.forced_kinds.end())
      attribute.kind = forced->second;
    else
      attribute.kind = all_numeric(table.cells[c]) ? AttributeKind::Numeric : AttributeKind::Discrete;
    if (attribute.kind == AttributeKind::Numeric)
      columns.push_back(to_numbers(table, c));
    else
      columns.push_back(to_codes(table.cells[c], attribute.domain));
    attributes.push_back(std::move(attribute));
  }

  Target target{options.target, TargetKind::Class, {}};
  target.kind = options.target_kind.value_or(all_numeric(table.cells[*target_col]) ? TargetKind::Numeric
                                                                                   : TargetKind::Class);
  std::vector<double> targets = target.kind == TargetKind::Numeric ? to_numbers(table, *target_col)
                                                                   : to_codes(table.cells[*target_col], target.classes);
  return Dataset(Schema(std::move(attributes), std::move(target)), std::move(columns), std::move(targets));
}

Dataset load_dataset_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_dataset(in, options);
}

void write_dataset(std::ostream& out, const Dataset& dataset, char delimiter) {
  const auto& schema = dataset.schema();
  for (const auto& attribute : schema.attributes()) out << attribute.name << delimiter;
  out << schema.target().name << '\n';
  auto cell = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (std::size_t a = 0; a < schema.num_attributes(); ++a) {
      const auto& attribute = schema.attribute(a);
      double v = dataset.value(r, a);
      out << (attribute.kind == AttributeKind::Discrete ? attribute.domain[static_cast<std::size_t>(v)] : cell(v))
          << delimiter;
    }
    double y = dataset.target(r);
    out << (schema.target_kind() == TargetKind::Class ? schema.target().classes[static_cast<std::size_t>(y)] : cell(y))
        << '\n';
  }
}

FoldAssignment::FoldAssignment(int n, std::vector<int> fold_of, std::uint64_t seed, bool stratified)
    : n_(n), fold_of_(std::move(fold_of)), seed_(seed), stratified_(stratified) {
  if (n_ < 2) throw std::invalid_argument("fold count must be at least 2");
  std::vector<std::size_t> sizes(n_ + 1, 0);
  for (int f : fold_of_) {
    if (f < 1 || f > n_) throw std::invalid_argument("fold index outside 1..n");
    ++sizes[f];
  }
  if (fold_of_.size() >= static_cast<std::size_t>(n_))
    for (int f = 1; f <= n_; ++f)
      if (sizes[f] == 0) throw std::invalid_argument("fold " + std::to_string(f) + " is empty");
}

std::vector<std::size_t> FoldAssignment::part(int fold) const {
  if (fold < 1 || fold > n_) throw std::out_of_range("fold index outside 1..n");
  std::vector<std::size_t> members;
  for (std::size_t e = 0; e < fold_of_.size(); ++e)
    if (fold_of_[e] == fold) members.push_back(e);
  return members;
}

std::size_t FoldAssignment::part_size(int fold) const {
  return static_cast<std::size_t>(std::count(fold_of_.begin(), fold_of_.end(), fold));
}

FoldAssignment assign_folds(const Dataset& dataset, int n, std::uint64_t seed, bool stratified) {
  const std::size_t count = dataset.size();
  if (n < 2) throw std::invalid_argument("fold count must be at least 2");
  if (static_cast<std::size_t>(n) > count)
    throw std::invalid_argument("fold count " + std::to_string(n) + " exceeds example count " + std::to_string(count));
  if (stratified && dataset.schema().target_kind() != TargetKind::Class)
    throw std::invalid_argument("stratified folds require a class target");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> strata;
  if (stratified) {
    strata.resize(dataset.schema().num_classes());
    for (std::size_t e = 0; e < count; ++e) strata[dataset.class_of(e)].push_back(e);
  } else {
    strata.emplace_back(count);
    std::iota(strata[0].begin(), strata[0].end(), std::size_t{0});
  }

  // The round-robin position carries over between strata, which keeps both the
  // global and the per-stratum fold sizes within one of each other.
  std::vector<int> fold_of(count, 0);
  std::size_t position = 0;
  for (auto& stratum : strata) {
    std::shuffle(stratum.begin(), stratum.end(), rng);
    for (std::size_t e : stratum) fold_of[e] = static_cast<int>(position++ % static_cast<std::size_t>(n)) + 1;
  }
  return FoldAssignment(n, std::move(fold_of), seed, stratified);
}

std::vector<std::size_t> training_view(const Dataset& dataset, const FoldAssignment& folds, int i) {
  if (i < 0 || i > folds.folds()) throw std::out_of_range("training view index outside 0..n");
  if (folds.size() != dataset.size()) throw std::invalid_argument("fold assignment does not match the dataset size");
  std::vector<std::size_t> view;
  view.reserve(dataset.size());
  for (std::size_t e = 0; e < dataset.size(); ++e)
    if (folds.in_training(e, i)) view.push_back(e);
  return view;
}

}  // namespace parcv
