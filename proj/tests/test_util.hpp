#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "parcv/data.hpp"

namespace parcv::testing {

inline Dataset parse_csv(const std::string& text, const std::string& target = "class") {
  std::istringstream in(text);
  LoadOptions options;
  options.target = target;
  return load_dataset(in, options);
}

inline Attribute binary(const std::string& name) { return {name, AttributeKind::Discrete, {"0", "1"}}; }

inline Target classes(std::vector<std::string> labels = {"neg", "pos"}) {
  return {"class", TargetKind::Class, std::move(labels)};
}

inline std::vector<std::size_t> all_rows(const Dataset& dataset) {
  std::vector<std::size_t> rows(dataset.size());
  for (std::size_t e = 0; e < rows.size(); ++e) rows[e] = e;
  return rows;
}

}  // namespace parcv::testing
