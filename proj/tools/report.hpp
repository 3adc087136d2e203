#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "fsind/spec.hpp"

namespace fsind::cli {

using Json = nlohmann::ordered_json;

/// A report as written by every command: run metadata, uniform rows, a summary
/// whose counts are tallies of the rows, and a failure list.
struct Report {
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  Json summary = Json::object();
  std::vector<Json> failures;
};

Json spec_json(const GroupSpec& spec);

void write_json(const Report& report, std::ostream& out);
/// One header line with the column names, then one line per row; nested
/// values are written as compact JSON and strings are quoted when needed.
void write_csv(const Report& report, std::ostream& out);

}  // namespace fsind::cli
