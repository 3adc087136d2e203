#include "report.hpp"

namespace fsind::cli {

namespace {

std::string csv_field(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

Json spec_json(const GroupSpec& spec) {
  Json out;
  if (spec.is_quaternion()) {
    out["family"] = "quaternion";
    out["n"] = spec.quaternion().n;
  } else {
    const auto& mc = spec.metacyclic();
    out["family"] = "metacyclic";
    out["k"] = mc.k;
    out["q"] = mc.q;
    out["n"] = mc.n;
    out["l"] = mc.l;
  }
  out["name"] = spec.to_string();
  return out;
}

void write_json(const Report& report, std::ostream& out) {
  Json doc;
  doc["meta"] = report.meta;
  doc["rows"] = Json::array();
  for (const auto& row : report.rows) doc["rows"].push_back(row);
  doc["summary"] = report.summary;
  doc["failures"] = Json::array();
  for (const auto& f : report.failures) doc["failures"].push_back(f);
  out << doc.dump(2) << "\n";
}

void write_csv(const Report& report, std::ostream& out) {
  for (size_t c = 0; c < report.columns.size(); ++c) out << (c ? "," : "") << report.columns[c];
  out << "\n";
  for (const auto& row : report.rows) {
    for (size_t c = 0; c < report.columns.size(); ++c) {
      const auto& name = report.columns[c];
      Json value = row.contains(name) ? row[name] : Json();
      // specs print by name so each row stays one line
      if (name == "spec" && value.is_object()) value = value["name"];
      out << (c ? "," : "") << csv_field(value);
    }
    out << "\n";
  }
}

}  // namespace fsind::cli
