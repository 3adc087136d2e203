#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fsind/double_indicators.hpp"
#include "fsind/error.hpp"
#include "fsind/group_indicators.hpp"
#include "fsind/scan.hpp"
#include "report.hpp"

using namespace fsind;
using namespace fsind::cli;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 all checks pass, 1 a disagreement or contradiction, 2 invalid input.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

struct SpecFlags {
  int64_t k = 0, q = 0, n = 0, l = 1, quaternion = 0;

  void add(CLI::App* app) {
    app->add_option("--k", k, "order of a");
    app->add_option("--q", q, "prime order of n modulo k");
    app->add_option("--n", n, "twist: b a b^-1 = a^n");
    app->add_option("--l", l, "b has order q*l")->capture_default_str();
    app->add_option("--quaternion", quaternion, "generalized quaternion group of order 4n");
  }

  GroupSpec spec() const {
    if (quaternion != 0) {
      if (k != 0 || q != 0 || n != 0) throw InvalidSpec("--quaternion excludes --k/--q/--n");
      GroupSpec s = Quaternion{quaternion};
      validate(s);
      return s;
    }
    if (k == 0 || q == 0 || n == 0) throw InvalidSpec("give --k, --q and --n, or --quaternion");
    GroupSpec s = Metacyclic{k, q, n, l};
    validate(s);
    return s;
  }
};

struct OutputFlags {
  std::string format = "json";
  std::string out;

  void add(CLI::App* app) {
    app->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app->add_option("--out", out, "write the report here instead of stdout");
  }

  void write(const Report& report) const {
    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw InvalidSpec(fmt::format("cannot open {} for writing", out));
    }
    std::ostream& stream = out.empty() ? std::cout : file;
    if (format == "csv") {
      write_csv(report, stream);
    } else {
      write_json(report, stream);
    }
  }
};

struct GridFlags {
  GridOptions grid;
  std::string q_set = "2,3,5,7";

  void add(CLI::App* app, int64_t order_max, int64_t quat_max) {
    grid.order_max = order_max;
    grid.quat_max = quat_max;
    app->add_option("--k-max", grid.order_max, "bound on the group order kql (and 4n)")->capture_default_str();
    app->add_option("--l-max", grid.l_max, "largest l")->capture_default_str();
    app->add_option("--q-set", q_set, "comma-separated primes q")->capture_default_str();
    app->add_option("--quat-max", grid.quat_max, "largest quaternion n")->capture_default_str();
  }

  GridOptions options() const {
    GridOptions g = grid;
    g.q_set = parse_list(q_set);
    return g;
  }

  static std::vector<int64_t> parse_list(const std::string& text) {
    std::vector<int64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      try {
        out.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw InvalidSpec(fmt::format("'{}' is not an integer", item));
      }
    }
    return out;
  }
};

Json grid_json(const GridOptions& g) {
  return Json{{"order_max", g.order_max}, {"q_set", g.q_set}, {"l_max", g.l_max}, {"quat_max", g.quat_max}};
}

Json optional_json(const std::optional<int64_t>& v) { return v ? Json(*v) : Json(); }

Report start_report(const std::string& command) {
  Report r;
  r.meta["tool"] = "fsind";
  r.meta["version"] = kVersion;
  r.meta["command"] = command;
  return r;
}

int cmd_info(const SpecFlags& flags, const OutputFlags& output, const std::string& command) {
  const GroupSpec spec = flags.spec();
  auto g = make_group(spec);
  Report r = start_report(command);
  r.meta["spec"] = spec_json(spec);
  Json summary;
  summary["order"] = g->order();
  summary["exponent"] = g->exponent();
  Json center = Json::array();
  for (Elem z : g->center().elements) center.push_back(g->to_string(z));
  summary["center_order"] = g->center().order();
  summary["center"] = center;
  summary["classes"] = g->classes().size();
  std::map<int64_t, int64_t> census;
  for (const auto& cls : g->classes()) ++census[cls.size()];
  Json census_json = Json::object();
  for (auto [size, count] : census) census_json[std::to_string(size)] = count;
  summary["class_sizes"] = census_json;
  if (spec.is_metacyclic()) {
    const auto& gc = g->constants();
    summary["constants"] = Json{{"c", gc.c}, {"d_mod_kq", gc.d_mod_kq}, {"d_mod_k", gc.d_mod_k()},
                                {"d_prime", gc.d_prime}, {"h", gc.h}};
    auto split = verify_split(spec);
    summary["split"] = Json{{"gcd_c_k_over_c", split.gcd_c_kc},
                            {"gcd_q_k_over_h", split.gcd_q_kh},
                            {"part_i_applies", split.part_i_applies},
                            {"part_i_verified", split.part_i_verified ? Json(*split.part_i_verified) : Json()},
                            {"part_ii_applies", split.part_ii_applies},
                            {"part_ii_verified", split.part_ii_verified ? Json(*split.part_ii_verified) : Json()},
                            {"exhaustive", split.exhaustive}};
  }
  r.columns = {"spec", "class", "rep", "size", "centralizer_order"};
  for (size_t c = 0; c < g->classes().size(); ++c) {
    const auto& cls = g->classes()[c];
    r.rows.push_back(Json{{"spec", spec_json(spec)},
                          {"class", c},
                          {"rep", g->to_string(cls.rep)},
                          {"size", cls.size()},
                          {"centralizer_order", g->class_centralizer(static_cast<int32_t>(c))->order()}});
  }
  r.summary = summary;
  output.write(r);
  return kPass;
}

int cmd_indicators(const SpecFlags& flags, bool with_double, int64_t m_max, const std::string& text,
                   const OutputFlags& output, const std::string& command) {
  const GroupSpec spec = flags.spec();
  auto g = make_group(spec);
  if (m_max <= 0) m_max = 2 * g->exponent();
  const bool corrected = text == "corrected";
  Report r = start_report(command);
  r.meta["spec"] = spec_json(spec);
  r.meta["m_max"] = m_max;
  r.meta["formula"] = text;
  r.columns = {"spec", "table", "label", "kind", "dim", "m", "nu_formula", "nu_corrected",
               "nu_brute", "nu_centralizer", "agree"};
  int64_t agree = 0, disagree = 0;
  for (const auto& row : group_indicator_table(g, m_max)) {
    Json j{{"spec", spec_json(spec)}, {"table", "group"},    {"label", row.label},
           {"kind", "character"},     {"dim", row.degree},   {"m", row.m},
           {"nu_formula", optional_json(row.nu_formula)},     {"nu_corrected", optional_json(row.nu_formula)},
           {"nu_brute", row.nu_brute}, {"nu_centralizer", nullptr}, {"agree", row.agree}};
    (row.agree ? agree : disagree) += 1;
    if (!row.agree) r.failures.push_back(j);
    r.rows.push_back(std::move(j));
  }
  if (with_double) {
    for (const auto& row : double_indicator_table(g, m_max)) {
      const bool ok = corrected ? row.agree_corrected : row.agree;
      Json j{{"spec", spec_json(spec)},
             {"table", "double"},
             {"label", row.label},
             {"kind", kind_name(row.kind)},
             {"dim", row.dim},
             {"m", row.m},
             {"nu_formula", optional_json(corrected ? row.nu_corrected : row.nu_formula)},
             {"nu_corrected", optional_json(row.nu_corrected)},
             {"nu_brute", row.nu_brute},
             {"nu_centralizer", row.nu_centralizer},
             {"agree", ok}};
      (ok ? agree : disagree) += 1;
      if (!ok) r.failures.push_back(j);
      r.rows.push_back(std::move(j));
    }
  }
  r.summary = Json{{"rows", r.rows.size()}, {"agree", agree}, {"disagree", disagree}};
  output.write(r);
  return disagree == 0 ? kPass : kFail;
}

int cmd_verify(const VerifyOptions& options, const OutputFlags& output, const std::string& command) {
  Report r = start_report(command);
  r.meta["grid"] = grid_json(options.grid);
  r.meta["double_grid"] = grid_json(options.double_grid);
  r.meta["m_factor"] = options.m_factor;
  r.meta["structure"] = options.structure;
  r.meta["budget"] = Json{{"seconds_per_spec", options.budget.seconds_per_spec},
                          {"order_max", options.budget.order_max}};
  auto report = run_verify(options);
  r.columns = {"spec", "suite", "checked", "failed", "skipped", "skip_reason"};
  for (const auto& spec : report.specs) {
    if (spec.skipped) {
      r.rows.push_back(Json{{"spec", spec_json(spec.spec)}, {"suite", nullptr}, {"checked", 0},
                            {"failed", 0}, {"skipped", true}, {"skip_reason", spec.skip_reason}});
    }
    for (int s = 0; s < kSuiteCount; ++s) {
      const auto& t = spec.tallies[s];
      if (t.checked == 0) continue;
      r.rows.push_back(Json{{"spec", spec_json(spec.spec)}, {"suite", suite_name(static_cast<Suite>(s))},
                            {"checked", t.checked}, {"failed", t.failed}, {"skipped", spec.skipped},
                            {"skip_reason", spec.skipped ? Json(spec.skip_reason) : Json()}});
    }
    for (const auto& f : spec.failures) {
      r.failures.push_back(Json{{"spec", spec_json(spec.spec)}, {"suite", suite_name(f.suite)}, {"detail", f.detail}});
    }
  }
  Json suites = Json::object();
  for (int s = 0; s < kSuiteCount; ++s) {
    suites[suite_name(static_cast<Suite>(s))] =
        Json{{"checked", report.totals[s].checked}, {"failed", report.totals[s].failed}};
  }
  r.summary = Json{{"specs", report.specs.size()}, {"skipped", report.skipped},
                   {"failed", report.failed()}, {"suites", suites}};
  if (report.specs.empty()) r.summary["note"] = "zero specs in the grid";
  output.write(r);
  return report.failed() == 0 ? kPass : kFail;
}

int cmd_scan_negatives(const NegativesOptions& options, const OutputFlags& output, const std::string& command) {
  Report r = start_report(command);
  r.meta["k_max"] = options.k_max;
  r.meta["q_set"] = options.q_set;
  r.meta["l_max"] = options.l_max;
  r.meta["m_factor"] = options.m_factor;
  auto rows = scan_negatives(options);
  r.columns = {"spec", "predicted", "found", "witness_m", "witness_label", "witness_nu", "agree", "skipped"};
  int64_t positives = 0, disagree = 0, skipped = 0;
  for (const auto& row : rows) {
    Json j{{"spec", spec_json(row.spec)},
           {"predicted", row.predicted},
           {"found", row.found},
           {"witness_m", row.witness ? Json(row.witness->m) : Json()},
           {"witness_label", row.witness ? Json(row.witness->label) : Json()},
           {"witness_nu", row.witness ? Json(row.witness->nu) : Json()},
           {"agree", row.agree()},
           {"skipped", row.skipped}};
    positives += row.found;
    skipped += row.skipped;
    if (!row.skipped && !row.agree()) {
      ++disagree;
      r.failures.push_back(j);
    }
    r.rows.push_back(std::move(j));
  }
  r.summary = Json{{"specs", rows.size()}, {"negatives_found", positives}, {"disagree", disagree}, {"skipped", skipped}};
  output.write(r);
  return disagree == 0 ? kPass : kFail;
}

int cmd_scan_orthogonality(const GridOptions& grid, int jobs, const OutputFlags& output, const std::string& command) {
  Report r = start_report(command);
  r.meta["grid"] = grid_json(grid);
  auto rows = scan_orthogonality(grid, jobs);
  r.columns = {"spec", "totally_orthogonal", "dihedral", "classified", "agree"};
  int64_t orthogonal = 0, disagree = 0;
  for (const auto& row : rows) {
    Json j{{"spec", spec_json(row.spec)}, {"totally_orthogonal", row.totally_orthogonal},
           {"dihedral", row.dihedral}, {"classified", row.classified}, {"agree", row.agree()}};
    orthogonal += row.totally_orthogonal;
    if (!row.agree()) {
      ++disagree;
      r.failures.push_back(j);
    }
    r.rows.push_back(std::move(j));
  }
  r.summary = Json{{"specs", rows.size()}, {"totally_orthogonal", orthogonal}, {"disagree", disagree}};
  output.write(r);
  return disagree == 0 ? kPass : kFail;
}

int cmd_scan_splitting(int64_t k_max, const std::vector<int64_t>& q_set, const OutputFlags& output,
                       const std::string& command) {
  Report r = start_report(command);
  r.meta["k_max"] = k_max;
  r.meta["q_set"] = q_set;
  auto scan = scan_splitting(k_max, q_set);
  r.columns = {"spec", "c", "d_mod_k", "h", "gcd_c_k_over_c", "gcd_q_k_over_h", "part_ii_verified",
               "conjecture_counterexample"};
  int64_t counterexamples = 0;
  for (const auto& row : scan.findings) {
    Json j{{"spec", spec_json(row.spec)},
           {"c", row.report.c},
           {"d_mod_k", row.report.d_mod_k},
           {"h", row.report.h},
           {"gcd_c_k_over_c", row.report.gcd_c_kc},
           {"gcd_q_k_over_h", row.report.gcd_q_kh},
           {"part_ii_verified", row.report.part_ii_verified ? Json(*row.report.part_ii_verified) : Json()},
           {"conjecture_counterexample", row.conjecture_counterexample}};
    counterexamples += row.conjecture_counterexample;
    if (row.conjecture_counterexample) r.failures.push_back(j);
    r.rows.push_back(std::move(j));
  }
  r.summary = Json{{"specs_scanned", scan.specs_scanned}, {"findings", scan.findings.size()},
                   {"conjecture_counterexamples", counterexamples}};
  output.write(r);
  return counterexamples == 0 ? kPass : kFail;
}

int cmd_scan_arithmetic(int64_t k_max, const std::vector<int64_t>& q_set, const OutputFlags& output,
                        const std::string& command) {
  Report r = start_report(command);
  r.meta["k_max"] = k_max;
  r.meta["q_set"] = q_set;
  auto scan = scan_arithmetic(k_max, q_set);
  r.columns = {"spec", "identity", "printed_only", "holds"};
  for (const auto& row : scan.failures) {
    Json j{{"spec", spec_json(row.spec)}, {"identity", row.check.identity},
           {"printed_only", row.check.printed_only}, {"holds", row.check.holds}};
    r.failures.push_back(j);
    r.rows.push_back(std::move(j));
  }
  r.summary = Json{{"specs_scanned", scan.specs_scanned}, {"checks", scan.checks},
                   {"failed", scan.failures.size()}, {"failed_printed_only", scan.failed(true)}};
  output.write(r);
  return scan.failures.empty() ? kPass : kFail;
}

std::string command_echo(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += i == 0 ? "fsind" : argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher Frobenius-Schur indicators of metacyclic and generalized quaternion groups and their doubles"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SpecFlags spec_flags;
  OutputFlags output;

  auto* info = app.add_subcommand("info", "order, center, constants, classes and splitting of one group");
  spec_flags.add(info);
  output.add(info);

  auto* indicators = app.add_subcommand("indicators", "indicator table with formula and brute-force columns");
  spec_flags.add(indicators);
  output.add(indicators);
  bool with_double = false;
  int64_t m_max = 0;
  std::string text = "printed";
  indicators->add_flag("--double", with_double, "include every irreducible module of the double");
  indicators->add_option("--m-max", m_max, "largest m (default 2 * exponent)");
  indicators->add_option("--formula", text, "double case tables to compare: printed or corrected")
      ->check(CLI::IsMember({"printed", "corrected"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run every invariant suite over a parameter grid");
  GridFlags verify_grid;
  verify_grid.add(verify, 400, 12);
  output.add(verify);
  VerifyOptions verify_options;
  int64_t double_max = 200, double_quat = 8;
  bool no_structure = false;
  verify->add_option("--m-factor", verify_options.m_factor, "m ranges over [1, factor * exponent]")->capture_default_str();
  verify->add_option("--double-k-max", double_max, "order bound for the double suites")->capture_default_str();
  verify->add_option("--double-quat-max", double_quat, "quaternion bound for the double suites")->capture_default_str();
  verify->add_flag("--no-structure", no_structure, "skip the G_m predicate sweep");
  verify->add_option("--jobs", verify_options.jobs, "worker threads")->capture_default_str();
  verify->add_option("--time-budget", verify_options.budget.seconds_per_spec, "seconds per spec, 0 = unlimited");
  verify->add_option("--order-budget", verify_options.budget.order_max, "skip groups above this order, 0 = unlimited");

  auto* scan = app.add_subcommand("scan", "classification and conjecture scans");
  scan->require_subcommand(1);
  int jobs = 1;

  auto* negatives = scan->add_subcommand("negatives", "negativity classification vs exhaustive indicator scan");
  NegativesOptions neg_options;
  std::string neg_q = "2";
  negatives->add_option("--k-max", neg_options.k_max, "largest k")->capture_default_str();
  negatives->add_option("--q-set", neg_q, "comma-separated primes q")->capture_default_str();
  negatives->add_option("--l-max", neg_options.l_max, "largest l")->capture_default_str();
  negatives->add_option("--m-factor", neg_options.m_factor, "m ranges over [1, factor * exponent]")->capture_default_str();
  negatives->add_option("--jobs", neg_options.jobs, "worker threads")->capture_default_str();
  negatives->add_option("--time-budget", neg_options.budget.seconds_per_spec, "seconds per spec, 0 = unlimited");
  negatives->add_option("--order-budget", neg_options.budget.order_max, "skip groups above this order");
  output.add(negatives);

  auto* orthogonality = scan->add_subcommand("orthogonality", "totally orthogonal groups vs the dihedral classification");
  GridFlags ortho_grid;
  ortho_grid.add(orthogonality, 400, 12);
  orthogonality->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  output.add(orthogonality);

  auto* splitting = scan->add_subcommand("splitting", "specs with gcd(q, k/h) = 1 and gcd(c, k/c) != 1");
  int64_t split_k = 5000;
  std::string split_q = "3,5,7,11,13";
  splitting->add_option("--k-max", split_k, "largest k")->capture_default_str();
  splitting->add_option("--q-set", split_q, "comma-separated primes q")->capture_default_str();
  output.add(splitting);

  auto* arithmetic = scan->add_subcommand("arithmetic", "congruences satisfied by c and d");
  int64_t arith_k = 400;
  std::string arith_q = "2,3,5,7";
  arithmetic->add_option("--k-max", arith_k, "largest k")->capture_default_str();
  arithmetic->add_option("--q-set", arith_q, "comma-separated primes q")->capture_default_str();
  output.add(arithmetic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  const std::string command = command_echo(argc, argv);
  try {
    if (info->parsed()) return cmd_info(spec_flags, output, command);
    if (indicators->parsed()) return cmd_indicators(spec_flags, with_double, m_max, text, output, command);
    if (verify->parsed()) {
      verify_options.grid = verify_grid.options();
      verify_options.double_grid = verify_options.grid;
      verify_options.double_grid.order_max = std::min(double_max, verify_options.grid.order_max);
      verify_options.double_grid.quat_max = std::min(double_quat, verify_options.grid.quat_max);
      verify_options.structure = !no_structure;
      return cmd_verify(verify_options, output, command);
    }
    if (negatives->parsed()) {
      neg_options.q_set = GridFlags::parse_list(neg_q);
      return cmd_scan_negatives(neg_options, output, command);
    }
    if (orthogonality->parsed()) return cmd_scan_orthogonality(ortho_grid.options(), jobs, output, command);
    if (splitting->parsed()) return cmd_scan_splitting(split_k, GridFlags::parse_list(split_q), output, command);
    if (arithmetic->parsed()) return cmd_scan_arithmetic(arith_k, GridFlags::parse_list(arith_q), output, command);
  } catch (const InvalidSpec& e) {
    std::cerr << "fsind: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "fsind: " << e.what() << "\n";
    return kFail;
  }
  return kInvalid;
}
