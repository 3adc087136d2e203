#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsind/double_indicators.hpp"
#include "fsind/error.hpp"
#include "fsind/group_indicators.hpp"
#include "fsind/scan.hpp"

namespace py = pybind11;
using namespace fsind;

namespace {

GroupSpec make_spec(std::optional<int64_t> k, std::optional<int64_t> q, std::optional<int64_t> n, int64_t l,
                    std::optional<int64_t> quaternion) {
  GroupSpec spec;
  if (quaternion) {
    if (k || q) throw InvalidSpec("quaternion excludes k and q");
    spec = Quaternion{*quaternion};
  } else {
    if (!k || !q || !n) throw InvalidSpec("give k, q and n, or quaternion");
    spec = Metacyclic{*k, *q, *n, l};
  }
  validate(spec);
  return spec;
}

py::dict group_info(const GroupSpec& spec) {
  auto g = make_group(spec);
  py::dict out;
  out["name"] = spec.to_string();
  out["order"] = g->order();
  out["exponent"] = g->exponent();
  out["center_order"] = g->center().order();
  out["classes"] = g->classes().size();
  std::vector<int64_t> sizes, centralizers;
  for (size_t c = 0; c < g->classes().size(); ++c) {
    sizes.push_back(g->classes()[c].size());
    centralizers.push_back(g->class_centralizer(static_cast<int32_t>(c))->order());
  }
  out["class_sizes"] = sizes;
  out["centralizer_orders"] = centralizers;
  if (spec.is_metacyclic()) {
    const auto& gc = g->constants();
    py::dict constants;
    constants["c"] = gc.c;
    constants["d_mod_kq"] = gc.d_mod_kq;
    constants["d_prime"] = gc.d_prime;
    constants["h"] = gc.h;
    out["constants"] = constants;
    auto split = verify_split(spec);
    out["split_part_i"] = split.part_i_applies;
    out["split_part_ii"] = split.part_ii_applies;
  }
  return out;
}

std::vector<py::dict> group_rows(const GroupSpec& spec, int64_t m_max) {
  std::vector<py::dict> out;
  for (const auto& row : group_indicator_table(make_group(spec), m_max)) {
    py::dict d;
    d["label"] = row.label;
    d["degree"] = row.degree;
    d["m"] = row.m;
    d["nu_formula"] = row.nu_formula;
    d["nu_brute"] = row.nu_brute;
    d["agree"] = row.agree;
    out.push_back(d);
  }
  return out;
}

std::vector<py::dict> double_rows(const GroupSpec& spec, int64_t m_max) {
  std::vector<py::dict> out;
  for (const auto& row : double_indicator_table(make_group(spec), m_max)) {
    py::dict d;
    d["label"] = row.label;
    d["kind"] = kind_name(row.kind);
    d["dim"] = row.dim;
    d["m"] = row.m;
    d["nu_formula"] = row.nu_formula;
    d["nu_corrected"] = row.nu_corrected;
    d["nu_brute"] = row.nu_brute;
    d["nu_centralizer"] = row.nu_centralizer;
    d["agree"] = row.agree;
    d["agree_corrected"] = row.agree_corrected;
    out.push_back(d);
  }
  return out;
}

py::dict verify(int64_t order_max, std::vector<int64_t> q_set, int64_t l_max, int64_t quat_max, int jobs) {
  VerifyOptions options;
  options.grid = GridOptions{order_max, q_set, l_max, quat_max};
  options.double_grid = options.grid;
  options.jobs = jobs;
  py::gil_scoped_release release;
  auto report = run_verify(options);
  py::gil_scoped_acquire acquire;
  py::dict suites;
  for (int s = 0; s < kSuiteCount; ++s) {
    suites[py::str(suite_name(static_cast<Suite>(s)))] =
        py::make_tuple(report.totals[s].checked, report.totals[s].failed);
  }
  py::dict out;
  out["specs"] = report.specs.size();
  out["skipped"] = report.skipped;
  out["suites"] = suites;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact higher Frobenius-Schur indicators of metacyclic and generalized quaternion groups";

  py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  py::class_<GroupSpec>(m, "GroupSpec")
      .def_property_readonly("order", &GroupSpec::order)
      .def("__str__", &GroupSpec::to_string)
      .def("__repr__", &GroupSpec::to_string);

  m.def("spec", &make_spec, py::arg("k") = py::none(), py::arg("q") = py::none(), py::arg("n") = py::none(),
        py::arg("l") = 1, py::arg("quaternion") = py::none());
  m.def("info", &group_info, py::arg("spec"));
  m.def("group_indicators", &group_rows, py::arg("spec"), py::arg("m_max") = 0);
  m.def("double_indicators", &double_rows, py::arg("spec"), py::arg("m_max") = 0);
  m.def("verify", &verify, py::arg("order_max"), py::arg("q_set") = std::vector<int64_t>{2, 3, 5, 7},
        py::arg("l_max") = 4, py::arg("quat_max") = 12, py::arg("jobs") = 1);
}
