#include "fsind/scan.hpp"

#include <fmt/format.h>

#include <numeric>

#include "fsind/error.hpp"
#include "fsind/group_indicators.hpp"

namespace fsind {

namespace {

bool in_grid(const GroupSpec& spec, const GridOptions& grid) {
  if (spec.order() > grid.order_max) return false;
  if (spec.is_quaternion()) return spec.quaternion().n <= grid.quat_max;
  const auto& mc = spec.metacyclic();
  return mc.l <= grid.l_max && std::find(grid.q_set.begin(), grid.q_set.end(), mc.q) != grid.q_set.end();
}

bool is_dihedral(const GroupSpec& spec) {
  if (!spec.is_metacyclic()) return false;
  const auto& mc = spec.metacyclic();
  return mc.q == 2 && mc.l == 1 && mod(mc.n + 1, mc.k) == 0;
}

class Recorder {
 public:
  Recorder(SpecResult& result, size_t cap) : result_(result), cap_(cap) {}

  void check(Suite suite, bool ok, const std::function<std::string()>& detail) {
    auto& tally = result_.tallies[static_cast<int>(suite)];
    ++tally.checked;
    if (ok) return;
    ++tally.failed;
    if (result_.failures.size() < cap_) result_.failures.push_back({suite, detail()});
  }

  void passed(Suite suite, int64_t count) { result_.tallies[static_cast<int>(suite)].checked += count; }

  // A suite that threw before finishing counts as one failed check.
  void error(Suite suite, const std::string& what) {
    check(suite, false, [&] { return what; });
  }

 private:
  SpecResult& result_;
  size_t cap_;
};

void structure_suite(const Group& g, int64_t m_max, Recorder& rec, const Deadline& deadline) {
  // growing prod_{j<m} y^-j x y^j one factor per m; the product is (x y^-1)^m y^m,
  // so G_m(x) has period exp(G) in m and m_max = exp(G) covers every set
  int64_t agreed = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    deadline.check();
    for (Elem y = 0; y < g.order(); ++y) {
      Elem prod = g.identity(), factor = x;
      const Elem yinv = g.inv(y);
      const GmPredicate predicate(g, x, y);
      for (int64_t m = 1; m <= m_max; ++m) {
        prod = g.mul(prod, factor);
        factor = g.mul(yinv, g.mul(factor, y));
        const bool member = prod == g.identity();
        if (predicate(m) == member) {
          ++agreed;
          continue;
        }
        rec.check(Suite::Structure, false, [&] {
          return fmt::format("G_m membership: x={} y={} m={} product gives {}", g.to_string(x),
                             g.to_string(y), m, member);
        });
      }
    }
  }
  rec.passed(Suite::Structure, agreed);
  if (g.spec().is_metacyclic()) {
    auto split = verify_split(g.spec());
    rec.check(Suite::Structure, split.part_i_applies == (split.gcd_c_kc == 1) &&
                                    split.part_ii_applies == (split.gcd_q_kh == 1) &&
                                    split.part_i_verified.value_or(true) &&
                                    split.part_ii_verified.value_or(true),
              [] { return std::string("direct-summand criteria or their maps"); });
  }
}

void group_suites(const std::shared_ptr<const Group>& g, int64_t m_max, Recorder& rec,
                  const Deadline& deadline) {
  const auto& spec = g->spec();
  auto table = irreducible_characters(g);
  for (int64_t m = 1; m <= m_max; ++m) {
    deadline.check();
    auto counts = class_power_counts(*g, m);
    int64_t weighted = 0;
    for (size_t x = 0; x < table.size(); ++x) {
      const auto& chi = table[x];
      const int64_t nu = nu_group_from_counts(chi, counts);
      weighted += nu * chi.degree;
      const auto formula = nu_group_formula(spec, chi.label, m);
      rec.check(Suite::GroupFormula, formula == nu, [&] {
        return fmt::format("{} m={}: formula {} brute {}", chi.name(), m,
                           formula ? std::to_string(*formula) : "none", nu);
      });
      bool in_range = m != 2 || (nu >= -1 && nu <= 1);
      if (m == 1) in_range = in_range && nu == (x == 0 ? 1 : 0);
      if (spec.is_metacyclic()) {
        const auto& gc = g->constants();
        const bool negative_allowed = gc.l % gc.q == 0;
        in_range = in_range && (nu == 0 || nu == 1 || nu == gc.q - 1 || nu == gc.q ||
                                (nu == -1 && negative_allowed));
      }
      rec.check(Suite::GroupRange, in_range, [&] { return fmt::format("{} m={}: nu = {}", chi.name(), m, nu); });
    }
    const int64_t roots = frobenius_root_count(*g, m);
    rec.check(Suite::RootCount, weighted == roots,
              [&] { return fmt::format("m={}: weighted sum {} vs {} roots", m, weighted, roots); });
  }
  if (spec.is_metacyclic() && spec.metacyclic().l == 1) {
    const bool ortho = total_orthogonality(g);
    rec.check(Suite::Orthogonality, ortho == is_dihedral(spec),
              [&] { return fmt::format("totally orthogonal = {}, dihedral = {}", ortho, is_dihedral(spec)); });
  }
  if (spec.is_metacyclic()) {
    for (const auto& check : check_arithmetic(spec.metacyclic())) {
      rec.check(check.printed_only ? Suite::ArithmeticPrinted : Suite::Arithmetic, check.holds,
                [&] { return check.identity; });
    }
  }
}

void double_suites(const std::shared_ptr<const Group>& g, int64_t m_max, Recorder& rec,
                   const Deadline& deadline) {
  const auto& spec = g->spec();
  auto rows = double_indicator_table(g, m_max, [&] { deadline.check(); });
  bool nonnegative = false, d_zero = false, classified = false;
  int64_t c = 0, k = 0, q = 0;
  if (spec.is_metacyclic()) {
    const auto& gc = g->constants();
    classified = gc.l % gc.q != 0;
    nonnegative = classified && (gc.q != 2 || gc.k % 8 != 0);
    d_zero = gc.d_mod_k() == 0 && gc.l == 1;
    c = gc.c, k = gc.k, q = gc.q;
  }
  auto labels = enumerate_double_irreducibles(g);
  bool any_negative = false;
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto& label = labels[r / m_max];
    auto describe = [&](std::optional<int64_t> formula) {
      return fmt::format("{} m={}: formula {} trace {} centralizer {}", row.label, row.m,
                         formula ? std::to_string(*formula) : "none", row.nu_brute, row.nu_centralizer);
    };
    rec.check(Suite::DoublePrinted, row.agree, [&] { return describe(row.nu_formula); });
    rec.check(Suite::DoubleCorrected, row.agree_corrected, [&] { return describe(row.nu_corrected); });
    const int64_t nu = row.nu_brute;
    any_negative = any_negative || nu < 0;
    if (row.m == 2) {
      rec.check(Suite::DoubleRange, nu >= -1 && nu <= 1, [&] { return fmt::format("{} nu_2 = {}", row.label, nu); });
    }
    if (nonnegative || d_zero) {
      rec.check(Suite::DoubleRange, nu >= 0, [&] { return fmt::format("{} m={} nu = {} < 0", row.label, row.m, nu); });
    }
    if (row.m == 2 && (label.kind == DoubleKind::Central || label.kind == DoubleKind::QuatCentral) &&
        2 % g->order_of(label.rep()) != 0) {
      rec.check(Suite::DoubleRange, nu == 0, [&] { return fmt::format("{} central, nu_2 = {}", row.label, nu); });
    }
    if (d_zero && label.kind == DoubleKind::TypeII) {
      const int64_t num = 2 * std::gcd(row.m, k) + k * (q - 2);
      const bool integral = row.m % q != 0 || num % (c * q) == 0;
      const int64_t expected = row.m % q != 0 ? 0 : num / (c * q);
      rec.check(Suite::DoubleRange, integral && expected == nu,
                [&] { return fmt::format("{} m={}: d = 0 closed form {}/{} vs {}", row.label, row.m, num, c * q, nu); });
    }
  }
  if (classified) {
    const bool predicted = negative_predicted(spec);
    rec.check(Suite::Negatives, predicted == any_negative, [&] {
      return fmt::format("classification says {}, scan to m={} found {}", predicted, m_max, any_negative);
    });
  }
}

}  // namespace

Deadline::Deadline(double seconds) {
  if (seconds > 0) {
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
  }
}

void Deadline::check() const {
  if (end_ && std::chrono::steady_clock::now() > *end_) throw BudgetExceeded("per-spec time budget exceeded");
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::Structure: return "structure";
    case Suite::GroupFormula: return "group_formula";
    case Suite::GroupRange: return "group_range";
    case Suite::RootCount: return "root_count";
    case Suite::Orthogonality: return "orthogonality";
    case Suite::Arithmetic: return "arithmetic";
    case Suite::ArithmeticPrinted: return "arithmetic_printed";
    case Suite::DoublePrinted: return "double_printed";
    case Suite::DoubleCorrected: return "double_corrected";
    case Suite::DoubleRange: return "double_range";
    case Suite::Negatives: return "negatives";
  }
  return "unknown";
}

int64_t SpecResult::failed() const {
  int64_t total = 0;
  for (const auto& t : tallies) total += t.failed;
  return total;
}

int64_t VerifyReport::failed() const {
  int64_t total = 0;
  for (const auto& t : totals) total += t.failed;
  return total;
}

VerifyReport run_verify(const VerifyOptions& options, const std::function<void(const SpecResult&)>& progress) {
  auto specs = enumerate_grid(options.grid);
  for (const auto& spec : enumerate_grid(options.double_grid)) {
    if (!in_grid(spec, options.grid)) specs.push_back(spec);
  }
  std::sort(specs.begin(), specs.end());
  std::mutex progress_mutex;
  auto run_one = [&](size_t index) {
    SpecResult result;
    result.spec = specs[index];
    Recorder rec(result, options.failure_cap);
    if (options.budget.order_max > 0 && result.spec.order() > options.budget.order_max) {
      result.skipped = true;
      result.skip_reason = fmt::format("order {} exceeds the budget of {}", result.spec.order(),
                                       options.budget.order_max);
    } else {
      Deadline deadline(options.budget.seconds_per_spec);
      try {
        std::shared_ptr<const Group> g;
        try {
          g = make_group(result.spec);
        } catch (const ClosedFormMismatch& e) {
          rec.error(Suite::Structure, e.what());
        }
        if (g) {
          const int64_t m_max = options.m_factor * g->exponent();
          auto guarded = [&](Suite suite, const std::function<void()>& body) {
            try {
              body();
            } catch (const BudgetExceeded&) {
              throw;
            } catch (const Error& e) {
              rec.error(suite, e.what());
            }
          };
          if (in_grid(result.spec, options.grid)) {
            if (options.structure) guarded(Suite::Structure, [&] { structure_suite(*g, g->exponent(), rec, deadline); });
            guarded(Suite::GroupFormula, [&] { group_suites(g, m_max, rec, deadline); });
          }
          if (in_grid(result.spec, options.double_grid)) {
            guarded(Suite::DoublePrinted, [&] { double_suites(g, m_max, rec, deadline); });
          }
        }
      } catch (const BudgetExceeded& e) {
        result.skipped = true;
        result.skip_reason = e.what();
      }
    }
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(result);
    }
    return result;
  };
  VerifyReport report;
  report.specs = parallel_map<SpecResult>(specs.size(), options.jobs, run_one);
  for (const auto& r : report.specs) {
    report.skipped += r.skipped;
    for (int s = 0; s < kSuiteCount; ++s) {
      report.totals[s].checked += r.tallies[s].checked;
      report.totals[s].failed += r.tallies[s].failed;
    }
  }
  return report;
}

std::vector<int64_t> admissible_twists(int64_t k, int64_t q) {
  std::vector<int64_t> out;
  for (int64_t n = 2; n < k; ++n) {
    if (powmod(n, q, k) == 1) out.push_back(n);
  }
  return out;
}

std::vector<NegativesRow> scan_negatives(const NegativesOptions& options) {
  std::vector<GroupSpec> specs;
  for (int64_t q : options.q_set) {
    if (!is_prime(q)) continue;
    for (int64_t l = 1; l <= options.l_max; ++l) {
      if (l % q == 0) continue;
      for (int64_t k = 3; k <= options.k_max; ++k) {
        for (int64_t n : admissible_twists(k, q)) specs.emplace_back(Metacyclic{k, q, n, l});
      }
    }
  }
  std::sort(specs.begin(), specs.end());
  return parallel_map<NegativesRow>(specs.size(), options.jobs, [&](size_t index) {
    NegativesRow row;
    row.spec = specs[index];
    row.predicted = negative_predicted(row.spec);
    if (options.budget.order_max > 0 && row.spec.order() > options.budget.order_max) {
      row.skipped = true;
      row.skip_reason = "order exceeds the budget";
      return row;
    }
    Deadline deadline(options.budget.seconds_per_spec);
    try {
      auto g = make_group(row.spec);
      auto labels = enumerate_double_irreducibles(g);
      auto table = nu_double_brute_table(g, labels, options.m_factor * g->exponent(), [&] { deadline.check(); });
      for (int64_t m = 0; m < table.m_max && !row.witness; ++m) {
        for (size_t x = 0; x < labels.size(); ++x) {
          if (table.nu_trace[x][m] < 0) {
            row.witness = NegativeWitness{m + 1, labels[x].name(), table.nu_trace[x][m]};
            break;
          }
        }
      }
      row.found = row.witness.has_value();
    } catch (const BudgetExceeded& e) {
      row.skipped = true;
      row.skip_reason = e.what();
    }
    return row;
  });
}

std::vector<OrthogonalityRow> scan_orthogonality(const GridOptions& grid, int jobs) {
  auto specs = enumerate_grid(grid);
  return parallel_map<OrthogonalityRow>(specs.size(), jobs, [&](size_t index) {
    OrthogonalityRow row;
    row.spec = specs[index];
    row.totally_orthogonal = total_orthogonality(make_group(row.spec));
    row.dihedral = is_dihedral(row.spec);
    row.classified = row.spec.is_metacyclic() && row.spec.metacyclic().l == 1;
    return row;
  });
}

SplittingScan scan_splitting(int64_t k_max, const std::vector<int64_t>& q_set) {
  SplittingScan scan;
  std::vector<Metacyclic> specs;
  for (int64_t q : q_set) {
    if (!is_prime(q)) continue;
    for (int64_t k = 3; k <= k_max; ++k) {
      for (int64_t n : admissible_twists(k, q)) specs.push_back({k, q, n, 1});
    }
  }
  std::sort(specs.begin(), specs.end());
  for (const auto& spec : specs) {
    ++scan.specs_scanned;
    const auto r = verify_split(spec, false);
    if (r.gcd_q_kh == 1 && r.gcd_c_kc != 1) {
      scan.findings.push_back({spec, verify_split(spec, true), spec.q > 2});
    }
  }
  return scan;
}

std::vector<ArithmeticCheck> check_arithmetic(const Metacyclic& spec) {
  std::vector<ArithmeticCheck> out;
  auto expect = [&](bool holds, std::string identity, bool printed_only = false) {
    out.push_back({std::move(identity), printed_only, holds});
  };
  GroupConstants gc;
  try {
    gc = group_constants(spec);
  } catch (const ClosedFormMismatch& e) {
    expect(false, e.what());
    return out;
  }
  const int64_t k = gc.k, q = gc.q, c = gc.c;
  const int64_t d_kq = gc.d_mod_kq;  // q | kq, so d mod q is read from here
  const bool q_d = d_kq % q == 0;
  expect((k % q == 0) == (c % q == 0), "q | k iff q | c");
  expect(k % q != 0 || q_d, "q | k implies q | d");
  expect(q_d == (mod(gc.n, q) == 1), "q | d iff n == 1 mod q");
  // the smallest r with k | mr is k / gcd(m, k), and kq | mdr is closed under multiples of r
  bool implication = true;
  for (int64_t m = q; m <= k * q; m += q) {
    implication = implication && mulmod(mulmod(m, d_kq, k * q), k / std::gcd(m, k), k * q) == 0;
  }
  expect(implication, "q | m and k | mr imply kq | mdr");
  if (q > 2) {
    const int64_t n_q = mod(gc.n, q);
    int64_t sum = 0, power = 1;
    for (int64_t j = 0; j <= q - 2; ++j) {
      sum = mod(sum + (j + 1) * power, q);
      power = mulmod(power, n_q, q);
    }
    const bool stated = mod(sum + d_kq, q) == 0;
    expect(mod((n_q - 1) * sum + d_kq, q) == 0, "(n - 1) sum_{j<=q-2} (j+1) n^j == -d mod q");
    expect(stated, "sum_{j<=q-2} (j+1) n^j == -d mod q", true);
    expect(!q_d || stated, "q | d implies sum_{j<=q-2} (j+1) n^j == -d mod q");
    expect(!q_d || mulmod(d_kq, mod(d_kq - q, k * q), k * q) == 0, "q | d implies kq | d(d - q)");
    expect(gc.d_mod_q2 != 0, "q^2 does not divide d");
  }
  return out;
}

int64_t ArithmeticScan::failed(bool printed_only) const {
  return std::count_if(failures.begin(), failures.end(),
                       [&](const ArithmeticRow& row) { return row.check.printed_only == printed_only; });
}

ArithmeticScan scan_arithmetic(int64_t k_max, const std::vector<int64_t>& q_set) {
  ArithmeticScan scan;
  std::vector<Metacyclic> specs;
  for (int64_t q : q_set) {
    if (!is_prime(q)) continue;
    for (int64_t k = 3; k <= k_max; ++k) {
      for (int64_t n : admissible_twists(k, q)) specs.push_back({k, q, n, 1});
    }
  }
  std::sort(specs.begin(), specs.end());
  for (const auto& spec : specs) {
    ++scan.specs_scanned;
    for (auto& check : check_arithmetic(spec)) {
      ++scan.checks;
      if (!check.holds) scan.failures.push_back({spec, std::move(check)});
    }
  }
  return scan;
}

}  // namespace fsind
