#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fsind/double_indicators.hpp"
#include "fsind/groups.hpp"

namespace fsind {

/// Per-spec resource guard. Zero means unlimited.
struct Budget {
  double seconds_per_spec = 0;
  int64_t order_max = 0;
};

/// Cooperative wall-clock deadline; check() throws BudgetExceeded once expired.
class Deadline {
 public:
  explicit Deadline(double seconds);
  void check() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

/// Runs fn(i) for i < count on `jobs` threads and returns the results in index
/// order, so output never depends on the worker count. The first exception is
/// rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(size_t count, int jobs, const std::function<T(size_t)>& fn);

/// Suites run by verify, in report order.
enum class Suite {
  Structure,        // closed-form centers/classes/centralizers and G_m predicates
  GroupFormula,     // group indicator formula vs brute force
  GroupRange,       // value ranges of group indicators
  RootCount,        // sum_chi nu_m(chi) chi(1) = #{g : g^m = 1}
  Orthogonality,    // l = 1: totally orthogonal iff dihedral
  Arithmetic,       // congruences on c and d
  ArithmeticPrinted,  // the printed congruence for sum (j+1) n^j, which needs n == 1, 2 (mod q)
  DoublePrinted,    // double indicators: oracles vs the printed case tables
  DoubleCorrected,  // oracles vs the corrected case tables
  DoubleRange,      // nu_2 range, nonnegativity, central labels, d = 0 closed form
  Negatives,        // negativity classification vs exhaustive scan
};
inline constexpr int kSuiteCount = 11;
std::string suite_name(Suite suite);

struct SuiteTally {
  int64_t checked = 0;
  int64_t failed = 0;
};

struct Failure {
  Suite suite = Suite::Structure;
  std::string detail;
};

struct SpecResult {
  GroupSpec spec;
  bool skipped = false;
  std::string skip_reason;
  std::vector<SuiteTally> tallies = std::vector<SuiteTally>(kSuiteCount);
  std::vector<Failure> failures;  // at most VerifyOptions::failure_cap
  int64_t failed() const;
};

struct VerifyOptions {
  GridOptions grid;                   // every suite except the double ones
  GridOptions double_grid{200, {2, 3, 5, 7}, 4, 8};  // specs also in this grid get the double suites
  int64_t m_factor = 2;               // m ranges over [1, m_factor * exponent]; G_m over one period [1, exponent]
  bool structure = true;              // the G_m predicate sweep is the costliest group suite
  Budget budget;
  int jobs = 1;
  size_t failure_cap = 20;
};

struct VerifyReport {
  std::vector<SpecResult> specs;
  std::vector<SuiteTally> totals = std::vector<SuiteTally>(kSuiteCount);
  int64_t skipped = 0;
  int64_t failed() const;
};

VerifyReport run_verify(const VerifyOptions& options,
                        const std::function<void(const SpecResult&)>& progress = {});

/// All n in (1, k) with n^q == 1 (mod k); these are the admissible twists.
std::vector<int64_t> admissible_twists(int64_t k, int64_t q);

struct NegativesRow {
  GroupSpec spec;
  bool predicted = false;  // closed-form classification
  bool found = false;      // any negative indicator for m <= m_factor * exponent
  std::optional<NegativeWitness> witness;
  bool skipped = false;
  std::string skip_reason;
  bool agree() const { return !skipped && predicted == found; }
};

struct NegativesOptions {
  int64_t k_max = 128;
  std::vector<int64_t> q_set{2};
  int64_t l_max = 1;
  int64_t m_factor = 2;
  Budget budget;
  int jobs = 1;
};

/// Metacyclic specs with q not dividing l and k <= k_max, in spec order.
std::vector<NegativesRow> scan_negatives(const NegativesOptions& options);

struct OrthogonalityRow {
  GroupSpec spec;
  bool totally_orthogonal = false;
  bool dihedral = false;     // metacyclic with q = 2, l = 1 and n == -1 (mod k)
  bool classified = false;   // l = 1 slice, where the equivalence is asserted
  bool agree() const { return !classified || totally_orthogonal == dihedral; }
};

std::vector<OrthogonalityRow> scan_orthogonality(const GridOptions& grid, int jobs = 1);

struct SplittingRow {
  Metacyclic spec;
  SplitReport report;
  bool conjecture_counterexample = false;  // q > 2
};

struct SplittingScan {
  int64_t specs_scanned = 0;
  std::vector<SplittingRow> findings;  // gcd(q, k/h) = 1 and gcd(c, k/c) != 1, in spec order
};

/// l = 1 throughout: c, d and h do not depend on l. Findings get the
/// section/retraction checks from verify_split.
SplittingScan scan_splitting(int64_t k_max, const std::vector<int64_t>& q_set);

struct ArithmeticCheck {
  std::string identity;
  bool printed_only = false;  // stated form of the sum congruence; not a theorem for all n
  bool holds = true;
};

/// For one spec with l = 1 semantics: q | k iff q | c; q | k implies q | d;
/// q | d iff n == 1 (mod q); for q | m, k | mr implies kq | mdr; and for q > 2,
/// (n - 1) sum_{j <= q-2} (j+1) n^j == -d (mod q), its stated form without the
/// factor n - 1 (printed_only), the stated form under q | d, q | d implies
/// kq | d(d - q), and q^2 does not divide d.
std::vector<ArithmeticCheck> check_arithmetic(const Metacyclic& spec);

struct ArithmeticRow {
  Metacyclic spec;
  ArithmeticCheck check;
};

struct ArithmeticScan {
  int64_t specs_scanned = 0;
  int64_t checks = 0;
  std::vector<ArithmeticRow> failures;  // in spec order
  int64_t failed(bool printed_only) const;
};

/// Over l = 1, k <= k_max and q in q_set.
ArithmeticScan scan_arithmetic(int64_t k_max, const std::vector<int64_t>& q_set);

template <class T>
std::vector<T> parallel_map(size_t count, int jobs, const std::function<T(size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const size_t threads = std::min<size_t>(std::max(jobs, 1), std::max<size_t>(count, 1));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace fsind
