#include <gtest/gtest.h>

#include <thread>

#include "fsind/error.hpp"
#include "fsind/scan.hpp"

using namespace fsind;

namespace {

VerifyOptions small_verify(int jobs) {
  VerifyOptions options;
  options.grid = GridOptions{40, {2, 3, 5}, 2, 4};
  options.double_grid = GridOptions{40, {2, 3, 5}, 2, 4};
  options.jobs = jobs;
  return options;
}

int64_t two_part(int64_t k) {
  int64_t s = 0;
  while (k % 2 == 0) {
    k /= 2;
    ++s;
  }
  return s;
}

}  // namespace

TEST(ParallelMap, KeepsIndexOrderAndRethrows) {
  auto square = [](size_t i) { return static_cast<int64_t>(i * i); };
  auto one = parallel_map<int64_t>(50, 1, square);
  auto four = parallel_map<int64_t>(50, 4, square);
  EXPECT_EQ(one, four);
  EXPECT_EQ(four[7], 49);
  EXPECT_TRUE(parallel_map<int64_t>(0, 3, square).empty());
  EXPECT_THROW(parallel_map<int64_t>(10, 3,
                                     [](size_t i) -> int64_t {
                                       if (i == 6) throw Unsupported("boom");
                                       return 0;
                                     }),
               Unsupported);
}

TEST(Deadline, UnlimitedAndExpired) {
  Deadline unlimited(0);
  EXPECT_NO_THROW(unlimited.check());
  Deadline tiny(1e-6);
  std::this_thread::sleep_for(std::chrono::milliseconds(2));
  EXPECT_THROW(tiny.check(), BudgetExceeded);
}

TEST(Scan, AdmissibleTwists) {
  EXPECT_EQ(admissible_twists(8, 2), (std::vector<int64_t>{3, 5, 7}));
  EXPECT_EQ(admissible_twists(7, 3), (std::vector<int64_t>{2, 4}));
  EXPECT_TRUE(admissible_twists(5, 3).empty());
}

TEST(Verify, SmallGridFailsOnlyOnPrintedStatements) {
  auto report = run_verify(small_verify(1));
  EXPECT_EQ(report.skipped, 0);
  for (int s = 0; s < kSuiteCount; ++s) {
    const auto suite = static_cast<Suite>(s);
    EXPECT_GT(report.totals[s].checked, 0) << suite_name(suite);
    const bool printed = suite == Suite::DoublePrinted || suite == Suite::ArithmeticPrinted;
    if (!printed) EXPECT_EQ(report.totals[s].failed, 0) << suite_name(suite);
  }
  // M(8,2,3,2) and Q(3) break the printed double tables; M(13,3,3,1) the printed sum congruence
  EXPECT_GT(report.totals[static_cast<int>(Suite::DoublePrinted)].failed, 0);
  EXPECT_GT(report.totals[static_cast<int>(Suite::ArithmeticPrinted)].failed, 0);
  for (const auto& spec : report.specs) {
    for (const auto& f : spec.failures) {
      EXPECT_TRUE(f.suite == Suite::DoublePrinted || f.suite == Suite::ArithmeticPrinted) << f.detail;
    }
  }
}

TEST(Verify, WorkerCountDoesNotChangeTheReport) {
  auto one = run_verify(small_verify(1));
  auto three = run_verify(small_verify(3));
  ASSERT_EQ(one.specs.size(), three.specs.size());
  for (size_t i = 0; i < one.specs.size(); ++i) {
    EXPECT_EQ(one.specs[i].spec, three.specs[i].spec);
    for (int s = 0; s < kSuiteCount; ++s) {
      EXPECT_EQ(one.specs[i].tallies[s].checked, three.specs[i].tallies[s].checked);
      EXPECT_EQ(one.specs[i].tallies[s].failed, three.specs[i].tallies[s].failed);
    }
  }
}

TEST(Verify, BudgetsProduceSkippedSpecs) {
  auto options = small_verify(1);
  options.budget.order_max = 20;
  auto report = run_verify(options);
  int64_t skipped = 0;
  for (const auto& spec : report.specs) {
    EXPECT_EQ(spec.skipped, spec.spec.order() > 20) << spec.spec.to_string();
    if (spec.skipped) EXPECT_FALSE(spec.skip_reason.empty());
    skipped += spec.skipped;
  }
  EXPECT_EQ(report.skipped, skipped);
  EXPECT_GT(skipped, 0);
}

TEST(Verify, EmptyGrid) {
  VerifyOptions options;
  options.grid.order_max = 0;
  options.double_grid.order_max = 0;
  auto report = run_verify(options);
  EXPECT_TRUE(report.specs.empty());
  EXPECT_EQ(report.failed(), 0);
}

TEST(Scan, NegativesMatchTheTwoPowerCondition) {
  NegativesOptions options;
  options.k_max = 40;
  auto rows = scan_negatives(options);
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    const auto& mc = row.spec.metacyclic();
    const int64_t s = two_part(mc.k), two = int64_t{1} << s;
    const bool expected = s >= 3 && (mc.n % two == two / 2 + 1 || mc.n % two == two / 2 - 1);
    EXPECT_EQ(row.found, expected) << row.spec.to_string();
    EXPECT_TRUE(row.agree()) << row.spec.to_string();
    if (row.found) {
      ASSERT_TRUE(row.witness.has_value());
      EXPECT_LT(row.witness->nu, 0);
    }
  }
}

TEST(Scan, OrthogonalityOnTheCoprimeSlice) {
  auto rows = scan_orthogonality(GridOptions{120, {2, 3}, 2, 6});
  int64_t dihedral = 0;
  for (const auto& row : rows) {
    EXPECT_TRUE(row.agree()) << row.spec.to_string();
    dihedral += row.dihedral;
    if (row.dihedral) EXPECT_TRUE(row.totally_orthogonal);
  }
  EXPECT_GT(dihedral, 0);
}

TEST(Scan, SplittingFindsOnlyTheEvenShape) {
  auto even = scan_splitting(60, {2});
  bool found = false;
  for (const auto& row : even.findings) {
    EXPECT_FALSE(row.conjecture_counterexample);
    EXPECT_FALSE(row.report.part_i_applies);
    EXPECT_TRUE(row.report.part_ii_applies);
    EXPECT_EQ(row.report.part_ii_verified, true);
    if (row.spec == Metacyclic{12, 2, 7, 1}) found = true;
  }
  EXPECT_TRUE(found);
  auto odd = scan_splitting(1500, {3, 5, 7});
  EXPECT_GT(odd.specs_scanned, 0);
  EXPECT_TRUE(odd.findings.empty());
}

TEST(Scan, ArithmeticIdentities) {
  auto scan = scan_arithmetic(400, {2, 3, 5, 7});
  EXPECT_GT(scan.specs_scanned, 0);
  EXPECT_GT(scan.checks, scan.specs_scanned);
  EXPECT_EQ(scan.failed(false), 0);
  for (const auto& row : scan.failures) {
    if (!row.check.printed_only) ADD_FAILURE() << Metacyclic(row.spec).k << " " << row.check.identity;
  }

  // 1 + 2*2 = 5 == 2 and d = 7 == 1 (mod 3): the stated sum congruence holds
  auto checks = check_arithmetic(Metacyclic{7, 3, 2, 1});
  EXPECT_EQ(checks.size(), 9u);
  for (const auto& c : checks) EXPECT_TRUE(c.holds) << c.identity;
  // 1 + 2*3 = 7 == 1 but -d = -13 == 2 (mod 3); only the form with n - 1 holds
  checks = check_arithmetic(Metacyclic{13, 3, 3, 1});
  for (const auto& c : checks) EXPECT_EQ(c.holds, !c.printed_only) << c.identity;
  EXPECT_EQ(check_arithmetic(Metacyclic{15, 2, 11, 1}).size(), 4u);
}
