#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fsind/error.hpp"
#include "fsind/groups.hpp"

using namespace fsind;

namespace {

constexpr int kIterations = 300;

std::vector<GroupSpec> small_grid(int64_t order_max, int64_t quat_max = 12) {
  GridOptions grid;
  grid.order_max = order_max;
  grid.quat_max = quat_max;
  return enumerate_grid(grid);
}

// Class sizes sorted, for census comparisons.
std::map<int64_t, int64_t> class_size_census(const Group& g) {
  std::map<int64_t, int64_t> census;
  for (const auto& c : g.classes()) census[c.size()]++;
  return census;
}

std::vector<Elem> brute_centralizer(const Group& g, Elem x) {
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y) {
    if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
  }
  return out;
}

}  // namespace

TEST(Spec, Validation) {
  EXPECT_NO_THROW(validate(Metacyclic{5, 2, 4, 1}));
  EXPECT_THROW(validate(Metacyclic{5, 2, 2, 1}), InvalidSpec);
  EXPECT_THROW(validate(Metacyclic{5, 4, 4, 1}), InvalidSpec);
  EXPECT_THROW(validate(Metacyclic{5, 2, 1, 1}), InvalidSpec);
  EXPECT_THROW(validate(Metacyclic{5, 2, 4, 0}), InvalidSpec);
  EXPECT_THROW(validate(Quaternion{1}), InvalidSpec);
  EXPECT_EQ(GroupSpec(Metacyclic{5, 2, 4, 1}).to_string(), "M(5,2,4,1)");
  EXPECT_EQ(GroupSpec(Quaternion{3}).to_string(), "Q(3)");
}

TEST(Spec, GridIsValidAndSorted) {
  auto specs = small_grid(400);
  EXPECT_TRUE(std::is_sorted(specs.begin(), specs.end()));
  for (const auto& s : specs) {
    EXPECT_NO_THROW(validate(s));
    EXPECT_LE(s.order(), 400);
  }
  EXPECT_TRUE(small_grid(0).empty());
}

TEST(Group, DihedralAndQuaternionBasics) {
  Group d5(Metacyclic{5, 2, 4, 1});
  EXPECT_EQ(d5.order(), 10);
  EXPECT_EQ(d5.exponent(), 10);
  EXPECT_EQ(exponent(d5), 10);

  Group q8(Quaternion{2});
  EXPECT_EQ(q8.order(), 8);
  EXPECT_EQ(q8.exponent(), 4);
  // b * a = a^-1 b, b^2 = a^n
  EXPECT_EQ(mul(q8, {0, 1}, {1, 0}), (GroupElement{3, 1}));
  EXPECT_EQ(mul(q8, {0, 1}, {0, 1}), (GroupElement{2, 0}));
  // a b * a b = a^(1-1+n) = a^2
  EXPECT_EQ(mul(q8, {1, 1}, {1, 1}), (GroupElement{2, 0}));
  EXPECT_EQ(q8.to_string(q8.id({1, 1})), "ab");
  EXPECT_EQ(q8.to_string(q8.identity()), "1");
}

TEST(Group, DefiningRelations) {
  for (const auto& spec : small_grid(300)) {
    Group g(spec);
    Elem a = g.gen_a(), b = g.gen_b(), e = g.identity();
    if (spec.is_metacyclic()) {
      const auto& m = spec.metacyclic();
      EXPECT_EQ(g.pw(a, m.k), e);
      EXPECT_EQ(g.order_of(a), m.k);
      EXPECT_EQ(g.order_of(b), m.q * m.l);
      EXPECT_EQ(g.mul(b, g.mul(a, g.inv(b))), g.pw(a, m.n)) << spec.to_string();
    } else {
      int64_t n = spec.quaternion().n;
      EXPECT_EQ(g.order_of(a), 2 * n);
      EXPECT_EQ(g.mul(b, b), g.pw(a, n));
      EXPECT_EQ(g.mul(b, g.mul(a, g.inv(b))), g.inv(a));
    }
  }
}

TEST(Group, ClosedFormArithmeticProperties) {
  std::mt19937 rng(17);
  auto specs = small_grid(400);
  for (int iter = 0; iter < kIterations; ++iter) {
    Group g(specs[rng() % specs.size()]);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    for (int t = 0; t < 20; ++t) {
      Elem x = pick(rng), y = pick(rng), z = pick(rng);
      // Property: associativity
      EXPECT_EQ(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
      // Property: inverse
      EXPECT_EQ(g.mul(x, g.inv(x)), g.identity());
      // Property: closed-form power agrees with repeated multiplication
      int64_t e = static_cast<int64_t>(rng() % 40) - 20;
      Elem p = g.identity();
      Elem base = e >= 0 ? x : g.inv(x);
      for (int64_t s = 0; s < std::abs(e); ++s) p = g.mul(p, base);
      EXPECT_EQ(g.pw(x, e), p) << g.spec().to_string() << " " << g.to_string(x) << "^" << e;
      // Property: conjugation is a homomorphism
      EXPECT_EQ(g.conj(g.mul(x, y), z), g.mul(g.conj(x, z), g.conj(y, z)));
    }
  }
}

TEST(Group, CenterExamples) {
  Group d5(Metacyclic{5, 2, 4, 1});
  EXPECT_EQ(center(d5).order(), 1);
  Group d6(Metacyclic{6, 2, 5, 1});
  EXPECT_EQ(center(d6).order(), 2);
  Group q8(Quaternion{2});
  EXPECT_EQ(center(q8).elements, (std::vector<Elem>{0, 2}));
  Group m(Metacyclic{9, 3, 4, 2});
  // c = gcd(3, 9) = 3, so Z = <a^3, b^3> of order 3 * 2
  EXPECT_EQ(center(m).order(), 6);
}

TEST(Group, CenterMatchesBruteForce) {
  for (const auto& spec : small_grid(250)) {
    Group g(spec);
    std::vector<Elem> brute;
    for (Elem x = 0; x < g.order(); ++x) {
      if (static_cast<int64_t>(brute_centralizer(g, x).size()) == g.order()) brute.push_back(x);
    }
    EXPECT_EQ(g.center().elements, brute) << spec.to_string();
    if (spec.is_metacyclic()) {
      const auto& gc = g.constants();
      EXPECT_EQ(g.center().order(), gc.c * gc.l) << spec.to_string();
    } else {
      EXPECT_EQ(g.center().order(), 2);
    }
  }
}

TEST(Group, ClassCensusExamples) {
  // pq group, p = 7, q = 3: 1 + (p-1)/q classes of size q, q-1 of size p
  Group pq(Metacyclic{7, 3, 2, 1});
  EXPECT_EQ(class_size_census(pq), (std::map<int64_t, int64_t>{{1, 1}, {3, 2}, {7, 2}}));
  Group q8(Quaternion{2});
  EXPECT_EQ(class_size_census(q8), (std::map<int64_t, int64_t>{{1, 2}, {2, 3}}));
  Group d6(Metacyclic{6, 2, 5, 1});
  EXPECT_EQ(class_size_census(d6), (std::map<int64_t, int64_t>{{1, 2}, {2, 2}, {3, 2}}));
  Group q12(Quaternion{3});
  EXPECT_EQ(class_size_census(q12), (std::map<int64_t, int64_t>{{1, 2}, {2, 2}, {3, 2}}));
}

TEST(Group, ClassesPartitionTheGroup) {
  for (const auto& spec : small_grid(300)) {
    Group g(spec);
    std::vector<int> seen(g.order(), 0);
    int64_t total = 0;
    for (size_t c = 0; c < g.classes().size(); ++c) {
      const auto& cls = g.classes()[c];
      EXPECT_EQ(cls.members[0], cls.rep);
      EXPECT_EQ(cls.rep, *std::min_element(cls.members.begin(), cls.members.end()));
      for (size_t t = 0; t < cls.members.size(); ++t) {
        Elem x = cls.members[t];
        seen[x]++;
        EXPECT_EQ(g.class_of(x), static_cast<int32_t>(c));
        EXPECT_EQ(g.conj(cls.rep, cls.transversal[t]), x);
      }
      // Property: orbit-stabilizer
      EXPECT_EQ(cls.size() * g.class_centralizer(static_cast<int32_t>(c))->order(), g.order());
      total += cls.size();
    }
    EXPECT_EQ(total, g.order());
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; })) << spec.to_string();
  }
}

TEST(Group, CentralizersMatchBruteForceAndGenerators) {
  std::mt19937 rng(23);
  auto specs = small_grid(400);
  for (int iter = 0; iter < kIterations; ++iter) {
    Group g(specs[rng() % specs.size()]);
    Elem x = static_cast<Elem>(rng() % g.order());
    Subgroup c = centralizer(g, x);
    EXPECT_EQ(c.elements, brute_centralizer(g, x)) << g.spec().to_string() << " " << g.to_string(x);
    EXPECT_EQ(g.generate(centralizer_generators(g, x)).elements, c.elements);
  }
}

TEST(Group, QuaternionCentralizers) {
  Group q12(Quaternion{3});
  EXPECT_EQ(centralizer(q12, q12.id({1, 0})).order(), 6);
  EXPECT_EQ(centralizer(q12, q12.id({1, 1})).order(), 4);
  EXPECT_EQ(centralizer(q12, q12.id({3, 0})).order(), 12);
}

TEST(GmSets, FormulaMatchesProductOverGrid) {
  for (const auto& spec : small_grid(64)) {
    Group g(spec);
    for (int64_t m = 1; m <= 2 * g.exponent(); ++m) {
      for (Elem x = 0; x < g.order(); ++x) {
        auto brute = gm_set(g, x, m);
        std::vector<char> member(g.order(), 0);
        for (Elem y : brute) member[y] = 1;
        for (Elem y = 0; y < g.order(); ++y) {
          ASSERT_EQ(gm_formula(g, x, y, m), member[y] != 0)
              << spec.to_string() << " m=" << m << " x=" << g.to_string(x) << " y=" << g.to_string(y);
        }
      }
    }
  }
}

TEST(GmSets, RandomLargerGroups) {
  std::mt19937 rng(29);
  auto specs = small_grid(400);
  for (int iter = 0; iter < kIterations; ++iter) {
    Group g(specs[rng() % specs.size()]);
    int64_t m = 1 + static_cast<int64_t>(rng() % (2 * g.exponent()));
    Elem x = static_cast<Elem>(rng() % g.order());
    auto brute = gm_set(g, x, m);
    std::set<Elem> member(brute.begin(), brute.end());
    for (int t = 0; t < 30; ++t) {
      Elem y = static_cast<Elem>(rng() % g.order());
      EXPECT_EQ(gm_formula(g, x, y, m), member.count(y) > 0)
          << g.spec().to_string() << " m=" << m << " x=" << g.to_string(x) << " y=" << g.to_string(y);
    }
  }
}

TEST(GmSets, CentralElementsGiveSubgroupOrEmpty) {
  // For central x the product collapses to x^m, so G_m(x) is G or empty.
  for (const auto& spec : small_grid(200)) {
    Group g(spec);
    for (Elem z : g.center().elements) {
      for (int64_t m = 1; m <= g.exponent(); ++m) {
        auto set = gm_set(g, z, m);
        if (g.pw(z, m) == g.identity()) {
          EXPECT_EQ(static_cast<int64_t>(set.size()), g.order());
        } else {
          EXPECT_TRUE(set.empty());
        }
      }
    }
  }
}

TEST(Split, Examples) {
  // d = 1 + 34 + 34^2 = 3 mod 99; neither criterion applies
  auto r = verify_split(Metacyclic{99, 3, 34, 1});
  EXPECT_EQ(r.c, 33);
  EXPECT_EQ(r.d_mod_k, 3);
  EXPECT_EQ(r.h, 3);
  EXPECT_FALSE(r.part_i_applies);
  EXPECT_FALSE(r.part_ii_applies);

  r = verify_split(Metacyclic{7, 3, 2, 1});
  EXPECT_TRUE(r.part_i_applies);
  EXPECT_EQ(r.part_i_verified, true);

  r = verify_split(Metacyclic{12, 2, 7, 1});
  EXPECT_EQ(r.c, 6);
  EXPECT_EQ(r.h, 4);

  // c = 9, k/c = 67
  r = verify_split(Metacyclic{603, 3, 37, 1});
  EXPECT_EQ(r.c, 9);
  EXPECT_TRUE(r.part_i_applies);
  EXPECT_EQ(r.part_i_verified, true);

  // large enough that the checks run on the defining relations
  r = verify_split(Metacyclic{3 * 1109, 2, 3 * 1109 - 1, 1});
  EXPECT_TRUE(r.part_i_applies);
  EXPECT_EQ(r.part_i_verified, true);
  EXPECT_FALSE(r.exhaustive);

  r = verify_split(Metacyclic{7, 3, 2, 1}, false);
  EXPECT_FALSE(r.part_i_verified.has_value());
}

TEST(Split, CriteriaHoldOverGrid) {
  for (const auto& spec : small_grid(400, 0)) {
    auto r = verify_split(spec);
    EXPECT_EQ(r.part_i_applies, r.gcd_c_kc == 1) << spec.to_string();
    EXPECT_EQ(r.part_ii_applies, r.gcd_q_kh == 1) << spec.to_string();
    if (r.part_i_applies) EXPECT_EQ(r.part_i_verified, true) << spec.to_string();
    if (r.part_ii_applies) EXPECT_EQ(r.part_ii_verified, true) << spec.to_string();
  }
}
