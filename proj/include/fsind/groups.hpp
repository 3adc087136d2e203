#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsind/exact_arith.hpp"
#include "fsind/spec.hpp"

namespace fsind {

/// Dense element id. Metacyclic a^i b^j has id j*k + i; quaternion a^i b^e has
/// id e*2n + i. Ascending ids are lexicographic on (j, i).
using Elem = int32_t;

/// Normal form a^i b^j with 0 <= i < k, 0 <= j < ql (metacyclic) or
/// 0 <= i < 2n, j in {0, 1} (quaternion).
struct GroupElement {
  int64_t i = 0;
  int64_t j = 0;
  auto operator<=>(const GroupElement&) const = default;
};

struct Subgroup {
  std::vector<Elem> elements;   // ascending
  std::vector<Elem> generators;
  std::vector<int32_t> index;   // index[g] = position of g in elements, or -1

  int64_t order() const { return static_cast<int64_t>(elements.size()); }
  bool contains(Elem g) const { return index[g] >= 0; }
  int32_t position(Elem g) const { return index[g]; }
};

/// A conjugacy class with representative members[0] and a transversal:
/// transversal[t]^-1 * rep * transversal[t] == members[t], transversal[0] = 1.
struct ConjugacyClassInfo {
  Elem rep = 0;
  std::vector<Elem> members;
  std::vector<Elem> transversal;

  int64_t size() const { return static_cast<int64_t>(members.size()); }
};

class Group {
 public:
  /// Validates the spec, computes classes, center and class-representative
  /// centralizers by brute force, and checks them against the closed forms
  /// (ClosedFormMismatch on disagreement).
  explicit Group(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  bool is_quaternion() const { return spec_.is_quaternion(); }
  /// Metacyclic constants; throws InvalidSpec on a quaternion group.
  const GroupConstants& constants() const;

  int64_t order() const { return order_; }
  int64_t exponent() const { return exponent_; }
  Elem identity() const { return 0; }
  Elem gen_a() const;
  Elem gen_b() const;

  GroupElement element(Elem x) const;
  Elem id(GroupElement g) const;
  /// Builds a^i b^j from arbitrary integers, normalizing b^2 = a^n for
  /// quaternion groups.
  Elem make(int64_t i, int64_t j) const;
  std::string to_string(Elem x) const;

  Elem mul(Elem x, Elem y) const {
    return table_.empty() ? mul_closed(x, y) : table_[static_cast<size_t>(x) * order_ + y];
  }
  Elem inv(Elem x) const { return inv_[x]; }
  /// x^e by the closed-form power identity; e may be negative.
  Elem pw(Elem x, int64_t e) const;
  /// y^-1 x y.
  Elem conj(Elem x, Elem y) const { return mul(inv(y), mul(x, y)); }
  int64_t order_of(Elem x) const;

  const std::vector<ConjugacyClassInfo>& classes() const { return classes_; }
  int32_t class_of(Elem x) const { return class_of_[x]; }
  const Subgroup& center() const { return center_; }
  /// Centralizer of the representative of class c.
  const std::shared_ptr<const Subgroup>& class_centralizer(int32_t c) const {
    return centralizers_[c];
  }

  /// The subgroup generated by gens (breadth-first closure).
  Subgroup generate(const std::vector<Elem>& gens) const;
  /// Subgroup from an explicit element list and generator list; no closure.
  Subgroup subgroup_from(std::vector<Elem> elements, std::vector<Elem> gens) const;

 private:
  Elem mul_closed(Elem x, Elem y) const;
  void build_classes();
  void build_center();
  void build_centralizers();

  GroupSpec spec_;
  std::optional<GroupConstants> constants_;
  int64_t order_ = 0;
  int64_t exponent_ = 0;
  int64_t k_ = 0;   // order of a
  int64_t ql_ = 0;  // range of the b exponent (2 for quaternion)
  std::vector<int64_t> npow_;  // n^j mod k for j < q
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<ConjugacyClassInfo> classes_;
  std::vector<int32_t> class_of_;
  Subgroup center_;
  std::vector<std::shared_ptr<const Subgroup>> centralizers_;
};

std::shared_ptr<const Group> make_group(const GroupSpec& spec);

GroupElement mul(const Group& g, GroupElement x, GroupElement y);
GroupElement inv(const Group& g, GroupElement x);
GroupElement pw(const Group& g, GroupElement x, int64_t e);

const Subgroup& center(const Group& g);
const std::vector<ConjugacyClassInfo>& conjugacy_classes(const Group& g);
/// Brute-force centralizer of x, cross-checked against the closed-form
/// generator description.
Subgroup centralizer(const Group& g, Elem x);
/// Closed-form generators of C_G(x).
std::vector<Elem> centralizer_generators(const Group& g, Elem x);
int64_t exponent(const Group& g);

/// { y in G : prod_{j<m} y^-j x y^j = 1 }, by evaluating the product.
std::vector<Elem> gm_set(const Group& g, Elem x, int64_t m);
/// Case predicates for membership of y in G_m(x).
bool gm_formula(const Group& g, Elem x, Elem y, int64_t m);

/// gm_formula with the m-independent work (normal forms, case choice, the
/// geometric sums of n^-v) done once per pair; sweeps call it for many m.
class GmPredicate {
 public:
  GmPredicate(const Group& g, Elem x, Elem y);
  bool operator()(int64_t m) const;

 private:
  enum class Case { QuatCentral, QuatRotation, QuatReflectionAxis, QuatReflection,
                    Central, Twisted, Mixed, Diagonal, Crossed };
  Case case_ = Case::Central;
  int64_t k_ = 0, q_ = 0, ql_ = 0, d_ = 0, i_ = 0, u_ = 0, s_ = 0;
  std::vector<int64_t> prefix_;  // prefix_[r] = sum_{t<r} n^-vt mod k, r <= q
};

struct SplitReport {
  int64_t c = 0;
  int64_t d_mod_k = 0;
  int64_t h = 0;            // gcd(d, k)
  int64_t gcd_c_kc = 0;     // gcd(c, k/c)
  int64_t gcd_q_kh = 0;     // gcd(q, k/h)
  bool part_i_applies = false;
  bool part_ii_applies = false;
  /// Outcome of checking the section / retraction maps; nullopt when the part
  /// does not apply or verification was not requested.
  std::optional<bool> part_i_verified;
  std::optional<bool> part_ii_verified;
  /// True when the homomorphism checks ran over all pairs rather than on the
  /// defining relations.
  bool exhaustive = false;
};

/// Applicability of the two direct-summand criteria and, when `verify` is set,
/// explicit checks of the maps a^(cu), b (part i) and a^i b^j -> a^(udi) (part ii).
SplitReport verify_split(const GroupSpec& spec, bool verify = true);

}  // namespace fsind
