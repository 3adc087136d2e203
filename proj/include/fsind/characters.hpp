#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fsind/exact_arith.hpp"
#include "fsind/groups.hpp"

namespace fsind {

/// Linear character of a metacyclic group: b -> zeta_(ql)^s, a -> zeta_c^t.
struct LinearMeta {
  int64_t s = 0;
  int64_t t = 0;
  auto operator<=>(const LinearMeta&) const = default;
};

/// Character induced from a^i b^(qj) -> zeta_k^(ri) zeta_l^(sj) on <a, b^q>.
/// r is the smallest member of its orbit {r n^u mod k}.
struct InducedMeta {
  int64_t r = 0;
  int64_t s = 0;
  auto operator<=>(const InducedMeta&) const = default;
};

/// Linear character of Q_4n: a -> (-1)^x, b -> w (-1)^y where w = zeta_4 when
/// x = 1 and n is odd (b^2 = a^n forces it), else w = 1.
struct LinearQuat {
  int64_t x = 0;
  int64_t y = 0;
  auto operator<=>(const LinearQuat&) const = default;
};

/// Character of Q_4n induced from a -> zeta_(2n)^j on <a>, 1 <= j < n.
struct Quat2Dim {
  int64_t j = 0;
  auto operator<=>(const Quat2Dim&) const = default;
};

/// Linear character of a subgroup given by the exponents e_i (mod the group
/// exponent N) of the images zeta_N^(e_i) of its listed generators.
struct AbelianLinear {
  std::vector<int64_t> images;
  auto operator<=>(const AbelianLinear&) const = default;
};

using CharLabel = std::variant<LinearMeta, InducedMeta, LinearQuat, Quat2Dim, AbelianLinear>;

std::string label_to_string(const CharLabel& label);

/// A character with values stored as multisets of exponents of zeta_N, where N
/// is the exponent of the ambient group. With `domain` unset it is a class
/// function on the whole group and `roots` is indexed by class; otherwise it
/// lives on the subgroup and `roots` is indexed by element position.
struct Character {
  std::shared_ptr<const Group> group;
  std::shared_ptr<const Subgroup> domain;
  int64_t degree = 0;
  CharLabel label;
  std::vector<std::vector<int32_t>> roots;

  int64_t conductor() const { return group->exponent(); }
  bool on_whole_group() const { return domain == nullptr; }
  bool defined_at(Elem g) const { return !domain || domain->contains(g); }
  /// Throws NotASubgroupCharacter off the domain.
  const std::vector<int32_t>& roots_at(Elem g) const;
  Cyclotomic value(Elem g) const;
  /// (element, value) for each class representative, or for each domain element.
  std::vector<std::pair<Elem, Cyclotomic>> values() const;
  std::string name() const { return label_to_string(label); }
};

/// Pinned primitive root: exponent of zeta_N equal to zeta_order^e.
int64_t root_exponent(int64_t N, int64_t order, int64_t e);

Character linear_meta_character(const std::shared_ptr<const Group>& g, int64_t s, int64_t t);
Character linear_quat_character(const std::shared_ptr<const Group>& g, int64_t x, int64_t y);

/// The linear character of an abelian subgroup with the given generator
/// images; NotASubgroupCharacter if the images are not consistent.
Character subgroup_linear_character(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& sub,
                                    const std::vector<int64_t>& images);

/// All |A| linear characters of an abelian subgroup; NotAbelian otherwise.
std::vector<Character> abelian_dual(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& sub);

/// Induction to the whole group: value at g is the sum over a left transversal
/// t of chi°(t^-1 g t). NotASubgroupCharacter if chi is already a class
/// function on the whole group.
Character induce(const Character& chi);

/// <a, b^q> or <a>: the subgroup the nonlinear characters are induced from.
std::shared_ptr<const Subgroup> inducing_subgroup(const Group& g);

/// Induced character, checked against the closed form sum_u phi(a^(i n^u) b^j)
/// (zero off <a, b^q>); ClosedFormMismatch on disagreement.
Character induced_meta_character(const std::shared_ptr<const Group>& g, int64_t r, int64_t s);
/// Induced character of Q_4n, checked against zeta^(ij) + zeta^(-ij) on a^i and 0 on a^i b.
Character quat_2dim_character(const std::shared_ptr<const Group>& g, int64_t j);

/// (1/|D|) sum_{x in D} chi1(x) conj(chi2(x)) over the common domain D.
Rational inner_product(const Character& chi1, const Character& chi2);

/// The complete table: linear characters first, then the nonlinear ones, in
/// label order. Verified: each norm is 1, the value vectors are pairwise
/// distinct, sum of degree^2 = |G| and the count equals the class count
/// (ClosedFormMismatch otherwise).
std::vector<Character> irreducible_characters(const std::shared_ptr<const Group>& g);

/// chi restricted to Z(G) is degree * lambda with lambda(a^(k/c)) = zeta_c^r and
/// lambda(b^q) = zeta_l^s (metacyclic) or lambda(a^n) = (-1)^r, s = 0 (quaternion).
struct CentralRestriction {
  int64_t r = 0;
  int64_t s = 0;
  auto operator<=>(const CentralRestriction&) const = default;
};

/// CenterNotContained if the domain misses Z(G) or chi is not scalar on it.
CentralRestriction restrict_to_center(const Character& chi);

}  // namespace fsind
