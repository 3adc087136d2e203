#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fsind {

/// <a, b | a^k = b^(ql) = 1, b a b^-1 = a^n> with n of prime order q mod k.
struct Metacyclic {
  int64_t k = 0;
  int64_t q = 0;
  int64_t n = 0;
  int64_t l = 1;
  auto operator<=>(const Metacyclic&) const = default;
};

/// Generalized quaternion group of order 4n: a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1.
struct Quaternion {
  int64_t n = 0;
  auto operator<=>(const Quaternion&) const = default;
};

/// Names one member of either supported family.
struct GroupSpec {
  std::variant<Metacyclic, Quaternion> family;

  GroupSpec() : family(Metacyclic{}) {}
  GroupSpec(Metacyclic m) : family(m) {}  // NOLINT(google-explicit-constructor)
  GroupSpec(Quaternion q) : family(q) {}  // NOLINT(google-explicit-constructor)

  bool is_metacyclic() const { return std::holds_alternative<Metacyclic>(family); }
  bool is_quaternion() const { return std::holds_alternative<Quaternion>(family); }
  const Metacyclic& metacyclic() const { return std::get<Metacyclic>(family); }
  const Quaternion& quaternion() const { return std::get<Quaternion>(family); }

  /// Order of the group the spec names (kql or 4n); no validation.
  int64_t order() const;

  /// Short stable text form, e.g. "M(12,2,5,1)" for (k,q,n,l) or "Q(2)" for Q_8.
  std::string to_string() const;

  /// Metacyclic specs sort before quaternion ones; within a family, lexicographic
  /// on (k, q, n, l) or n.
  auto operator<=>(const GroupSpec& other) const = default;
};

bool is_prime(int64_t p);

/// Throws InvalidSpec naming the first violated presentation condition.
void validate(const GroupSpec& spec);

/// A parameter grid: metacyclic specs with kql <= order_max, q in q_set and
/// l <= l_max (every admissible n), plus Q_4n with n <= quat_max and 4n <= order_max.
struct GridOptions {
  int64_t order_max = 400;
  std::vector<int64_t> q_set{2, 3, 5, 7};
  int64_t l_max = 4;
  int64_t quat_max = 12;
};

/// All valid specs of the grid in ascending GroupSpec order.
std::vector<GroupSpec> enumerate_grid(const GridOptions& options);

}  // namespace fsind
