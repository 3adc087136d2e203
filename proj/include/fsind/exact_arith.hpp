#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsind/spec.hpp"

namespace fsind {

using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Modular number theory on int64. Products go through __int128.

/// Least nonnegative residue of a modulo m (m >= 1).
inline int64_t mod(int64_t a, int64_t m) {
  if (a >= 0 && a < m) return a;
  const int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  a = mod(a, m);
  b = mod(b, m);
  // 128-bit division is several times slower; skip it when the product fits
  if (m <= (int64_t{1} << 31)) return a * b % m;
  return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t powmod(int64_t base, int64_t e, int64_t m);
/// Inverse of a modulo m; throws NotDivisible when gcd(a, m) != 1.
int64_t invmod(int64_t a, int64_t m);

[[noreturn]] void throw_division_by_zero();

/// True when n divides the product of the factors. Factors may be negative;
/// the product is never formed over the integers, so nothing overflows.
inline bool divides(int64_t n, std::initializer_list<int64_t> factors) {
  if (n == 0) throw_division_by_zero();
  n = n < 0 ? -n : n;
  if (n == 1) return true;
  int64_t p = 1;
  for (int64_t f : factors) p = mulmod(p, f, n);
  return p == 0;
}

int64_t euler_phi(int64_t n);
int mobius(int64_t n);
std::vector<int64_t> divisors(int64_t n);

struct UnitSolution {
  int64_t g = 0;  // gcd(a, k)
  int64_t u = 0;  // unit modulo k with u * a == g (mod k)
};

/// Solve u * a == gcd(a, k) (mod k) with u a unit modulo k.
UnitSolution solve_unit_congruence(int64_t a, int64_t k);

// ---------------------------------------------------------------------------
// Cyclotomic fields.

/// Q(zeta_N) with its power basis of size phi(N) modulo Phi_N. Shared and
/// immutable once built; obtain instances through cyclotomic_field().
class CyclotomicField {
 public:
  explicit CyclotomicField(int64_t N);

  int64_t conductor() const { return N_; }
  int64_t degree() const { return phi_; }
  /// Coefficients of Phi_N, lowest degree first, leading coefficient 1.
  const std::vector<int64_t>& minimal_polynomial() const { return poly_; }
  /// Coordinates of zeta_N^e in the power basis, 0 <= e < N.
  const int64_t* power(int64_t e) const { return &table_[static_cast<size_t>(e) * phi_]; }
  /// gcd(e, N) for 0 <= e < N (gcd(0, N) = N).
  int64_t gcd_with_conductor(int64_t e) const { return gcd_[e]; }
  /// Number of exponents e in [0, N) with gcd(e, N) = g, for g | N.
  int64_t orbit_size(int64_t g) const { return orbit_[g]; }
  /// Sum of zeta_N^e over that orbit, which is mu(N/g).
  int orbit_sum(int64_t g) const { return orbit_mu_[g]; }

  /// Rational value of sum c[e] zeta_N^e for a dense vector c of length N, or
  /// nullopt when the sum is irrational. Reduces c in place to the basis of
  /// exponents whose top p-adic digit avoids one residue for each prime p | N,
  /// using sum_j zeta^(e + jN/p) = 0; costs O(N * sum of primes).
  std::optional<int64_t> rational_from_dense(std::vector<int64_t>& c) const;
  int64_t dense_reduction_cost() const { return dense_cost_; }

 private:
  void reduce_dense(std::vector<int64_t>& c) const;

  int64_t N_;
  int64_t phi_;
  std::vector<int64_t> poly_;
  std::vector<int64_t> table_;
  std::vector<int64_t> gcd_;
  std::vector<int64_t> orbit_;
  std::vector<int> orbit_mu_;
  struct PrimeLayer {
    int64_t p;
    int64_t step;                   // N / p
    std::vector<int64_t> excluded;  // exponents eliminated at this prime
  };
  std::vector<PrimeLayer> layers_;
  std::vector<int64_t> one_;  // reduced form of 1
  int64_t one_pivot_ = 0;
  int64_t dense_cost_ = 0;
};

/// Cached field for conductor N; thread-safe.
std::shared_ptr<const CyclotomicField> cyclotomic_field(int64_t N);

/// Element of Q(zeta_N) in reduced coordinates.
class Cyclotomic {
 public:
  Cyclotomic();  // zero in Q(zeta_1)
  Cyclotomic(int64_t N, std::vector<Rational> coeffs);
  static Cyclotomic from_integer(int64_t N, const Rational& x);

  int64_t conductor() const { return N_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// The same value viewed in Q(zeta_M); requires N | M.
  Cyclotomic lift(int64_t M) const;
  std::string to_string() const;

  bool operator==(const Cyclotomic& other) const;

 private:
  int64_t N_;
  std::vector<Rational> coeffs_;
};

Cyclotomic cyc_root(int64_t N, int64_t e);
Cyclotomic cyc_add(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic cyc_neg(const Cyclotomic& x);
Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic cyc_scale(const Cyclotomic& x, const Rational& r);
Cyclotomic cyc_conj(const Cyclotomic& x);
std::optional<Rational> cyc_as_rational(const Cyclotomic& x);
/// Throws NotAnInteger unless x is a rational integer.
mpz_class cyc_as_rational_integer(const Cyclotomic& x);

/// Integer multiset of N-th roots of unity, summed lazily. The accumulators
/// behind every brute-force indicator: add exponents with multiplicity, then
/// ask for the exact value of the sum.
class RootCounter {
 public:
  explicit RootCounter(int64_t N);

  int64_t conductor() const { return N_; }
  void add(int64_t e, int64_t multiplicity = 1);
  void clear();
  bool empty() const { return touched_.empty(); }

  /// Exact value of sum count[e] * zeta_N^e in Q(zeta_N).
  Cyclotomic value() const;
  /// The sum as a rational number, or nullopt if it is irrational.
  std::optional<Rational> rational_value() const;
  /// (sum) / divisor, which must be a rational integer; otherwise NotAnInteger.
  int64_t integer_quotient(int64_t divisor) const;
  /// Integer coordinates of the sum in the power basis of Q(zeta_N).
  std::vector<int64_t> reduced() const;

 private:
  bool galois_stable() const;

  int64_t N_;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<int64_t> count_;
  std::vector<char> listed_;
  std::vector<int64_t> touched_;
  // scratch for the Galois test, indexed by gcd(e, N)
  mutable std::vector<int64_t> orbit_value_;
  mutable std::vector<int64_t> orbit_members_;
};

// ---------------------------------------------------------------------------
// Constants of Z_k x|_n Z_{ql}.

struct GroupConstants {
  int64_t k = 0;
  int64_t q = 0;
  int64_t n = 0;
  int64_t l = 0;
  int64_t c = 0;         // gcd(n - 1, k)
  int64_t d_mod_kq = 0;  // (n^q - 1)/(n - 1) reduced modulo kq
  int64_t d_mod_q2 = 0;  // the same sum modulo q^2
  int64_t d_prime = 0;   // d == d_prime * (k/c) (mod k), 0 <= d_prime < c
  int64_t h = 0;         // gcd(d, k)

  int64_t d_mod_k() const { return d_mod_kq % k; }
};

/// Throws InvalidSpec for quaternion or invalid input; asserts the
/// congruences d == 0 (mod k/c), d == q (mod c), q | k <=> q | c, and for q > 2
/// both q^2 does not divide d and (q | d => kq | d(d - q)).
GroupConstants group_constants(const GroupSpec& spec);

struct TypeIIData {
  int64_t m = 0;
  int64_t h = 0;    // gcd((m/q)(d - q), k)
  int64_t u = 0;    // unit modulo k with u (m/q)(d - q) == h (mod k)
  int64_t v_i = 0;  // (m i / h) u, reduced modulo k
  int64_t xi_exponent = 0;  // xi = zeta_c^xi_exponent
  Cyclotomic xi;            // in Q(zeta_c)
};

/// Constants attached to a size-k/c class and an integer pair (i, r) at level m.
/// nullopt when h does not divide m i. Throws NotDivisible when q does not
/// divide m. The dual generator of <a^(k/c)> is pinned by a^(k/c) -> zeta_c.
std::optional<TypeIIData> type2_constants(const GroupConstants& gc, int64_t m, int64_t i,
                                          int64_t r);
std::optional<TypeIIData> type2_constants(const GroupSpec& spec, int64_t m, int64_t i,
                                          int64_t r);

}  // namespace fsind
