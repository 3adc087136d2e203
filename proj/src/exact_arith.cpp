#include "fsind/exact_arith.hpp"

#include <fmt/format.h>

#include <map>
#include <mutex>
#include <numeric>

#include "fsind/error.hpp"

namespace fsind {

int64_t powmod(int64_t base, int64_t e, int64_t m) {
  if (m == 1) return 0;
  int64_t result = 1;
  int64_t b = mod(base, m);
  while (e > 0) {
    if (e & 1) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return result;
}

int64_t invmod(int64_t a, int64_t m) {
  int64_t old_r = mod(a, m), r = m;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    int64_t quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1 && m != 1) {
    throw NotDivisible(fmt::format("{} is not invertible modulo {}", a, m));
  }
  return mod(old_s, m);
}

void throw_division_by_zero() { throw NotDivisible("divisibility by zero"); }

int64_t euler_phi(int64_t n) {
  int64_t result = n;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(int64_t n) {
  int result = 1;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> small, large;
  for (int64_t f = 1; f * f <= n; ++f) {
    if (n % f != 0) continue;
    small.push_back(f);
    if (f != n / f) large.push_back(n / f);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

UnitSolution solve_unit_congruence(int64_t a, int64_t k) {
  a = mod(a, k);
  int64_t g = std::gcd(a, k);
  if (k == 1) return {1, 0};
  int64_t kg = k / g;
  // a/g is a unit modulo k/g; lift its inverse to a unit modulo k.
  int64_t base = kg == 1 ? 0 : invmod(a / g, kg);
  for (int64_t t = 0; t < g; ++t) {
    int64_t u = base + t * kg;
    if (std::gcd(u, k) == 1) return {g, u};
  }
  throw NotDivisible(fmt::format("no unit solves u*{} = {} mod {}", a, g, k));
}

// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<int64_t>;

int64_t checked_add(int64_t x, int64_t y) {
  int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw Error("cyclotomic coefficient overflow");
  return out;
}

int64_t checked_mul(int64_t x, int64_t y) {
  int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw Error("cyclotomic coefficient overflow");
  return out;
}

// Exact quotient of p by the monic polynomial m.
Poly divide_exact(Poly p, const Poly& m) {
  size_t dm = m.size() - 1;
  Poly quot(p.size() - dm, 0);
  for (size_t i = p.size(); i-- > dm;) {
    int64_t coef = p[i];
    quot[i - dm] = coef;
    if (coef == 0) continue;
    for (size_t j = 0; j <= dm; ++j) {
      p[i - dm + j] = checked_add(p[i - dm + j], -checked_mul(coef, m[j]));
    }
  }
  for (size_t i = 0; i < dm; ++i) {
    if (p[i] != 0) throw Error("inexact polynomial division");
  }
  return quot;
}

std::mutex poly_mutex;
std::map<int64_t, Poly> poly_cache;

Poly cyclotomic_polynomial(int64_t N) {
  {
    std::lock_guard lock(poly_mutex);
    auto it = poly_cache.find(N);
    if (it != poly_cache.end()) return it->second;
  }
  Poly p(N + 1, 0);
  p[0] = -1;
  p[N] = 1;
  for (int64_t d : divisors(N)) {
    if (d == N) continue;
    p = divide_exact(std::move(p), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(poly_mutex);
  poly_cache.emplace(N, p);
  return p;
}

}  // namespace

CyclotomicField::CyclotomicField(int64_t N) : N_(N), phi_(euler_phi(N)) {
  if (N < 1) throw Error(fmt::format("invalid conductor {}", N));
  poly_ = cyclotomic_polynomial(N);
  table_.assign(static_cast<size_t>(N) * phi_, 0);
  std::vector<int64_t> cur(phi_, 0);
  cur[0] = 1;
  for (int64_t e = 0; e < N; ++e) {
    std::copy(cur.begin(), cur.end(), table_.begin() + e * phi_);
    // multiply by x, folding x^phi back through Phi_N
    int64_t top = cur[phi_ - 1];
    for (int64_t j = phi_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int64_t j = 0; j < phi_; ++j) cur[j] = checked_add(cur[j], -checked_mul(top, poly_[j]));
    }
  }
  gcd_.resize(N);
  orbit_.assign(N + 1, 0);
  orbit_mu_.assign(N + 1, 0);
  for (int64_t e = 0; e < N; ++e) {
    gcd_[e] = std::gcd(e, N);
    ++orbit_[gcd_[e]];
  }
  for (int64_t g : divisors(N)) orbit_mu_[g] = mobius(N / g);

  // For p^a || N the top digit of e mod p^a is eliminated when it equals 0
  // (odd p) or 1 (p = 2).
  int64_t rest = N;
  for (int64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    int64_t pa = 1;
    while (rest % p == 0) {
      rest /= p;
      pa *= p;
    }
    PrimeLayer layer{p, N / p, {}};
    const int64_t low = pa / p, drop = p == 2 ? 1 : 0;
    for (int64_t e = 0; e < N; ++e) {
      if ((e % pa) / low == drop) layer.excluded.push_back(e);
    }
    dense_cost_ += N * p;
    layers_.push_back(std::move(layer));
  }
  one_.assign(N, 0);
  one_[0] = 1;
  reduce_dense(one_);
  while (one_[one_pivot_] == 0) ++one_pivot_;
}

void CyclotomicField::reduce_dense(std::vector<int64_t>& c) const {
  for (const auto& layer : layers_) {
    for (int64_t e : layer.excluded) {
      int64_t v = c[e];
      if (v == 0) continue;
      c[e] = 0;
      int64_t f = e;
      for (int64_t j = 1; j < layer.p; ++j) {
        f += layer.step;
        if (f >= N_) f -= N_;
        c[f] = checked_add(c[f], -v);
      }
    }
  }
}

std::optional<int64_t> CyclotomicField::rational_from_dense(std::vector<int64_t>& c) const {
  reduce_dense(c);
  // one_ has entries +-1, so the candidate value is read off the pivot
  int64_t value = c[one_pivot_] * one_[one_pivot_];
  for (int64_t e = 0; e < N_; ++e) {
    if (c[e] != checked_mul(value, one_[e])) return std::nullopt;
  }
  return value;
}

std::shared_ptr<const CyclotomicField> cyclotomic_field(int64_t N) {
  static std::mutex mutex;
  static std::map<int64_t, std::shared_ptr<const CyclotomicField>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
  }
  auto field = std::make_shared<const CyclotomicField>(N);
  std::lock_guard lock(mutex);
  return cache.emplace(N, field).first->second;
}

// ---------------------------------------------------------------------------

Cyclotomic::Cyclotomic() : N_(1), coeffs_(1) {}

Cyclotomic::Cyclotomic(int64_t N, std::vector<Rational> coeffs)
    : N_(N), coeffs_(std::move(coeffs)) {
  if (static_cast<int64_t>(coeffs_.size()) != euler_phi(N)) {
    throw Error(fmt::format("Q(zeta_{}) needs {} coordinates, got {}", N, euler_phi(N),
                            coeffs_.size()));
  }
}

Cyclotomic Cyclotomic::from_integer(int64_t N, const Rational& x) {
  std::vector<Rational> c(euler_phi(N));
  c[0] = x;
  return {N, std::move(c)};
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

namespace {

// Reduce a rational vector indexed by exponent mod N into the power basis.
Cyclotomic reduce_exponents(int64_t N, const std::vector<std::pair<int64_t, Rational>>& terms) {
  auto field = cyclotomic_field(N);
  std::vector<Rational> out(field->degree());
  for (const auto& [e, coef] : terms) {
    if (coef == 0) continue;
    const int64_t* row = field->power(mod(e, N));
    for (int64_t j = 0; j < field->degree(); ++j) {
      if (row[j] != 0) out[j] += coef * row[j];
    }
  }
  return {N, std::move(out)};
}

}  // namespace

Cyclotomic Cyclotomic::lift(int64_t M) const {
  if (M % N_ != 0) throw Error(fmt::format("cannot lift Q(zeta_{}) into Q(zeta_{})", N_, M));
  if (M == N_) return *this;
  std::vector<std::pair<int64_t, Rational>> terms;
  for (size_t e = 0; e < coeffs_.size(); ++e) {
    terms.emplace_back(static_cast<int64_t>(e) * (M / N_), coeffs_[e]);
  }
  return reduce_exponents(M, terms);
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] == 0) continue;
    if (!out.empty()) out += " + ";
    out += coeffs_[e].get_str();
    if (e > 0) out += fmt::format("*z{}^{}", N_, e);
  }
  return out.empty() ? "0" : out;
}

bool Cyclotomic::operator==(const Cyclotomic& other) const {
  if (N_ == other.N_) return coeffs_ == other.coeffs_;
  int64_t M = std::lcm(N_, other.N_);
  return lift(M).coeffs_ == other.lift(M).coeffs_;
}

Cyclotomic cyc_root(int64_t N, int64_t e) { return reduce_exponents(N, {{e, Rational(1)}}); }

Cyclotomic cyc_add(const Cyclotomic& x, const Cyclotomic& y) {
  if (x.conductor() != y.conductor()) {
    int64_t M = std::lcm(x.conductor(), y.conductor());
    return cyc_add(x.lift(M), y.lift(M));
  }
  std::vector<Rational> out = x.coeffs();
  for (size_t j = 0; j < out.size(); ++j) out[j] += y.coeffs()[j];
  return {x.conductor(), std::move(out)};
}

Cyclotomic cyc_neg(const Cyclotomic& x) { return cyc_scale(x, Rational(-1)); }

Cyclotomic cyc_scale(const Cyclotomic& x, const Rational& r) {
  std::vector<Rational> out = x.coeffs();
  for (auto& c : out) c *= r;
  return {x.conductor(), std::move(out)};
}

Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y) {
  if (x.conductor() != y.conductor()) {
    int64_t M = std::lcm(x.conductor(), y.conductor());
    return cyc_mul(x.lift(M), y.lift(M));
  }
  int64_t N = x.conductor();
  const auto& a = x.coeffs();
  const auto& b = y.coeffs();
  std::vector<Rational> prod(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
  }
  std::vector<std::pair<int64_t, Rational>> terms;
  for (size_t e = 0; e < prod.size(); ++e) terms.emplace_back(static_cast<int64_t>(e), prod[e]);
  return reduce_exponents(N, terms);
}

Cyclotomic cyc_conj(const Cyclotomic& x) {
  int64_t N = x.conductor();
  std::vector<std::pair<int64_t, Rational>> terms;
  for (size_t e = 0; e < x.coeffs().size(); ++e) {
    terms.emplace_back(N - static_cast<int64_t>(e), x.coeffs()[e]);
  }
  return reduce_exponents(N, terms);
}

std::optional<Rational> cyc_as_rational(const Cyclotomic& x) {
  for (size_t j = 1; j < x.coeffs().size(); ++j) {
    if (x.coeffs()[j] != 0) return std::nullopt;
  }
  return x.coeffs()[0];
}

mpz_class cyc_as_rational_integer(const Cyclotomic& x) {
  auto r = cyc_as_rational(x);
  if (!r || r->get_den() != 1) {
    throw NotAnInteger(fmt::format("value {} is not a rational integer", x.to_string()));
  }
  return r->get_num();
}

// ---------------------------------------------------------------------------

RootCounter::RootCounter(int64_t N)
    : N_(N),
      field_(cyclotomic_field(N)),
      count_(N, 0),
      listed_(N, 0),
      orbit_value_(N + 1, 0),
      orbit_members_(N + 1, 0) {}

void RootCounter::add(int64_t e, int64_t multiplicity) {
  e = mod(e, N_);
  count_[e] += multiplicity;
  if (!listed_[e]) {
    listed_[e] = 1;
    touched_.push_back(e);
  }
}

void RootCounter::clear() {
  for (int64_t e : touched_) {
    count_[e] = 0;
    listed_[e] = 0;
  }
  touched_.clear();
}

// The sum is Galois-stable when the counts are constant on every set
// {e : gcd(e, N) = g}; then each such set sums to mu(N/g).
bool RootCounter::galois_stable() const {
  for (int64_t e : touched_) {
    int64_t g = field_->gcd_with_conductor(e);
    orbit_value_[g] = 0;
    orbit_members_[g] = 0;
  }
  bool stable = true;
  for (int64_t e : touched_) {
    if (count_[e] == 0) continue;
    int64_t g = field_->gcd_with_conductor(e);
    if (orbit_members_[g] == 0) {
      orbit_value_[g] = count_[e];
    } else if (orbit_value_[g] != count_[e]) {
      stable = false;
    }
    ++orbit_members_[g];
  }
  if (!stable) return false;
  for (int64_t e : touched_) {
    int64_t g = field_->gcd_with_conductor(e);
    if (orbit_members_[g] != 0 && orbit_members_[g] != field_->orbit_size(g)) return false;
  }
  return true;
}

std::vector<int64_t> RootCounter::reduced() const {
  std::vector<__int128> acc(field_->degree(), 0);
  for (int64_t e : touched_) {
    if (count_[e] == 0) continue;
    const int64_t* row = field_->power(e);
    for (int64_t j = 0; j < field_->degree(); ++j) {
      acc[j] += static_cast<__int128>(row[j]) * count_[e];
    }
  }
  std::vector<int64_t> out(acc.size());
  for (size_t j = 0; j < acc.size(); ++j) {
    if (acc[j] > INT64_MAX || acc[j] < INT64_MIN) throw Error("root count overflow");
    out[j] = static_cast<int64_t>(acc[j]);
  }
  return out;
}

Cyclotomic RootCounter::value() const {
  auto r = reduced();
  std::vector<Rational> coeffs(r.size());
  for (size_t j = 0; j < r.size(); ++j) coeffs[j] = Rational(mpz_class(static_cast<long>(r[j])));
  return {N_, std::move(coeffs)};
}

std::optional<Rational> RootCounter::rational_value() const {
  if (galois_stable()) {
    int64_t total = 0;
    for (int64_t e : touched_) {
      int64_t g = field_->gcd_with_conductor(e);
      if (orbit_members_[g] == 0) continue;
      total += orbit_value_[g] * field_->orbit_sum(g);
      orbit_members_[g] = 0;  // count each orbit once
    }
    return Rational(mpz_class(static_cast<long>(total)));
  }
  if (static_cast<int64_t>(touched_.size()) * field_->degree() > field_->dense_reduction_cost()) {
    std::vector<int64_t> dense(count_);
    auto v = field_->rational_from_dense(dense);
    if (!v) return std::nullopt;
    return Rational(mpz_class(static_cast<long>(*v)));
  }
  auto r = reduced();
  for (size_t j = 1; j < r.size(); ++j) {
    if (r[j] != 0) return std::nullopt;
  }
  return Rational(mpz_class(static_cast<long>(r[0])));
}

int64_t RootCounter::integer_quotient(int64_t divisor) const {
  auto r = rational_value();
  if (!r) throw NotAnInteger(fmt::format("root sum {} is irrational", value().to_string()));
  Rational q = *r / divisor;
  if (q.get_den() != 1) {
    throw NotAnInteger(fmt::format("root sum {} is not divisible by {}", r->get_str(), divisor));
  }
  return q.get_num().get_si();
}

// ---------------------------------------------------------------------------

namespace {

void require(bool ok, const std::string& what, const GroupConstants& gc) {
  if (!ok) {
    throw ClosedFormMismatch(fmt::format("constants of M({},{},{},{}) violate {}", gc.k, gc.q,
                                         gc.n, gc.l, what));
  }
}

int64_t geometric_sum(int64_t n, int64_t terms, int64_t m) {
  int64_t sum = 0, p = 1 % m;
  for (int64_t j = 0; j < terms; ++j) {
    sum = (sum + p) % m;
    p = mulmod(p, n, m);
  }
  return sum;
}

}  // namespace

GroupConstants group_constants(const GroupSpec& spec) {
  if (spec.is_quaternion()) throw InvalidSpec("c and d are defined for metacyclic groups only");
  validate(spec);
  const auto& s = spec.metacyclic();
  GroupConstants gc;
  gc.k = s.k;
  gc.q = s.q;
  gc.n = s.n;
  gc.l = s.l;
  gc.c = std::gcd(s.n - 1, s.k);
  gc.d_mod_kq = geometric_sum(s.n, s.q, s.k * s.q);
  gc.d_mod_q2 = geometric_sum(s.n, s.q, s.q * s.q);
  int64_t dk = gc.d_mod_k();
  int64_t kc = gc.k / gc.c;
  gc.h = std::gcd(dk, gc.k);

  require(dk % kc == 0, "d ≡ 0 mod k/c", gc);
  gc.d_prime = (dk / kc) % gc.c;
  require(mod(dk - gc.q, gc.c) == 0, "d ≡ q mod c", gc);
  require((gc.k % gc.q == 0) == (gc.c % gc.q == 0), "q | k <=> q | c", gc);
  if (gc.k % gc.q == 0) require(gc.d_mod_kq % gc.q == 0, "q | k => q | d", gc);
  if (gc.q > 2) {
    require(gc.d_mod_q2 != 0, "q^2 ∤ d", gc);
    if (gc.d_mod_q2 % gc.q == 0) {
      require(divides(gc.k * gc.q, {gc.d_mod_kq, gc.d_mod_kq - gc.q}), "q | d => kq | d(d-q)",
              gc);
    }
  }
  return gc;
}

std::optional<TypeIIData> type2_constants(const GroupConstants& gc, int64_t m, int64_t i,
                                          int64_t r) {
  if (m % gc.q != 0) {
    throw NotDivisible(fmt::format("q = {} does not divide m = {}", gc.q, m));
  }
  int64_t k = gc.k;
  int64_t mq = m / gc.q;
  auto [h, u] = solve_unit_congruence(mulmod(mq, gc.d_mod_k() - gc.q, k), k);
  if (!divides(h, {m, i})) return std::nullopt;

  TypeIIData out;
  out.m = m;
  out.h = h;
  out.u = u;
  auto mi = static_cast<__int128>(m) * mod(i, k);
  out.v_i = mulmod(static_cast<int64_t>((mi / h) % k), u, k);
  int64_t e = mulmod(mulmod(mulmod(r, gc.d_mod_k(), k), mq, k), out.v_i, k);
  int64_t kc = k / gc.c;
  if (e % kc != 0) throw ClosedFormMismatch("a^(r d (m/q) v_i) lies outside <a^(k/c)>");
  out.xi_exponent = (e / kc) % gc.c;
  out.xi = cyc_root(gc.c, out.xi_exponent);
  return out;
}

std::optional<TypeIIData> type2_constants(const GroupSpec& spec, int64_t m, int64_t i,
                                          int64_t r) {
  return type2_constants(group_constants(spec), m, i, r);
}

}  // namespace fsind
