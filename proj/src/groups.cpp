#include "fsind/groups.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "fsind/error.hpp"

namespace fsind {

namespace {

constexpr int64_t kTableLimit = 1024;

// sum_{r<h} g^r mod k, for g of multiplicative order dividing `period`.
int64_t periodic_geometric_sum(int64_t g, int64_t h, int64_t period, int64_t k) {
  g = mod(g, k);
  if (g == 1 % k) return mod(h, k);
  int64_t full = 0, partial = 0, p = 1 % k;
  int64_t rem = h % period;
  for (int64_t r = 0; r < period; ++r) {
    if (r == rem) partial = full;
    full = (full + p) % k;
    p = mulmod(p, g, k);
  }
  return mod(mulmod(h / period, full, k) + partial, k);
}

// Metacyclic normal-form arithmetic shared by Group and the splitting checks.
struct Meta {
  int64_t k, q, ql;
  std::vector<int64_t> npow;  // n^j mod k, j < q

  Meta(int64_t k_, int64_t q_, int64_t n, int64_t l) : k(k_), q(q_), ql(q_ * l) {
    npow.resize(q);
    int64_t p = 1 % k;
    for (int64_t j = 0; j < q; ++j) {
      npow[j] = p;
      p = mulmod(p, n, k);
    }
  }
  GroupElement mul(GroupElement x, GroupElement y) const {
    return {(x.i + mulmod(y.i, npow[x.j % q], k)) % k, (x.j + y.j) % ql};
  }
  GroupElement inv(GroupElement x) const {
    int64_t back = mod(-x.j, ql);
    return {mod(-mulmod(x.i, npow[back % q], k), k), back};
  }
  GroupElement pw(GroupElement x, int64_t e) const {
    if (e < 0) return pw(inv(x), -e);
    int64_t s = periodic_geometric_sum(npow[x.j % q], e, q, k);
    return {mulmod(x.i, s, k), mulmod(x.j, e, ql)};
  }
};

}  // namespace

Group::Group(const GroupSpec& spec) : spec_(spec) {
  validate(spec_);
  order_ = spec_.order();
  if (order_ > INT32_MAX / 2) throw BudgetExceeded("group order too large for dense ids");
  if (spec_.is_metacyclic()) {
    const auto& m = spec_.metacyclic();
    constants_ = group_constants(spec_);
    k_ = m.k;
    ql_ = m.q * m.l;
    npow_ = Meta(m.k, m.q, m.n, m.l).npow;
  } else {
    k_ = 2 * spec_.quaternion().n;
    ql_ = 2;
  }
  if (order_ <= kTableLimit) {
    table_.resize(static_cast<size_t>(order_) * order_);
    for (Elem x = 0; x < order_; ++x) {
      for (Elem y = 0; y < order_; ++y) table_[static_cast<size_t>(x) * order_ + y] = mul_closed(x, y);
    }
  }
  inv_.resize(order_);
  for (Elem x = 0; x < order_; ++x) {
    GroupElement g = element(x);
    if (is_quaternion()) {
      int64_t n = spec_.quaternion().n;
      inv_[x] = g.j == 0 ? id({mod(-g.i, k_), 0}) : id({mod(g.i + n, k_), 1});
    } else {
      const auto& m = spec_.metacyclic();
      inv_[x] = id(Meta(m.k, m.q, m.n, m.l).inv(g));
    }
    if (mul(x, inv_[x]) != identity()) throw ClosedFormMismatch("inverse formula failed");
  }
  exponent_ = 1;
  for (Elem x = 0; x < order_; ++x) exponent_ = std::lcm(exponent_, order_of(x));
  build_classes();
  build_center();
  build_centralizers();
}

const GroupConstants& Group::constants() const {
  if (!constants_) throw InvalidSpec("c and d are defined for metacyclic groups only");
  return *constants_;
}

Elem Group::gen_a() const { return order_ > 1 ? id({1 % k_, 0}) : 0; }
Elem Group::gen_b() const { return make(0, 1); }

GroupElement Group::element(Elem x) const { return {x % k_, x / k_}; }

Elem Group::id(GroupElement g) const { return static_cast<Elem>(g.j * k_ + g.i); }

Elem Group::make(int64_t i, int64_t j) const {
  if (is_quaternion()) {
    int64_t jj = mod(j, 4);
    return id({mod(i + spec_.quaternion().n * (jj / 2), k_), jj % 2});
  }
  return id({mod(i, k_), mod(j, ql_)});
}

std::string Group::to_string(Elem x) const {
  GroupElement g = element(x);
  if (g.i == 0 && g.j == 0) return "1";
  std::string out;
  if (g.i != 0) out += g.i == 1 ? "a" : fmt::format("a^{}", g.i);
  if (g.j != 0) out += g.j == 1 ? "b" : fmt::format("b^{}", g.j);
  return out;
}

Elem Group::mul_closed(Elem x, Elem y) const {
  GroupElement g = element(x), h = element(y);
  if (is_quaternion()) {
    int64_t n = spec_.quaternion().n;
    if (g.j == 0) return id({(g.i + h.i) % k_, h.j});
    // b a^s = a^-s b, and b^2 = a^n
    if (h.j == 0) return id({mod(g.i - h.i, k_), 1});
    return id({mod(g.i - h.i + n, k_), 0});
  }
  return id({(g.i + mulmod(h.i, npow_[g.j % npow_.size()], k_)) % k_, (g.j + h.j) % ql_});
}

Elem Group::pw(Elem x, int64_t e) const {
  if (e < 0) return pw(inv(x), -e);
  GroupElement g = element(x);
  if (is_quaternion()) {
    int64_t n = spec_.quaternion().n;
    if (g.j == 0) return id({mulmod(g.i, e, k_), 0});
    // (a^i b)^2 = a^n
    int64_t half = mulmod(n, e / 2, k_);
    return e % 2 == 0 ? id({half, 0}) : id({mod(half + g.i, k_), 1});
  }
  int64_t q = static_cast<int64_t>(npow_.size());
  int64_t s = periodic_geometric_sum(npow_[g.j % q], e, q, k_);
  return id({mulmod(g.i, s, k_), mulmod(g.j, e, ql_)});
}

int64_t Group::order_of(Elem x) const {
  for (int64_t d : divisors(order_)) {
    if (pw(x, d) == identity()) return d;
  }
  throw ClosedFormMismatch("element order does not divide |G|");
}

Subgroup Group::subgroup_from(std::vector<Elem> elements, std::vector<Elem> gens) const {
  Subgroup s;
  std::sort(elements.begin(), elements.end());
  s.elements = std::move(elements);
  s.generators = std::move(gens);
  s.index.assign(order_, -1);
  for (size_t p = 0; p < s.elements.size(); ++p) s.index[s.elements[p]] = static_cast<int32_t>(p);
  return s;
}

Subgroup Group::generate(const std::vector<Elem>& gens) const {
  std::vector<char> seen(order_, 0);
  std::vector<Elem> found{identity()};
  seen[identity()] = 1;
  for (size_t p = 0; p < found.size(); ++p) {
    for (Elem y : gens) {
      Elem z = mul(found[p], y);
      if (!seen[z]) {
        seen[z] = 1;
        found.push_back(z);
      }
    }
  }
  return subgroup_from(std::move(found), gens);
}

void Group::build_classes() {
  class_of_.assign(order_, -1);
  const std::vector<Elem> gens{gen_a(), gen_b()};
  for (Elem x = 0; x < order_; ++x) {
    if (class_of_[x] >= 0) continue;
    ConjugacyClassInfo info;
    info.rep = x;
    info.members.push_back(x);
    info.transversal.push_back(identity());
    auto cls = static_cast<int32_t>(classes_.size());
    class_of_[x] = cls;
    for (size_t p = 0; p < info.members.size(); ++p) {
      for (Elem y : gens) {
        Elem t = conj(info.members[p], y);
        if (class_of_[t] >= 0) continue;
        class_of_[t] = cls;
        info.members.push_back(t);
        info.transversal.push_back(mul(info.transversal[p], y));
      }
    }
    classes_.push_back(std::move(info));
  }

  // Closed-form class shapes.
  auto fail = [&](const std::string& what) {
    throw ClosedFormMismatch(fmt::format("{}: {}", spec_.to_string(), what));
  };
  int64_t singles = 0, small = 0, large = 0;
  for (const auto& info : classes_) {
    for (size_t t = 0; t < info.members.size(); ++t) {
      if (conj(info.rep, info.transversal[t]) != info.members[t]) fail("transversal property");
    }
    GroupElement s = element(info.rep);
    std::vector<Elem> expected;
    if (is_quaternion()) {
      int64_t n = spec_.quaternion().n;
      if (s.j == 1) {
        for (int64_t h = 0; h < n; ++h) expected.push_back(id({mod(s.i - 2 * h, k_), 1}));
        ++large;
      } else if (s.i == 0 || s.i == n) {
        expected.push_back(info.rep);
        ++singles;
      } else {
        expected = {info.rep, id({mod(-s.i, k_), 0})};
        ++small;
      }
    } else {
      const auto& gc = *constants_;
      int64_t kc = gc.k / gc.c;
      if (s.j % gc.q != 0) {
        for (int64_t h = 0; h < kc; ++h) expected.push_back(id({(s.i + h * gc.c) % gc.k, s.j}));
        ++large;
      } else if (s.i % kc == 0) {
        expected.push_back(info.rep);
        ++singles;
      } else {
        for (int64_t u = 0; u < gc.q; ++u) expected.push_back(id({mulmod(s.i, npow_[u], gc.k), s.j}));
        ++small;
      }
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    std::vector<Elem> got = info.members;
    std::sort(got.begin(), got.end());
    if (got != expected) fail(fmt::format("class of {} differs from closed form", to_string(info.rep)));
  }
  if (is_quaternion()) {
    int64_t n = spec_.quaternion().n;
    if (singles != 2 || small != n - 1 || large != 2) fail("quaternion class census");
  } else {
    const auto& gc = *constants_;
    if (mod(gc.k - gc.c, gc.q) != 0) fail("k ≢ c mod q");
    if (singles != gc.c * gc.l || small != gc.l * (gc.k - gc.c) / gc.q ||
        large != gc.c * gc.l * (gc.q - 1)) {
      fail("metacyclic class census");
    }
  }
}

void Group::build_center() {
  std::vector<Elem> z;
  const Elem a = gen_a(), b = gen_b();
  for (Elem x = 0; x < order_; ++x) {
    if (mul(x, a) == mul(a, x) && mul(x, b) == mul(b, x)) z.push_back(x);
  }
  std::vector<Elem> gens;
  if (is_quaternion()) {
    gens = {id({spec_.quaternion().n, 0})};
  } else {
    const auto& gc = *constants_;
    gens = {make(gc.k / gc.c, 0), make(0, gc.q)};
  }
  Subgroup closed = generate(gens);
  if (closed.elements != z) {
    throw ClosedFormMismatch(fmt::format("{}: center differs from closed form", spec_.to_string()));
  }
  center_ = std::move(closed);
  for (Elem x : center_.elements) {
    if (classes_[class_of_[x]].size() != 1) throw ClosedFormMismatch("central element in a non-singleton class");
  }
}

void Group::build_centralizers() {
  centralizers_.reserve(classes_.size());
  for (const auto& info : classes_) {
    auto c = std::make_shared<Subgroup>(centralizer(*this, info.rep));
    if (c->order() * info.size() != order_) {
      throw ClosedFormMismatch(fmt::format("{}: |C(x)| |class(x)| != |G| for x = {}",
                                           spec_.to_string(), to_string(info.rep)));
    }
    centralizers_.push_back(std::move(c));
  }
}

std::shared_ptr<const Group> make_group(const GroupSpec& spec) {
  return std::make_shared<const Group>(spec);
}

GroupElement mul(const Group& g, GroupElement x, GroupElement y) {
  return g.element(g.mul(g.id(x), g.id(y)));
}
GroupElement inv(const Group& g, GroupElement x) { return g.element(g.inv(g.id(x))); }
GroupElement pw(const Group& g, GroupElement x, int64_t e) { return g.element(g.pw(g.id(x), e)); }

const Subgroup& center(const Group& g) { return g.center(); }
const std::vector<ConjugacyClassInfo>& conjugacy_classes(const Group& g) { return g.classes(); }
int64_t exponent(const Group& g) { return g.exponent(); }

std::vector<Elem> centralizer_generators(const Group& g, Elem x) {
  GroupElement s = g.element(x);
  if (g.is_quaternion()) {
    int64_t n = g.spec().quaternion().n;
    if (s.j == 1) return {x};
    if (s.i == 0 || s.i == n) return {g.gen_a(), g.gen_b()};
    return {g.gen_a()};
  }
  const auto& gc = g.constants();
  if (s.j % gc.q != 0) return {x, g.make(gc.k / gc.c, 0), g.make(0, gc.q)};
  if (s.i % (gc.k / gc.c) == 0) return {g.gen_a(), g.gen_b()};
  return {g.gen_a(), g.make(0, gc.q)};
}

Subgroup centralizer(const Group& g, Elem x) {
  std::vector<Elem> brute;
  for (Elem y = 0; y < g.order(); ++y) {
    if (g.mul(x, y) == g.mul(y, x)) brute.push_back(y);
  }
  Subgroup closed = g.generate(centralizer_generators(g, x));
  if (closed.elements != brute) {
    throw ClosedFormMismatch(fmt::format("{}: centralizer of {} differs from closed form",
                                         g.spec().to_string(), g.to_string(x)));
  }
  return closed;
}

std::vector<Elem> gm_set(const Group& g, Elem x, int64_t m) {
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y) {
    Elem acc = g.identity();
    Elem term = x;  // y^-j x y^j
    for (int64_t j = 0; j < m; ++j) {
      acc = g.mul(acc, term);
      term = g.conj(term, y);
    }
    if (acc == g.identity()) out.push_back(y);
  }
  return out;
}

GmPredicate::GmPredicate(const Group& g, Elem x, Elem y) {
  const GroupElement xe = g.element(x), ye = g.element(y);
  i_ = xe.i;
  s_ = ye.i;
  if (g.is_quaternion()) {
    k_ = 2 * g.spec().quaternion().n;
    if (xe.j == 0 && ye.j == 0) {
      case_ = Case::QuatCentral;
    } else if (xe.j == 0) {
      case_ = Case::QuatRotation;
    } else if (ye.j == 0) {
      case_ = Case::QuatReflectionAxis;
    } else {
      case_ = Case::QuatReflection;
      s_ = i_ - ye.i;
    }
    return;
  }
  const auto& gc = g.constants();
  k_ = gc.k;
  q_ = gc.q;
  ql_ = gc.q * gc.l;
  d_ = gc.d_mod_kq;
  u_ = xe.j;
  const int64_t v = ye.j;
  if (u_ % q_ == 0 && v % q_ == 0) {
    case_ = Case::Central;
  } else if (u_ % q_ == 0) {
    case_ = Case::Twisted;
    const int64_t back = powmod(gc.n, mod(-v, q_), k_);  // n^-v
    prefix_.assign(q_ + 1, 0);
    int64_t p = 1 % k_;
    for (int64_t r = 0; r < q_; ++r) {
      prefix_[r + 1] = (prefix_[r] + p) % k_;
      p = mulmod(p, back, k_);
    }
    // n^-v == 1: the sum of m terms is m itself
    if (mod(back, k_) == 1 % k_) prefix_.clear();
  } else if (v % q_ == 0) {
    case_ = Case::Mixed;
  } else if ((u_ - v) % q_ != 0) {
    case_ = Case::Crossed;
  } else {
    case_ = Case::Diagonal;
  }
}

bool GmPredicate::operator()(int64_t m) const {
  switch (case_) {
    case Case::QuatCentral:
      return divides(k_, {m, i_});
    case Case::QuatRotation:
      // the product is a^(i * sum (-1)^j), trivial for odd m only when x = 1
      return m % 2 == 0 || i_ == 0;
    case Case::QuatReflectionAxis:
    case Case::QuatReflection: {
      if (m % 2 != 0) return false;
      if (m % 4 == 0) return divides(k_, {m, s_});
      return mod(k_ / 2 + mulmod(m, s_, k_), k_) == 0;
    }
    default:
      break;
  }
  if (!divides(ql_, {m, u_})) return false;
  switch (case_) {
    case Case::Central:
      return divides(k_, {m, i_});
    case Case::Twisted: {
      if (m % q_ == 0) return divides(k_ * q_, {m, d_, i_});
      const int64_t sum = prefix_.empty()
                              ? mod(m, k_)
                              : mod(mulmod(m / q_, prefix_[q_], k_) + prefix_[m % q_], k_);
      return mulmod(i_, sum, k_) == 0;
    }
    case Case::Mixed: {
      // q does not divide u, so ql | mu forces q | m
      const int64_t mqd = mulmod(m / q_, d_, k_);
      return mod(mulmod(mqd, i_, k_) + mulmod(s_, m - mqd, k_), k_) == 0;
    }
    case Case::Crossed:
      return divides(k_ * q_, {m, d_, i_});
    case Case::Diagonal: {
      const int64_t mqd = mulmod(m / q_, d_, k_);
      return mod(mulmod(m, i_, k_) + mulmod(s_, mqd - m, k_), k_) == 0;
    }
    default:
      return false;
  }
}

bool gm_formula(const Group& g, Elem x, Elem y, int64_t m) { return GmPredicate(g, x, y)(m); }

SplitReport verify_split(const GroupSpec& spec, bool verify) {
  const GroupConstants gc = group_constants(spec);
  const int64_t k = gc.k, q = gc.q, ql = gc.q * gc.l;
  const int64_t kc = k / gc.c, kh = k / gc.h;
  SplitReport rep;
  rep.c = gc.c;
  rep.d_mod_k = gc.d_mod_k();
  rep.h = gc.h;
  rep.gcd_c_kc = std::gcd(gc.c, kc);
  rep.gcd_q_kh = std::gcd(q, kh);
  rep.part_i_applies = rep.gcd_c_kc == 1;
  rep.part_ii_applies = rep.gcd_q_kh == 1;
  if (!verify) return rep;

  constexpr int64_t kPairLimit = 2048;
  const Meta G(k, q, gc.n, gc.l);
  const GroupElement e{0, 0};
  rep.exhaustive = true;

  if (rep.part_i_applies) {
    // G/<a^(k/c)> = <x, y | x^(k/c) = y^(ql) = 1, y x y^-1 = x^n>, section x -> a^(cu), y -> b.
    const Meta Q(kc, q, gc.n % kc, gc.l);
    const int64_t u = invmod(gc.c, kc);
    auto section = [&](GroupElement x) { return GroupElement{mulmod(gc.c * u, x.i, k), x.j}; };
    auto project = [&](GroupElement g) { return GroupElement{g.i % kc, g.j}; };
    bool ok = true;
    const int64_t order_q = kc * ql;
    if (order_q <= kPairLimit) {
      for (int64_t x = 0; x < order_q && ok; ++x) {
        GroupElement gx{x % kc, x / kc};
        ok = project(section(gx)) == gx;
        for (int64_t y = 0; y < order_q && ok; ++y) {
          GroupElement gy{y % kc, y / kc};
          ok = section(Q.mul(gx, gy)) == G.mul(section(gx), section(gy));
        }
      }
    } else {
      rep.exhaustive = false;
      GroupElement X = section({1, 0}), Y = section({0, 1});
      ok = G.pw(X, kc) == e && G.pw(Y, ql) == e &&
           G.mul(G.mul(Y, X), G.inv(Y)) == G.pw(X, gc.n) &&
           project(X) == GroupElement{1 % kc, 0} && project(Y) == GroupElement{0, 1 % ql};
    }
    rep.part_i_verified = ok;
  }

  if (rep.part_ii_applies) {
    // Retraction a^i b^j -> a^(udi) onto <a^d>, with uq == 1 mod k/h.
    const int64_t u = kh == 1 ? 0 : invmod(q, kh);
    const int64_t ud = mulmod(u, gc.d_mod_k(), k);
    auto retract = [&](GroupElement g) { return GroupElement{mulmod(ud, g.i, k), 0}; };
    bool ok = true;
    if (k * ql <= kPairLimit) {
      std::vector<char> image(k, 0);
      for (int64_t x = 0; x < k * ql && ok; ++x) {
        GroupElement gx{x % k, x / k};
        image[retract(gx).i] = 1;
        for (int64_t y = 0; y < k * ql && ok; ++y) {
          GroupElement gy{y % k, y / k};
          ok = retract(G.mul(gx, gy)) == G.mul(retract(gx), retract(gy));
        }
      }
      for (int64_t i = 0; i < k && ok; ++i) {
        bool in_k = i % gc.h == 0;  // <a^d> = <a^h>
        ok = static_cast<bool>(image[i]) == in_k;
        if (in_k && ok) ok = retract({i, 0}) == GroupElement{i, 0};
      }
    } else {
      rep.exhaustive = false;
      GroupElement A = retract({1, 0});
      ok = G.pw(A, k) == e && A == G.pw(A, gc.n) && std::gcd(A.i, k) == gc.h &&
           retract({gc.d_mod_k(), 0}) == GroupElement{gc.d_mod_k(), 0};
    }
    rep.part_ii_verified = ok;
  }
  return rep;
}

}  // namespace fsind
