#include "fsind/characters.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <set>

#include "fsind/error.hpp"

namespace fsind {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<int64_t> coordinates(int64_t N, const std::vector<int32_t>& roots) {
  RootCounter rc(N);
  for (int32_t e : roots) rc.add(e);
  return rc.reduced();
}

bool same_value(int64_t N, std::vector<int32_t> x, std::vector<int32_t> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y || coordinates(N, x) == coordinates(N, y);
}

bool same_domain(const Character& x, const Character& y) {
  if (x.group != y.group && x.group->spec() != y.group->spec()) return false;
  if (!x.domain || !y.domain) return !x.domain && !y.domain;
  return x.domain == y.domain || x.domain->elements == y.domain->elements;
}

}  // namespace

std::string label_to_string(const CharLabel& label) {
  return std::visit(
      Overloaded{
          [](const LinearMeta& x) { return fmt::format("lin(s={},t={})", x.s, x.t); },
          [](const InducedMeta& x) { return fmt::format("ind(r={},s={})", x.r, x.s); },
          [](const LinearQuat& x) { return fmt::format("qlin(x={},y={})", x.x, x.y); },
          [](const Quat2Dim& x) { return fmt::format("q2(j={})", x.j); },
          [](const AbelianLinear& x) { return fmt::format("ab[{}]", fmt::join(x.images, ",")); },
      },
      label);
}

const std::vector<int32_t>& Character::roots_at(Elem g) const {
  if (!domain) return roots[group->class_of(g)];
  int32_t pos = domain->position(g);
  if (pos < 0) {
    throw NotASubgroupCharacter(
        fmt::format("{} is not in the domain of {}", group->to_string(g), name()));
  }
  return roots[pos];
}

Cyclotomic Character::value(Elem g) const {
  RootCounter rc(conductor());
  for (int32_t e : roots_at(g)) rc.add(e);
  return rc.value();
}

std::vector<std::pair<Elem, Cyclotomic>> Character::values() const {
  std::vector<std::pair<Elem, Cyclotomic>> out;
  if (!domain) {
    for (const auto& c : group->classes()) out.emplace_back(c.rep, value(c.rep));
  } else {
    for (Elem x : domain->elements) out.emplace_back(x, value(x));
  }
  return out;
}

int64_t root_exponent(int64_t N, int64_t order, int64_t e) {
  if (order <= 0 || N % order != 0) {
    throw NotDivisible(fmt::format("root order {} does not divide {}", order, N));
  }
  return mod(e, order) * (N / order);
}

Character linear_meta_character(const std::shared_ptr<const Group>& g, int64_t s, int64_t t) {
  if (g->is_quaternion()) throw InvalidSpec("metacyclic character requested on a quaternion group");
  const auto& gc = g->constants();
  const int64_t N = g->exponent(), ql = gc.q * gc.l;
  Character chi{g, nullptr, 1, LinearMeta{mod(s, ql), mod(t, gc.c)}, {}};
  for (const auto& cls : g->classes()) {
    GroupElement x = g->element(cls.rep);
    int64_t e = root_exponent(N, gc.c, mulmod(t, x.i, gc.c)) + root_exponent(N, ql, mulmod(s, x.j, ql));
    chi.roots.push_back({static_cast<int32_t>(mod(e, N))});
  }
  return chi;
}

Character linear_quat_character(const std::shared_ptr<const Group>& g, int64_t x, int64_t y) {
  if (!g->is_quaternion()) throw InvalidSpec("quaternion character requested on a metacyclic group");
  const int64_t n = g->spec().quaternion().n, N = g->exponent();
  x = mod(x, 2);
  y = mod(y, 2);
  int64_t ea = root_exponent(N, 2, x);
  int64_t eb = root_exponent(N, 2, y) + (x == 1 && n % 2 == 1 ? root_exponent(N, 4, 1) : 0);
  Character chi{g, nullptr, 1, LinearQuat{x, y}, {}};
  for (const auto& cls : g->classes()) {
    GroupElement el = g->element(cls.rep);
    chi.roots.push_back({static_cast<int32_t>(mod(ea * el.i + eb * el.j, N))});
  }
  return chi;
}

Character subgroup_linear_character(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& sub,
                                    const std::vector<int64_t>& images) {
  const int64_t N = g->exponent();
  if (images.size() != sub->generators.size()) {
    throw NotASubgroupCharacter("one image per generator is required");
  }
  std::vector<int64_t> val(sub->order(), -1);
  std::vector<Elem> queue{g->identity()};
  val[sub->position(g->identity())] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    Elem x = queue[head];
    int64_t vx = val[sub->position(x)];
    for (size_t i = 0; i < sub->generators.size(); ++i) {
      Elem y = g->mul(x, sub->generators[i]);
      int32_t py = sub->position(y);
      if (py < 0) throw NotASubgroupCharacter("generator product left the subgroup");
      int64_t vy = mod(vx + images[i], N);
      if (val[py] < 0) {
        val[py] = vy;
        queue.push_back(y);
      } else if (val[py] != vy) {
        throw NotASubgroupCharacter(
            fmt::format("generator images [{}] do not define a character", fmt::join(images, ",")));
      }
    }
  }
  if (static_cast<int64_t>(queue.size()) != sub->order()) {
    throw NotASubgroupCharacter("generators do not generate the subgroup");
  }
  Character chi{g, sub, 1, AbelianLinear{}, {}};
  for (int64_t e : images) std::get<AbelianLinear>(chi.label).images.push_back(mod(e, N));
  chi.roots.reserve(val.size());
  for (int64_t v : val) chi.roots.push_back({static_cast<int32_t>(v)});
  return chi;
}

std::vector<Character> abelian_dual(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& sub) {
  const auto& gens = sub->generators;
  for (Elem x : gens) {
    for (Elem y : gens) {
      if (g->mul(x, y) != g->mul(y, x)) {
        throw NotAbelian(fmt::format("{} and {} do not commute", g->to_string(x), g->to_string(y)));
      }
    }
  }
  const int64_t N = g->exponent();
  // Extend the dual one generator at a time. `span` lists the elements of the
  // current subgroup S; each partial character stores its values on S (by
  // position in the full subgroup) and its generator images.
  std::vector<int32_t> in_span(sub->order(), 0);
  std::vector<Elem> span{g->identity()};
  in_span[sub->position(g->identity())] = 1;
  struct Partial {
    std::vector<int64_t> val;
    std::vector<int64_t> images;
  };
  std::vector<Partial> partial(1);
  partial[0].val.assign(sub->order(), -1);
  partial[0].val[sub->position(g->identity())] = 0;

  for (Elem gen : gens) {
    if (sub->position(gen) < 0) throw NotASubgroupCharacter("generator outside the subgroup");
    // smallest e > 0 with gen^e in S
    int64_t e = 1;
    Elem p = gen;
    while (!in_span[sub->position(p)]) {
      p = g->mul(p, gen);
      ++e;
    }
    std::vector<Elem> next;
    std::vector<Elem> cosets{g->identity()};
    for (int64_t j = 1; j < e; ++j) cosets.push_back(g->mul(cosets.back(), gen));
    for (int64_t j = 0; j < e; ++j) {
      for (Elem s : span) next.push_back(g->mul(s, cosets[j]));
    }
    std::vector<Partial> extended;
    for (const auto& lam : partial) {
      int64_t target = lam.val[sub->position(p)];
      for (int64_t z = 0; z < N; ++z) {
        if (mulmod(z, e, N) != target) continue;
        Partial ext{lam.val, lam.images};
        ext.images.push_back(z);
        for (int64_t j = 1; j < e; ++j) {
          for (Elem s : span) {
            ext.val[sub->position(g->mul(s, cosets[j]))] = mod(lam.val[sub->position(s)] + j * z, N);
          }
        }
        extended.push_back(std::move(ext));
      }
    }
    partial = std::move(extended);
    for (Elem x : next) in_span[sub->position(x)] = 1;
    span = std::move(next);
  }
  if (static_cast<int64_t>(span.size()) != sub->order() ||
      static_cast<int64_t>(partial.size()) != sub->order()) {
    throw ClosedFormMismatch(fmt::format("dual of a subgroup of order {} has {} members", sub->order(),
                                         partial.size()));
  }
  std::vector<Character> out;
  out.reserve(partial.size());
  for (auto& lam : partial) {
    Character chi{g, sub, 1, AbelianLinear{std::move(lam.images)}, {}};
    chi.roots.reserve(lam.val.size());
    for (int64_t v : lam.val) chi.roots.push_back({static_cast<int32_t>(v)});
    out.push_back(std::move(chi));
  }
  return out;
}

Character induce(const Character& chi) {
  if (!chi.domain) throw NotASubgroupCharacter("character is already defined on the whole group");
  const Group& g = *chi.group;
  const Subgroup& h = *chi.domain;
  std::vector<char> covered(g.order(), 0);
  std::vector<Elem> transversal;
  for (Elem t = 0; t < g.order(); ++t) {
    if (covered[t]) continue;
    transversal.push_back(t);
    for (Elem x : h.elements) covered[g.mul(t, x)] = 1;
  }
  Character out{chi.group, nullptr, chi.degree * static_cast<int64_t>(transversal.size()), chi.label, {}};
  for (const auto& cls : g.classes()) {
    std::vector<int32_t> roots;
    for (Elem t : transversal) {
      Elem y = g.conj(cls.rep, t);
      if (!h.contains(y)) continue;
      const auto& r = chi.roots_at(y);
      roots.insert(roots.end(), r.begin(), r.end());
    }
    out.roots.push_back(std::move(roots));
  }
  return out;
}

std::shared_ptr<const Subgroup> inducing_subgroup(const Group& g) {
  if (g.is_quaternion()) return std::make_shared<const Subgroup>(g.generate({g.gen_a()}));
  int64_t q = g.constants().q;
  return std::make_shared<const Subgroup>(g.generate({g.gen_a(), g.pw(g.gen_b(), q)}));
}

Character induced_meta_character(const std::shared_ptr<const Group>& g, int64_t r, int64_t s) {
  if (g->is_quaternion()) throw InvalidSpec("metacyclic character requested on a quaternion group");
  const auto& gc = g->constants();
  const int64_t N = g->exponent();
  auto h = inducing_subgroup(*g);
  Character phi = subgroup_linear_character(
      g, h, {root_exponent(N, gc.k, r), root_exponent(N, gc.l, s)});
  Character chi = induce(phi);
  chi.label = InducedMeta{mod(r, gc.k), mod(s, gc.l)};
  for (size_t c = 0; c < g->classes().size(); ++c) {
    GroupElement x = g->element(g->classes()[c].rep);
    std::vector<int32_t> closed;
    if (x.j % gc.q == 0) {
      int64_t npow = 1;
      for (int64_t u = 0; u < gc.q; ++u) {
        int64_t ia = mulmod(x.i, npow, gc.k);
        closed.push_back(static_cast<int32_t>(
            mod(root_exponent(N, gc.k, mulmod(r, ia, gc.k)) + root_exponent(N, gc.l, s * (x.j / gc.q)), N)));
        npow = mulmod(npow, gc.n, gc.k);
      }
    }
    if (!same_value(N, chi.roots[c], closed)) {
      throw ClosedFormMismatch(fmt::format("{}: induced character {} differs from the closed form at {}",
                                           g->spec().to_string(), chi.name(),
                                           g->to_string(g->classes()[c].rep)));
    }
  }
  return chi;
}

Character quat_2dim_character(const std::shared_ptr<const Group>& g, int64_t j) {
  if (!g->is_quaternion()) throw InvalidSpec("quaternion character requested on a metacyclic group");
  const int64_t n = g->spec().quaternion().n, N = g->exponent();
  auto h = inducing_subgroup(*g);
  Character chi = induce(subgroup_linear_character(g, h, {root_exponent(N, 2 * n, j)}));
  chi.label = Quat2Dim{mod(j, 2 * n)};
  for (size_t c = 0; c < g->classes().size(); ++c) {
    GroupElement x = g->element(g->classes()[c].rep);
    std::vector<int32_t> closed;
    if (x.j == 0) {
      closed.push_back(static_cast<int32_t>(root_exponent(N, 2 * n, mulmod(x.i, j, 2 * n))));
      closed.push_back(static_cast<int32_t>(root_exponent(N, 2 * n, -mulmod(x.i, j, 2 * n))));
    }
    if (!same_value(N, chi.roots[c], closed)) {
      throw ClosedFormMismatch(fmt::format("{}: induced character {} differs from the closed form at {}",
                                           g->spec().to_string(), chi.name(),
                                           g->to_string(g->classes()[c].rep)));
    }
  }
  return chi;
}

Rational inner_product(const Character& chi1, const Character& chi2) {
  if (!same_domain(chi1, chi2)) throw Error("inner product of characters on different domains");
  const int64_t N = chi1.conductor();
  RootCounter rc(N);
  int64_t size = 0;
  for (size_t slot = 0; slot < chi1.roots.size(); ++slot) {
    int64_t weight = chi1.domain ? 1 : chi1.group->classes()[slot].size();
    size += weight;
    for (int32_t e1 : chi1.roots[slot]) {
      for (int32_t e2 : chi2.roots[slot]) rc.add(e1 - e2, weight);
    }
  }
  auto v = rc.rational_value();
  if (!v) throw NotAnInteger(fmt::format("<{}, {}> is irrational", chi1.name(), chi2.name()));
  Rational out = *v / size;
  out.canonicalize();
  return out;
}

std::vector<Character> irreducible_characters(const std::shared_ptr<const Group>& g) {
  std::vector<Character> table;
  if (g->is_quaternion()) {
    const int64_t n = g->spec().quaternion().n;
    for (int64_t x = 0; x < 2; ++x) {
      for (int64_t y = 0; y < 2; ++y) table.push_back(linear_quat_character(g, x, y));
    }
    for (int64_t j = 1; j < n; ++j) table.push_back(quat_2dim_character(g, j));
  } else {
    const auto& gc = g->constants();
    for (int64_t s = 0; s < gc.q * gc.l; ++s) {
      for (int64_t t = 0; t < gc.c; ++t) table.push_back(linear_meta_character(g, s, t));
    }
    const int64_t kc = gc.k / gc.c;
    for (int64_t r = 1; r < gc.k; ++r) {
      if (r % kc == 0) continue;
      bool smallest = true;
      int64_t x = r;
      for (int64_t u = 1; u < gc.q; ++u) {
        x = mulmod(x, gc.n, gc.k);
        if (x < r) smallest = false;
      }
      if (!smallest) continue;
      for (int64_t s = 0; s < gc.l; ++s) table.push_back(induced_meta_character(g, r, s));
    }
  }

  const std::string name = g->spec().to_string();
  int64_t degree_squares = 0;
  std::set<std::vector<int64_t>> seen;
  for (const auto& chi : table) {
    degree_squares += chi.degree * chi.degree;
    if (inner_product(chi, chi) != 1) {
      throw ClosedFormMismatch(fmt::format("{}: {} has norm {}", name, chi.name(),
                                           inner_product(chi, chi).get_str()));
    }
    std::vector<int64_t> key;
    for (const auto& roots : chi.roots) {
      auto v = coordinates(g->exponent(), roots);
      key.insert(key.end(), v.begin(), v.end());
    }
    if (!seen.insert(std::move(key)).second) {
      throw ClosedFormMismatch(fmt::format("{}: {} repeats an earlier character", name, chi.name()));
    }
  }
  if (degree_squares != g->order() || table.size() != g->classes().size()) {
    throw ClosedFormMismatch(fmt::format("{}: {} characters with sum of squared degrees {} for {} classes",
                                         name, table.size(), degree_squares, g->classes().size()));
  }
  return table;
}

CentralRestriction restrict_to_center(const Character& chi) {
  const Group& g = *chi.group;
  const int64_t N = g.exponent();
  auto scalar_root = [&](Elem z) -> int64_t {
    if (!chi.defined_at(z)) {
      throw CenterNotContained(fmt::format("{} is outside the domain of {}", g.to_string(z), chi.name()));
    }
    const auto& roots = chi.roots_at(z);
    if (roots.empty() || std::any_of(roots.begin(), roots.end(), [&](int32_t e) { return e != roots[0]; })) {
      throw CenterNotContained(fmt::format("{} is not scalar at {}", chi.name(), g.to_string(z)));
    }
    return roots[0];
  };
  for (Elem z : g.center().elements) scalar_root(z);
  if (g.is_quaternion()) {
    int64_t e = scalar_root(g.pw(g.gen_a(), g.spec().quaternion().n));
    return {e / (N / 2), 0};
  }
  const auto& gc = g.constants();
  int64_t e1 = scalar_root(g.pw(g.gen_a(), gc.k / gc.c));
  int64_t e2 = scalar_root(g.pw(g.gen_b(), gc.q));
  if (e1 % (N / gc.c) != 0 || e2 % (N / gc.l) != 0) {
    throw ClosedFormMismatch(fmt::format("{}: central values of {} have the wrong order",
                                         g.spec().to_string(), chi.name()));
  }
  return {e1 / (N / gc.c), e2 / (N / gc.l)};
}

}  // namespace fsind
