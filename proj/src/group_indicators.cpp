#include "fsind/group_indicators.hpp"

#include <fmt/format.h>

#include "fsind/error.hpp"

namespace fsind {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_m(int64_t m) {
  if (m < 1) throw InvalidSpec(fmt::format("indicator degree m = {} must be positive", m));
}

[[noreturn]] void unknown(const GroupSpec& spec, const CharLabel& label) {
  throw UnknownLabel(fmt::format("{} is not an irreducible character of {}", label_to_string(label),
                                 spec.to_string()));
}

std::optional<int64_t> linear_meta(const GroupConstants& gc, const LinearMeta& x, int64_t m) {
  return divides(gc.c, {m, x.t}) && divides(gc.q * gc.l, {m, x.s}) ? 1 : 0;
}

std::optional<int64_t> induced_meta(const GroupConstants& gc, const InducedMeta& x, int64_t m) {
  const int64_t k = gc.k, q = gc.q, l = gc.l, r = x.r, s = x.s, d = gc.d_mod_kq;
  const bool qm = m % q == 0;
  const bool k_mr = divides(k, {m, r});
  const bool kq_mdr = divides(k * q, {m, d, r});
  const bool l_ms = divides(l, {m, s});
  const bool lq_ms = divides(l * q, {m, s});
  if (l % q != 0) {
    if (qm && k_mr && lq_ms) return q;
    if (qm && !k_mr && kq_mdr && lq_ms) return q - 1;
    if (!qm && k_mr && l_ms) return 1;
    if (!k_mr || (!qm && !l_ms) || (qm && !lq_ms)) return 0;
    return std::nullopt;
  }
  if (qm && k_mr && lq_ms) return q;
  if (qm && !k_mr && kq_mdr && lq_ms) return q - 1;
  if (!qm && k_mr && l_ms) return 1;
  if (qm && !k_mr && kq_mdr && l_ms && !lq_ms) return -1;
  return 0;
}

// nu_m = 1 exactly when chi^m is trivial, i.e. the order of chi divides m.
std::optional<int64_t> linear_quat(int64_t n, const LinearQuat& x, int64_t m) {
  int64_t order = x.x == 1 && n % 2 == 1 ? 4 : (x.x != 0 || x.y != 0 ? 2 : 1);
  return m % order == 0 ? 1 : 0;
}

std::optional<int64_t> quat_2dim(int64_t n, const Quat2Dim& x, int64_t m) {
  const bool even = m % 2 == 0;
  const bool n_mj = divides(2 * n, {m, x.j});
  const bool four_mj = divides(4, {m, x.j});
  if (even && n_mj && four_mj) return 2;
  if ((!even && n_mj) || (even && four_mj && !n_mj)) return 1;
  if ((!even && !n_mj) || (even && !four_mj && n_mj)) return 0;
  if (even && !n_mj && !four_mj) return -1;
  return std::nullopt;
}

}  // namespace

std::vector<int64_t> class_power_counts(const Group& g, int64_t m) {
  require_m(m);
  std::vector<int64_t> counts(g.classes().size(), 0);
  for (Elem x = 0; x < g.order(); ++x) ++counts[g.class_of(g.pw(x, m))];
  return counts;
}

int64_t nu_group_brute(const Character& chi, int64_t m) {
  require_m(m);
  if (!chi.on_whole_group()) throw NotASubgroupCharacter("indicator of a subgroup character");
  const Group& g = *chi.group;
  RootCounter rc(chi.conductor());
  for (Elem x = 0; x < g.order(); ++x) {
    for (int32_t e : chi.roots_at(g.pw(x, m))) rc.add(e);
  }
  return rc.integer_quotient(g.order());
}

int64_t nu_group_from_counts(const Character& chi, const std::vector<int64_t>& counts) {
  if (!chi.on_whole_group()) throw NotASubgroupCharacter("indicator of a subgroup character");
  RootCounter rc(chi.conductor());
  for (size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    for (int32_t e : chi.roots[c]) rc.add(e, counts[c]);
  }
  return rc.integer_quotient(chi.group->order());
}

std::optional<int64_t> nu_group_formula(const GroupSpec& spec, const CharLabel& label, int64_t m) {
  require_m(m);
  if (spec.is_quaternion()) {
    const int64_t n = spec.quaternion().n;
    if (const auto* x = std::get_if<LinearQuat>(&label)) {
      if (x->x < 0 || x->x > 1 || x->y < 0 || x->y > 1) unknown(spec, label);
      return linear_quat(n, *x, m);
    }
    if (const auto* x = std::get_if<Quat2Dim>(&label)) {
      if (x->j < 1 || x->j >= n) unknown(spec, label);
      return quat_2dim(n, *x, m);
    }
    unknown(spec, label);
  }
  const GroupConstants gc = group_constants(spec);
  if (const auto* x = std::get_if<LinearMeta>(&label)) {
    if (x->s < 0 || x->s >= gc.q * gc.l || x->t < 0 || x->t >= gc.c) unknown(spec, label);
    return linear_meta(gc, *x, m);
  }
  if (const auto* x = std::get_if<InducedMeta>(&label)) {
    if (x->r <= 0 || x->r >= gc.k || x->r % (gc.k / gc.c) == 0 || x->s < 0 || x->s >= gc.l) {
      unknown(spec, label);
    }
    return induced_meta(gc, *x, m);
  }
  unknown(spec, label);
}

int64_t frobenius_root_count(const Group& g, int64_t m) {
  require_m(m);
  int64_t count = 0;
  for (Elem x = 0; x < g.order(); ++x) count += g.pw(x, m) == g.identity();
  return count;
}

bool total_orthogonality(const std::shared_ptr<const Group>& g) {
  auto counts = class_power_counts(*g, 2);
  for (const auto& chi : irreducible_characters(g)) {
    if (nu_group_from_counts(chi, counts) != 1) return false;
  }
  return true;
}

std::vector<IndicatorRow> group_indicator_table(const std::shared_ptr<const Group>& g, int64_t m_max) {
  if (m_max <= 0) m_max = 2 * g->exponent();
  auto table = irreducible_characters(g);
  std::vector<std::vector<int64_t>> counts;
  counts.reserve(m_max);
  for (int64_t m = 1; m <= m_max; ++m) counts.push_back(class_power_counts(*g, m));
  std::vector<IndicatorRow> rows;
  rows.reserve(table.size() * m_max);
  for (const auto& chi : table) {
    for (int64_t m = 1; m <= m_max; ++m) {
      IndicatorRow row{chi.name(), chi.degree, m, nu_group_formula(g->spec(), chi.label, m),
                       nu_group_from_counts(chi, counts[m - 1]), false};
      row.agree = row.nu_formula && *row.nu_formula == row.nu_brute;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace fsind
