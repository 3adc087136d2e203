#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsind/characters.hpp"
#include "fsind/groups.hpp"

namespace fsind {

/// counts[c] = #{g in G : g^m lies in class c}.
std::vector<int64_t> class_power_counts(const Group& g, int64_t m);

/// (1/|G|) sum_g chi(g^m), summed literally over the group; NotAnInteger if
/// the result is not a rational integer.
int64_t nu_group_brute(const Character& chi, int64_t m);
/// The same sum grouped by classes, from class_power_counts(group, m).
int64_t nu_group_from_counts(const Character& chi, const std::vector<int64_t>& counts);

/// Case split of the closed forms on divisibility predicates only. nullopt
/// when no case matches; UnknownLabel when the label is not an irreducible
/// character of the spec.
std::optional<int64_t> nu_group_formula(const GroupSpec& spec, const CharLabel& label, int64_t m);

/// #{g in G : g^m = 1}.
int64_t frobenius_root_count(const Group& g, int64_t m);

/// True iff every irreducible character has nu_2 = 1.
bool total_orthogonality(const std::shared_ptr<const Group>& g);

struct IndicatorRow {
  std::string label;
  int64_t degree = 0;
  int64_t m = 0;
  std::optional<int64_t> nu_formula;
  int64_t nu_brute = 0;
  bool agree = false;
};

/// Rows for every irreducible character (table order) and 1 <= m <= m_max
/// (default 2 * exponent).
std::vector<IndicatorRow> group_indicator_table(const std::shared_ptr<const Group>& g,
                                                int64_t m_max = 0);

}  // namespace fsind
