#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsind/characters.hpp"
#include "fsind/groups.hpp"

namespace fsind {

enum class DoubleKind { Central, TypeI, TypeII, QuatCentral, QuatRotation, QuatReflection };

std::string kind_name(DoubleKind kind);

/// The irreducible module of the double attached to a conjugacy class and an
/// irreducible character eta of the centralizer of its representative s. For
/// central s, eta is a class function on G; otherwise the centralizer is
/// abelian and eta is one of its linear characters.
struct DoubleModuleLabel {
  std::shared_ptr<const Group> group;
  int32_t class_index = 0;
  Character eta;
  int64_t dim = 0;
  DoubleKind kind = DoubleKind::Central;

  const ConjugacyClassInfo& cls() const { return group->classes()[class_index]; }
  Elem rep() const { return cls().rep; }
  std::string name() const;
};

/// One label per (class, eta) pair, classes in order and eta in table order.
/// Checks sum dim^2 = |G|^2 (ClosedFormMismatch otherwise).
std::vector<DoubleModuleLabel> enumerate_double_irreducibles(const std::shared_ptr<const Group>& g);

/// e with eta(x) = zeta_order^e; NotDivisible if eta(x) is not such a root.
int64_t root_index(const Character& eta, Elem x, int64_t order);

/// Trace of p_g # y on the module: eta(T y T^-1) when g is the class member
/// with stored transversal T (T^-1 s T = g) and y centralizes g, else 0.
Cyclotomic double_trace(const DoubleModuleLabel& label, Elem g, Elem y);
/// The same trace computed from the module action: with basis g_i v where
/// g_i = T_i^-1, y g_i = g_j gamma for gamma in C(s) found by coset search, and
/// the trace sums eta(gamma) over blocks with j = i and grading g.
Cyclotomic double_trace_action(const DoubleModuleLabel& label, Elem g, Elem y);

/// (1/|G|) sum_{g in class, a in G_m(g)} trace(p_g # a^m), literally.
int64_t nu_double_brute_trace(const DoubleModuleLabel& label, int64_t m);
/// (1/|C(s)|) sum_{y in C(s)} z_m(s, y) eta(y) with z_m(s, y) = #{a in G_m(s) : a^m = y}.
int64_t nu_double_brute_centralizer(const DoubleModuleLabel& label, int64_t m);
/// Both paths; OracleMismatch if they differ.
int64_t nu_double_brute(const DoubleModuleLabel& label, int64_t m);

/// Indicators for every label and 1 <= m <= m_max from both oracle paths.
/// Products prod_j a^-j g a^j are grown one factor per m, and each path is
/// reduced to a histogram over the centralizer. Sums are evaluated exactly for
/// one label per Galois orbit {eta^t : gcd(t, N) = 1}; a rational sum is fixed
/// by every automorphism, so the other orbit members share its value.
/// `checkpoint` is called between classes and may throw BudgetExceeded.
struct DoubleBruteTable {
  int64_t m_max = 0;
  std::vector<std::vector<int64_t>> nu_trace;        // [label][m - 1]
  std::vector<std::vector<int64_t>> nu_centralizer;  // [label][m - 1]
};
DoubleBruteTable nu_double_brute_table(const std::shared_ptr<const Group>& g,
                                       const std::vector<DoubleModuleLabel>& labels, int64_t m_max,
                                       const std::function<void()>& checkpoint = {});

/// Printed: the case tables exactly as published. Corrected: two rows fixed
/// to match their own derivation (Type I with q | l, row q - 1 gains kq | mdr;
/// quaternion reflection classes with 4 not dividing m are 0 unless
/// gcd(m, 2n) | n). Every other case is identical in both.
enum class FormulaText { Printed, Corrected };

/// Closed-form case split for the label's kind; nullopt when no case applies
/// or a case value is not an integer. UnknownLabel if the label does not
/// belong to the spec.
std::optional<int64_t> nu_double_formula(const GroupSpec& spec, const DoubleModuleLabel& label,
                                         int64_t m, FormulaText text = FormulaText::Printed);

/// Parameters the closed forms read from a label: (i, j) of the
/// representative a^i b^j and (r, s) as used by its kind.
struct DoubleParams {
  int64_t i = 0;
  int64_t j = 0;
  int64_t r = 0;
  int64_t s = 0;
};
DoubleParams double_params(const DoubleModuleLabel& label);

struct NegativeWitness {
  int64_t m = 0;
  std::string label;
  int64_t nu = 0;
};

struct NegativeReport {
  bool exists = false;  // the closed-form classification
  std::optional<NegativeWitness> witness;
};

/// For metacyclic specs with q not dividing l: with k = 2^s x, x odd, true iff
/// q = 2, s >= 3 and n == 2^(s-1) +- 1 (mod 2^s). When true, the witness is the
/// first negative brute-force indicator for m <= m_max (default 2 * exponent),
/// in (m, label) order. Unsupported for quaternion specs or q | l.
NegativeReport negative_exists(const GroupSpec& spec, int64_t m_max = 0);

/// The closed-form half of negative_exists, without the witness search.
bool negative_predicted(const GroupSpec& spec);

struct DoubleIndicatorRow {
  std::string label;
  DoubleKind kind = DoubleKind::Central;
  int64_t dim = 0;
  int64_t m = 0;
  std::optional<int64_t> nu_formula;    // printed text
  std::optional<int64_t> nu_corrected;  // corrected text
  int64_t nu_brute = 0;                 // module-trace path
  int64_t nu_centralizer = 0;           // centralizer-sum path
  bool agree = false;                   // oracles agree with each other and the printed text
  bool agree_corrected = false;         // oracles agree with each other and the corrected text
};

/// Rows in label order, then m.
std::vector<DoubleIndicatorRow> double_indicator_table(const std::shared_ptr<const Group>& g,
                                                       int64_t m_max = 0,
                                                       const std::function<void()>& checkpoint = {});

}  // namespace fsind
