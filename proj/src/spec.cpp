#include "fsind/spec.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "fsind/error.hpp"
#include "fsind/exact_arith.hpp"

namespace fsind {

int64_t GroupSpec::order() const {
  if (is_quaternion()) return 4 * quaternion().n;
  const auto& m = metacyclic();
  return m.k * m.q * m.l;
}

std::string GroupSpec::to_string() const {
  if (is_quaternion()) return fmt::format("Q({})", quaternion().n);
  const auto& m = metacyclic();
  return fmt::format("M({},{},{},{})", m.k, m.q, m.n, m.l);
}

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

void validate(const GroupSpec& spec) {
  if (spec.is_quaternion()) {
    if (spec.quaternion().n < 2) {
      throw InvalidSpec(fmt::format("quaternion n must be >= 2, got {}", spec.quaternion().n));
    }
    return;
  }
  const auto& m = spec.metacyclic();
  if (!is_prime(m.q)) throw InvalidSpec(fmt::format("q = {} is not prime", m.q));
  if (m.l < 1) throw InvalidSpec(fmt::format("l must be >= 1, got {}", m.l));
  if (m.n <= 1 || m.n >= m.k) {
    throw InvalidSpec(fmt::format("n = {} is out of range (1 < n < k = {})", m.n, m.k));
  }
  if (powmod(m.n, m.q, m.k) != 1) {
    throw InvalidSpec(fmt::format("n^q ≢ 1 mod k ({}^{} mod {} = {})", m.n, m.q, m.k,
                                  powmod(m.n, m.q, m.k)));
  }
  // 1 < n < k already rules out n == 1 (mod k); kept for the diagnostic.
  if (mod(m.n, m.k) == 1) throw InvalidSpec("n ≡ 1 mod k");
}

std::vector<GroupSpec> enumerate_grid(const GridOptions& options) {
  std::vector<GroupSpec> out;
  for (int64_t q : options.q_set) {
    if (!is_prime(q)) continue;
    for (int64_t l = 1; l <= options.l_max; ++l) {
      for (int64_t k = 3; k * q * l <= options.order_max; ++k) {
        for (int64_t n = 2; n < k; ++n) {
          if (powmod(n, q, k) == 1) out.emplace_back(Metacyclic{k, q, n, l});
        }
      }
    }
  }
  for (int64_t n = 2; n <= options.quat_max && 4 * n <= options.order_max; ++n) {
    out.emplace_back(Quaternion{n});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fsind
