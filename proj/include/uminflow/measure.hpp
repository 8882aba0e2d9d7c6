#pragma once

// The invariant measure mu on total orders of N, evaluated on the algebra
// generated by cylinder events, plus exact linear-extension counting.
//
// mu(Z_l) = 1/|l|!. Two independent routes compute mu on a general event:
//   mu_exact            counts satisfying orders on the event's support;
//   mu_weight_recursive rewrites to a union of signed conjunctions and peels
//                       negated cylinders off one at a time.

#include <cstddef>
#include <utility>
#include <vector>

#include "uminflow/orders.hpp"
#include "uminflow/rational.hpp"

namespace uminflow {

inline constexpr std::size_t kDefaultSupportCap = 8;
inline constexpr std::size_t kDefaultLinearExtensionCap = 16;
// uint64 holds 20! but not 21!.
inline constexpr std::size_t kMaxLinearExtensionCap = 20;
inline constexpr unsigned kMaxPrecision = 64;

// Strict partial order on {0, ..., n-1}, kept transitively closed.
class FinitePoset {
 public:
  FinitePoset() = default;
  explicit FinitePoset(std::size_t n);

  // Transitive closure of `pairs` (a, b) meaning a < b. Throws
  // std::invalid_argument on a cycle or an element >= n.
  static FinitePoset from_pairs(std::size_t n, const std::vector<std::pair<Natural, Natural>>& pairs);
  static FinitePoset chain(std::size_t n);

  std::size_t size() const noexcept { return below_.size(); }
  bool less(Natural a, Natural b) const { return below_.at(b).at(a) != 0; }
  bool comparable(Natural a, Natural b) const { return a != b && (less(a, b) || less(b, a)); }

  // All related pairs, lexicographically sorted.
  std::vector<std::pair<Natural, Natural>> pairs() const;
  // Strict down set / up set of x.
  std::vector<Natural> down_set(Natural x) const;
  std::vector<Natural> up_set(Natural x) const;

  FinitePoset restrict(std::size_t m) const;
  bool is_antichain() const;
  bool is_chain() const;
  // True iff a < b implies a <_o b; o must cover the poset's domain.
  bool extended_by(const OrderPrefix& o) const;

  // Appends element size() with the given strict down set and up set. The
  // down set must be downward closed, the up set upward closed, and every
  // element of `below` must already be less than every element of `above`.
  void add_point(const std::vector<Natural>& below, const std::vector<Natural>& above);

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  // below_[b][a] != 0 iff a < b.
  std::vector<std::vector<char>> below_;
};

// Number of total orders on {0..n-1} extending p, by dynamic programming over
// down sets. Throws CapExceeded if p.size() > cap (cap <= 20).
BigInt linear_extension_count(const FinitePoset& p, std::size_t cap = kDefaultLinearExtensionCap);

// 1 / |l|!.
ExactRational mu_cylinder(const FiniteOrder& l);

// Satisfying orders on support(e) divided by |support(e)|!.
// Throws CapExceeded if |support(e)| > support_cap.
ExactRational mu_exact(const EventExpr& e, std::size_t support_cap = kDefaultSupportCap);

// A possibly negated cylinder. Positive literals are normalised to two-element
// orders, so a conjunction's positive part is a set of comparisons.
struct Literal {
  FiniteOrder order;
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Sorted, duplicate free. The empty conjunction is the whole space.
using Conjunction = std::vector<Literal>;

// Union of signed conjunctions equivalent to e. Conjunctions that are
// recognisably empty are dropped and absorbed ones removed; the empty union
// is the empty event.
std::vector<Conjunction> signed_dnf(const EventExpr& e);
EventExpr to_event(const std::vector<Conjunction>& dnf);

// Number of negated literals.
std::size_t weight(const Conjunction& c);

// Exact value produced by the weight recursion (inclusion-exclusion over the
// union, mu(T' & !Z) = mu(T') - mu(T' & Z) inside each conjunction, weight-0
// conjunctions counted by linear extensions). Throws CapExceeded if a
// weight-0 conjunction's support exceeds support_cap.
ExactRational weight_recursion_value(const EventExpr& e, std::size_t support_cap = kDefaultLinearExtensionCap);

// beta_k with |beta_k - mu(e)| < 2^-k. Throws CapExceeded for k > 64.
DyadicApprox mu_weight_recursive(const EventExpr& e, unsigned k,
                                 std::size_t support_cap = kDefaultLinearExtensionCap);

// mu of "no element of {0..N-1} lies strictly between n and m": 2(N-1)(N-2)!/N!.
// Throws std::invalid_argument unless n != m, n, m < N and N >= 2.
ExactRational mu_adjacency(Natural n, Natural m, std::size_t N);
// The same event spelled out as a conjunction of negated three-element cylinders.
EventExpr adjacency_event(Natural n, Natural m, std::size_t N);

}  // namespace uminflow
