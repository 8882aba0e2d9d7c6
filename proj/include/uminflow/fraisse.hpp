#pragma once

// Recursive presentations of three homogeneous structures on N (the rational
// order, the Rado graph, the universal poset with its canonical linear
// extension) and the effective back-and-forth isomorphism between order
// presentations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uminflow/measure.hpp"
#include "uminflow/orders.hpp"

namespace uminflow {

// A decidable strict total order on N. `name` identifies the presentation in
// certificates and on the command line.
struct OrderPresentation {
  std::string name;
  std::function<bool(Natural, Natural)> less;
  // Optional shortcut for witness searches: the least element strictly
  // between two elements (either bound may be absent), or nullopt if it does
  // not fit in a Natural. Must agree with scanning 0, 1, 2, ... with `less`.
  std::function<std::optional<Natural>(std::optional<Natural>, std::optional<Natural>)> least_between = nullptr;
};

// Restriction of a presentation to {0..n-1}.
OrderPrefix prefix_of(const OrderPresentation& p, std::size_t n);

// --- rational order ---------------------------------------------------------

// q(0) = 0, q(2i-1) = c_i, q(2i) = -c_i, where c_1, c_2, ... is the
// breadth-first (Calkin-Wilf) listing of the positive reduced fractions.
struct RationalValue {
  std::int64_t numerator;
  std::uint64_t denominator;
};
RationalValue rational_value(Natural a);
bool rational_order_less(Natural a, Natural b);
std::optional<Natural> rational_least_between(std::optional<Natural> lower, std::optional<Natural> upper);
OrderPresentation rational_order();  // "rational-v1"

// Dyadic rationals z + m/2^e, with (z, fraction) decoded from the Cantor
// pairing of a. A second, unrelated presentation of the same order type.
bool dyadic_order_less(Natural a, Natural b);
OrderPresentation dyadic_order();  // "dyadic-v1"

// The usual order on N; not dense, kept for negative checks.
OrderPresentation natural_order();  // "natural"

// The canonical linear extension of the universal poset (grows the shared
// poset construction on demand).
OrderPresentation canonical_poset_order();  // "poset-canon-v1"

// Looks up one of the named presentations above. Throws std::invalid_argument.
OrderPresentation presentation_by_name(std::string_view name);

// --- Rado graph ---------------------------------------------------------------

// For i < j: adjacent iff bit i of j is set. Throws std::invalid_argument if i == j.
bool rado_adjacent(Natural i, Natural j);

// z outside A u B adjacent to every a in A and to no b in B. Throws
// std::invalid_argument if A and B meet, std::out_of_range if the witness
// would not fit in 64 bits.
Natural rado_extension_witness(const std::vector<Natural>& A, const std::vector<Natural>& B);

// Finite graph on {0..vertices-1} whose first `pair_count` vertex pairs (in
// colex order, see pair_rank) are decided; pair_count = vertices*(vertices-1)/2
// for a complete prefix.
class GraphPrefix {
 public:
  GraphPrefix() = default;
  explicit GraphPrefix(std::size_t vertices);
  static GraphPrefix from_pair_bits(std::vector<bool> bits);

  std::size_t vertices() const noexcept { return vertices_; }
  std::size_t pair_count() const noexcept { return bits_.size(); }
  bool adjacent(Natural i, Natural j) const;
  void set_adjacent(Natural i, Natural j, bool value);
  const std::vector<bool>& pair_bits() const noexcept { return bits_; }
  std::vector<std::pair<Natural, Natural>> edges() const;

  friend bool operator==(const GraphPrefix&, const GraphPrefix&) = default;

 private:
  std::size_t vertices_ = 0;
  std::vector<bool> bits_;
};

// Colex rank of {i, j}, i < j: j(j-1)/2 + i.
Natural pair_rank(Natural i, Natural j);
std::pair<Natural, Natural> pair_unrank(Natural r);

GraphPrefix rado_prefix(std::size_t vertices);

// Edge list text: vertex count on the first line, then one "i j" per edge.
std::string format_edge_list(const GraphPrefix& g);
GraphPrefix parse_edge_list(std::string_view text);

// --- universal poset --------------------------------------------------------

inline constexpr std::size_t kDefaultPosetCap = 64;

// Stage N of the universal poset together with the canonical linear extension
// restricted to {0..N-1}.
struct PosetStage {
  FinitePoset stage;
  OrderPrefix canon;
};

// Deterministic staged construction. Each new point realises the
// least-indexed one-point extension demand (A, B, Z, canon gap) over the
// current points that is consistent and not yet realised. Demands are ordered
// by the bitmask of A u B u Z, then by the labelling, then by the gap.
// Stages are cached and nested. Throws CapExceeded if N > cap.
PosetStage universal_poset_stage(std::size_t N, std::size_t cap = kDefaultPosetCap);

// Smallest stage that realises the demand (A, B, Z), i.e. contains some x
// outside A u B u Z with A < x < B and x incomparable to Z; 0 if none up to
// max_stage. The demand must satisfy the axiom's precondition.
std::size_t poset_demand_witness_stage(const std::vector<Natural>& A, const std::vector<Natural>& B,
                                       const std::vector<Natural>& Z, std::size_t max_stage);

nlohmann::json to_json(const PosetStage& s);
PosetStage poset_stage_from_json(const nlohmann::json& j);

// --- density and back-and-forth ----------------------------------------------

struct DensityReport {
  std::size_t n = 0;
  std::size_t search_bound = 0;
  // (lower, upper) pairs with no j <= search_bound strictly between them.
  std::vector<std::pair<Natural, Natural>> unwitnessed_between;
  std::vector<Natural> no_lower;
  std::vector<Natural> no_upper;

  bool all_witnessed() const {
    return unwitnessed_between.empty() && no_lower.empty() && no_upper.empty();
  }
};

// Bounded check of density and the absence of endpoints on {0..n}.
DensityReport check_density(const OrderPresentation& pres, std::size_t n, std::size_t search_bound);

inline constexpr std::size_t kDefaultStepBudget = std::size_t{1} << 20;

// Order isomorphism between two presentations whose domain and range both
// contain {0..n-1}. Alternates forth (least unmapped a, least compatible
// image) and back steps. Candidates up to the largest partner chosen so far on
// a side are free; throws BudgetExhausted if one step needs more than
// `step_budget` candidates beyond that.
PartialPermutation back_and_forth(const OrderPresentation& from, const OrderPresentation& to, std::size_t n,
                                  std::size_t step_budget = kDefaultStepBudget);

// a <_from a' iff f(a) <_to f(a') for all a, a' in f's domain.
bool is_order_isomorphism(const PartialPermutation& f, const OrderPresentation& from, const OrderPresentation& to);

}  // namespace uminflow
