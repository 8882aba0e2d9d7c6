#pragma once

// Finite total orders, cylinder events and the permutation action on orders.
//
// A total order on N is approximated by OrderPrefix, its restriction to
// {0, ..., n-1}. A FiniteOrder l names the cylinder Z_l, the set of all total
// orders extending l; EventExpr is the boolean algebra generated by cylinders.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uminflow/errors.hpp"

namespace uminflow {

// A total order on a finite set of naturals, listed from least to greatest.
class FiniteOrder {
 public:
  FiniteOrder() = default;
  // Throws std::invalid_argument if an element is repeated.
  explicit FiniteOrder(std::vector<Natural> elements);

  const std::vector<Natural>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  friend bool operator==(const FiniteOrder&, const FiniteOrder&) = default;
  friend auto operator<=>(const FiniteOrder&, const FiniteOrder&) = default;

 private:
  std::vector<Natural> elements_;
};

// Restriction of a total order on N to {0, ..., n-1}, stored as a ranking:
// rank(x) is the position of x, so comparisons are O(1).
class OrderPrefix {
 public:
  OrderPrefix() = default;

  static OrderPrefix identity(std::size_t n);
  // `sequence` lists 0..n-1 from least to greatest. Throws std::invalid_argument
  // unless it is a permutation of 0..n-1.
  static OrderPrefix from_sequence(std::vector<Natural> sequence);
  static OrderPrefix from_ranks(std::vector<std::size_t> ranks);

  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t rank(Natural x) const { return ranks_.at(x); }
  bool less(Natural a, Natural b) const { return rank(a) < rank(b); }
  const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
  std::vector<Natural> sequence() const;

  // Restriction to {0, ..., m-1}; m <= size().
  OrderPrefix restrict(std::size_t m) const;

  friend bool operator==(const OrderPrefix&, const OrderPrefix&) = default;

 private:
  std::vector<std::size_t> ranks_;
};

// Text format: the size N on the first line, then 0..N-1 in increasing order
// on the second line, space separated.
std::string format_prefix(const OrderPrefix& o);
OrderPrefix parse_prefix(std::string_view text);

// Boolean combination of cylinder events. Immutable; copies share structure.
class EventExpr {
 public:
  enum class Kind { atom, negation, conjunction, disjunction };

  static EventExpr atom(FiniteOrder order);

  Kind kind() const noexcept;
  // Valid only when kind() == Kind::atom.
  const FiniteOrder& order() const;
  // Valid for negation (operand) and the binary kinds (lhs/rhs).
  const EventExpr& operand() const;
  const EventExpr& lhs() const;
  const EventExpr& rhs() const;

  // Identity of the shared node; used for memoisation.
  const void* id() const noexcept { return node_.get(); }

  friend EventExpr operator!(const EventExpr& e);
  friend EventExpr operator&(const EventExpr& a, const EventExpr& b);
  friend EventExpr operator|(const EventExpr& a, const EventExpr& b);

  // Structural equality.
  friend bool operator==(const EventExpr& a, const EventExpr& b);

 private:
  struct Node;
  explicit EventExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr := term { "|" term } ; term := factor { "&" factor } ;
//   factor := "!" factor | "(" expr ")" | atom ;
//   atom := "ord(" nat { "<" nat } ")" ;
// Whitespace between tokens is ignored. "ord()" is accepted and denotes the
// whole space.
EventExpr parse_event(std::string_view text);
std::string to_string(const EventExpr& e);

// Sorted union of all atoms' elements.
std::vector<Natural> support(const EventExpr& e);

// Evaluates `e` against an order given by a rank function. The caller must
// guarantee that `rank` is defined on support(e).
template <typename RankFn>
bool evaluate_ranked(const EventExpr& e, RankFn&& rank) {
  switch (e.kind()) {
    case EventExpr::Kind::atom: {
      const auto& xs = e.order().elements();
      for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(rank(xs[i - 1]) < rank(xs[i]))) return false;
      return true;
    }
    case EventExpr::Kind::negation:
      return !evaluate_ranked(e.operand(), rank);
    case EventExpr::Kind::conjunction:
      return evaluate_ranked(e.lhs(), rank) && evaluate_ranked(e.rhs(), rank);
    case EventExpr::Kind::disjunction:
      return evaluate_ranked(e.lhs(), rank) || evaluate_ranked(e.rhs(), rank);
  }
  return false;
}

// Throws std::out_of_range if support(e) is not inside the order's domain.
bool evaluate(const EventExpr& e, const OrderPrefix& o);
bool evaluate(const EventExpr& e, const FiniteOrder& o);

// Finite injective map on N; a basic open set of the symmetric group.
class PartialPermutation {
 public:
  PartialPermutation() = default;

  static PartialPermutation identity(std::size_t n);
  // images[i] is the image of i. Throws std::invalid_argument if not injective.
  static PartialPermutation from_images(std::span<const Natural> images);
  static PartialPermutation transposition(Natural a, Natural b);

  // Adds a -> b. Throws std::invalid_argument if a is already mapped elsewhere
  // or b already has another preimage.
  void insert(Natural a, Natural b);

  std::optional<Natural> apply(Natural a) const;
  std::optional<Natural> preimage(Natural b) const;
  Natural at(Natural a) const;
  bool contains(Natural a) const { return forward_.contains(a); }
  bool in_range(Natural b) const { return backward_.contains(b); }
  std::size_t size() const noexcept { return forward_.size(); }

  std::vector<Natural> domain() const;
  std::vector<Natural> range() const;
  const std::map<Natural, Natural>& pairs() const noexcept { return forward_; }

  PartialPermutation inverse() const;
  // (this o other)(x) = this(other(x)), defined where both steps are defined.
  PartialPermutation compose(const PartialPermutation& other) const;
  // True iff this maps {0..n-1} onto itself.
  bool is_bijection_on(std::size_t n) const;

  friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;

 private:
  std::map<Natural, Natural> forward_;
  std::map<Natural, Natural> backward_;
};

// sigma xi, where x <_{sigma xi} y iff sigma^-1 x <_xi sigma^-1 y.
// Throws std::invalid_argument unless sigma is a bijection of {0..n-1}.
OrderPrefix act(const PartialPermutation& sigma, const OrderPrefix& o);

// sigma l (same positions, relabelled elements); sigma Z_l = Z_{sigma l}.
// Throws std::out_of_range if an element is outside sigma's domain.
FiniteOrder act_on_event(const PartialPermutation& sigma, const FiniteOrder& l);
EventExpr act_on_event(const PartialPermutation& sigma, const EventExpr& e);

}  // namespace uminflow
