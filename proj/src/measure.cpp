#include "uminflow/measure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace uminflow {

// ---------------------------------------------------------------------------
// FinitePoset

FinitePoset::FinitePoset(std::size_t n) : below_(n, std::vector<char>(n, 0)) {}

FinitePoset FinitePoset::from_pairs(std::size_t n, const std::vector<std::pair<Natural, Natural>>& pairs) {
  FinitePoset p(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::invalid_argument("poset pair outside domain");
    p.below_[b][a] = 1;
  }
  // Warshall.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t b = 0; b < n; ++b)
      if (p.below_[b][k])
        for (std::size_t a = 0; a < n; ++a)
          if (p.below_[k][a]) p.below_[b][a] = 1;
  for (std::size_t a = 0; a < n; ++a)
    if (p.below_[a][a]) throw std::invalid_argument("poset relation has a cycle");
  return p;
}

FinitePoset FinitePoset::chain(std::size_t n) {
  FinitePoset p(n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < b; ++a) p.below_[b][a] = 1;
  return p;
}

std::vector<std::pair<Natural, Natural>> FinitePoset::pairs() const {
  std::vector<std::pair<Natural, Natural>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (below_[b][a]) out.emplace_back(a, b);
  return out;
}

std::vector<Natural> FinitePoset::down_set(Natural x) const {
  std::vector<Natural> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (below_.at(x)[a]) out.push_back(a);
  return out;
}

std::vector<Natural> FinitePoset::up_set(Natural x) const {
  std::vector<Natural> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (below_[b].at(x)) out.push_back(b);
  return out;
}

FinitePoset FinitePoset::restrict(std::size_t m) const {
  if (m > size()) throw std::out_of_range("restriction larger than poset");
  FinitePoset p(m);
  for (std::size_t b = 0; b < m; ++b)
    std::copy_n(below_[b].begin(), m, p.below_[b].begin());
  return p;
}

bool FinitePoset::is_antichain() const {
  for (const auto& row : below_)
    if (std::find(row.begin(), row.end(), 1) != row.end()) return false;
  return true;
}

bool FinitePoset::is_chain() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (!comparable(a, b)) return false;
  return true;
}

bool FinitePoset::extended_by(const OrderPrefix& o) const {
  if (o.size() < size()) throw std::out_of_range("order prefix smaller than poset");
  for (std::size_t b = 0; b < size(); ++b)
    for (std::size_t a = 0; a < size(); ++a)
      if (below_[b][a] && !o.less(a, b)) return false;
  return true;
}

void FinitePoset::add_point(const std::vector<Natural>& below, const std::vector<Natural>& above) {
  const std::size_t x = size();
  for (Natural a : below)
    for (Natural b : above)
      if (!less(a, b)) throw std::invalid_argument("new point would break transitivity");
  for (auto& row : below_) row.push_back(0);
  below_.emplace_back(x + 1, 0);
  for (Natural a : below) {
    if (a >= x) throw std::invalid_argument("down set element outside domain");
    below_[x][a] = 1;
  }
  for (Natural b : above) {
    if (b >= x) throw std::invalid_argument("up set element outside domain");
    below_[b][x] = 1;
  }
}

BigInt linear_extension_count(const FinitePoset& p, std::size_t cap) {
  cap = std::min(cap, kMaxLinearExtensionCap);
  const std::size_t n = p.size();
  if (n > cap) throw CapExceeded("poset of size " + std::to_string(n) + " exceeds linear extension cap " + std::to_string(cap));

  std::vector<std::uint32_t> predecessors(n, 0);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a)
      if (p.less(a, b)) predecessors[b] |= std::uint32_t{1} << a;

  // ways[mask] = number of ways to list the down set `mask` in an order
  // compatible with p. Only down sets are ever reached.
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 0; mask < ways.size(); ++mask) {
    if (ways[mask] == 0) continue;
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint32_t bit = std::uint32_t{1} << x;
      if (!(mask & bit) && (predecessors[x] & ~mask) == 0) ways[mask | bit] += ways[mask];
    }
  }
  return BigInt(ways.back());
}

// ---------------------------------------------------------------------------
// Exact measure by enumeration

ExactRational mu_cylinder(const FiniteOrder& l) { return ExactRational(BigInt(1), factorial(static_cast<unsigned>(l.size()))); }

ExactRational mu_exact(const EventExpr& e, std::size_t support_cap) {
  const auto s = support(e);
  const std::size_t k = s.size();
  if (k > support_cap)
    throw CapExceeded("event support of size " + std::to_string(k) + " exceeds cap " + std::to_string(support_cap));

  std::vector<std::size_t> ranks(k);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  auto rank = [&](Natural x) {
    return ranks[static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin())];
  };
  std::uint64_t satisfied = 0;
  do {
    if (evaluate_ranked(e, rank)) ++satisfied;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return ExactRational(BigInt(satisfied), factorial(static_cast<unsigned>(k)));
}

// ---------------------------------------------------------------------------
// Signed normal form

namespace {

using Pair = std::pair<Natural, Natural>;

// Positive literals of c as (a, b) comparisons.
std::vector<Pair> positive_pairs(const Conjunction& c) {
  std::vector<Pair> out;
  for (const auto& lit : c)
    if (lit.positive) out.emplace_back(lit.order.elements()[0], lit.order.elements()[1]);
  return out;
}

// Transitive closure of the positive part, over its own support. Returns
// nullopt if the comparisons are cyclic.
struct Closure {
  std::vector<Natural> elements;
  FinitePoset poset;

  std::size_t index(Natural x) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), x);
    return (it != elements.end() && *it == x) ? static_cast<std::size_t>(it - elements.begin()) : elements.size();
  }
  bool implies(Natural a, Natural b) const {
    const auto ia = index(a), ib = index(b);
    return ia < elements.size() && ib < elements.size() && poset.less(ia, ib);
  }
};

std::optional<Closure> close_positive(const Conjunction& c) {
  const auto pairs = positive_pairs(c);
  std::set<Natural> elems;
  for (auto [a, b] : pairs) elems.insert({a, b});
  Closure cl;
  cl.elements.assign(elems.begin(), elems.end());
  std::vector<Pair> local;
  for (auto [a, b] : pairs) local.emplace_back(cl.index(a), cl.index(b));
  try {
    cl.poset = FinitePoset::from_pairs(cl.elements.size(), local);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return cl;
}

// Cheap emptiness test: cyclic positive part, or a negated cylinder already
// forced by the positive part.
bool obviously_empty(const Conjunction& c) {
  const auto cl = close_positive(c);
  if (!cl) return true;
  for (const auto& lit : c) {
    if (lit.positive) continue;
    const auto& xs = lit.order.elements();
    bool forced = true;
    for (std::size_t i = 1; i < xs.size() && forced; ++i) forced = cl->implies(xs[i - 1], xs[i]);
    if (forced) return true;
  }
  return false;
}

void add_literal(Conjunction& c, const Literal& lit) {
  auto it = std::lower_bound(c.begin(), c.end(), lit);
  if (it == c.end() || *it != lit) c.insert(it, lit);
}

// Adds Z_l (positive) to a conjunction, split into consecutive comparisons.
void add_positive(Conjunction& c, const FiniteOrder& l) {
  const auto& xs = l.elements();
  for (std::size_t i = 1; i < xs.size(); ++i) add_literal(c, Literal{FiniteOrder({xs[i - 1], xs[i]}), true});
}

Conjunction merge(const Conjunction& a, const Conjunction& b) {
  Conjunction out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Sorts, dedupes, and drops conjunctions that contain another one.
std::vector<Conjunction> simplify(std::vector<Conjunction> terms) {
  std::sort(terms.begin(), terms.end(), [](const Conjunction& a, const Conjunction& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<Conjunction> kept;
  for (auto& t : terms) {
    const bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const Conjunction& k) {
      return std::includes(t.begin(), t.end(), k.begin(), k.end());
    });
    if (!absorbed) kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

class DnfBuilder {
 public:
  std::vector<Conjunction> build(const EventExpr& e, bool negated) {
    const auto key = std::make_pair(e.id(), negated);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto result = compute(e, negated);
    memo_.emplace(key, result);
    return result;
  }

 private:
  std::vector<Conjunction> compute(const EventExpr& e, bool negated) {
    switch (e.kind()) {
      case EventExpr::Kind::atom: {
        const auto& l = e.order();
        if (!negated) {
          Conjunction c;
          add_positive(c, l);
          return {c};
        }
        if (l.size() <= 1) return {};  // complement of the whole space
        return {Conjunction{Literal{l, false}}};
      }
      case EventExpr::Kind::negation:
        return build(e.operand(), !negated);
      case EventExpr::Kind::conjunction:
      case EventExpr::Kind::disjunction: {
        const bool is_and = (e.kind() == EventExpr::Kind::conjunction) != negated;
        auto left = build(e.lhs(), negated);
        auto right = build(e.rhs(), negated);
        if (!is_and) {
          left.insert(left.end(), right.begin(), right.end());
          return simplify(std::move(left));
        }
        std::vector<Conjunction> product;
        for (const auto& a : left)
          for (const auto& b : right) {
            auto c = merge(a, b);
            if (!obviously_empty(c)) product.push_back(std::move(c));
          }
        return simplify(std::move(product));
      }
    }
    return {};
  }

  std::map<std::pair<const void*, bool>, std::vector<Conjunction>> memo_;
};

// ---------------------------------------------------------------------------
// Weight recursion

class WeightRecursion {
 public:
  explicit WeightRecursion(std::size_t support_cap) : support_cap_(support_cap) {}

  // Inclusion-exclusion in recursive form:
  //   mu(T1 u R) = mu(T1) + mu(R) - mu((T1 n T2) u ... u (T1 n Tr)).
  ExactRational union_measure(const std::vector<Conjunction>& terms) {
    if (terms.empty()) return ExactRational(0);
    if (terms.size() == 1) return conjunction_measure(terms.front());
    if (auto it = union_memo_.find(terms); it != union_memo_.end()) return it->second;

    const Conjunction& first = terms.front();
    std::vector<Conjunction> rest(terms.begin() + 1, terms.end());
    std::vector<Conjunction> overlaps;
    for (const auto& t : rest) {
      auto c = merge(first, t);
      if (!obviously_empty(c)) overlaps.push_back(std::move(c));
    }
    ExactRational value = conjunction_measure(first) + union_measure(simplify(rest)) - union_measure(simplify(overlaps));
    union_memo_.emplace(terms, value);
    return value;
  }

  // mu(T' n Z^0) = mu(T') - mu(T' n Z), reducing the weight by one per step.
  ExactRational conjunction_measure(const Conjunction& c) {
    if (auto it = conj_memo_.find(c); it != conj_memo_.end()) return it->second;
    ExactRational value;
    auto negated = std::find_if(c.rbegin(), c.rend(), [](const Literal& l) { return !l.positive; });
    if (negated == c.rend()) {
      value = weight_zero_measure(c);
    } else {
      const FiniteOrder removed = negated->order;
      Conjunction lighter = c;
      lighter.erase(lighter.begin() + (std::next(negated).base() - c.begin()));
      Conjunction with_cylinder = lighter;
      add_positive(with_cylinder, removed);
      value = conjunction_measure(lighter);
      if (!obviously_empty(with_cylinder)) value -= conjunction_measure(with_cylinder);
    }
    conj_memo_.emplace(c, value);
    return value;
  }

 private:
  // A weight-0 conjunction is an intersection of cylinders, i.e. the set of
  // orders extending a partial order on its support: e(P) / |P|!.
  ExactRational weight_zero_measure(const Conjunction& c) const {
    const auto cl = close_positive(c);
    if (!cl) return ExactRational(0);
    const std::size_t k = cl->elements.size();
    if (k > support_cap_)
      throw CapExceeded("conjunction support of size " + std::to_string(k) + " exceeds cap " + std::to_string(support_cap_));
    return ExactRational(linear_extension_count(cl->poset, support_cap_), factorial(static_cast<unsigned>(k)));
  }

  std::size_t support_cap_;
  std::map<Conjunction, ExactRational> conj_memo_;
  std::map<std::vector<Conjunction>, ExactRational> union_memo_;
};

}  // namespace

std::vector<Conjunction> signed_dnf(const EventExpr& e) { return DnfBuilder{}.build(e, false); }

EventExpr to_event(const std::vector<Conjunction>& dnf) {
  // The empty union is the complement of the whole space.
  const EventExpr whole = EventExpr::atom(FiniteOrder{});
  if (dnf.empty()) return !whole;
  std::optional<EventExpr> out;
  for (const auto& c : dnf) {
    std::optional<EventExpr> term;
    for (const auto& lit : c) {
      EventExpr a = EventExpr::atom(lit.order);
      if (!lit.positive) a = !a;
      term = term ? (*term & a) : a;
    }
    const EventExpr t = term.value_or(whole);
    out = out ? (*out | t) : t;
  }
  return *out;
}

std::size_t weight(const Conjunction& c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const Literal& l) { return !l.positive; }));
}

ExactRational weight_recursion_value(const EventExpr& e, std::size_t support_cap) {
  return WeightRecursion(support_cap).union_measure(signed_dnf(e));
}

DyadicApprox mu_weight_recursive(const EventExpr& e, unsigned k, std::size_t support_cap) {
  if (k > kMaxPrecision)
    throw CapExceeded("precision 2^-" + std::to_string(k) + " exceeds cap 2^-" + std::to_string(kMaxPrecision));
  // Exact until this single rounding step, which costs at most 2^-(k+1).
  return round_to_dyadic(weight_recursion_value(e, support_cap), k);
}

// ---------------------------------------------------------------------------
// Adjacency events

namespace {
void check_adjacency_args(Natural n, Natural m, std::size_t N) {
  if (n == m) throw std::invalid_argument("adjacency event needs two distinct points");
  if (N < 2 || n >= N || m >= N) throw std::invalid_argument("adjacency event needs n, m < N and N >= 2");
}
}  // namespace

ExactRational mu_adjacency(Natural n, Natural m, std::size_t N) {
  check_adjacency_args(n, m, N);
  // L = 2 (N-1) (N-2)! orders of N points put n and m next to each other.
  const BigInt adjacent = 2 * BigInt(N - 1) * factorial(static_cast<unsigned>(N - 2));
  return ExactRational(adjacent, factorial(static_cast<unsigned>(N)));
}

EventExpr adjacency_event(Natural n, Natural m, std::size_t N) {
  check_adjacency_args(n, m, N);
  std::optional<EventExpr> event;
  for (Natural j = 0; j < N; ++j) {
    if (j == n || j == m) continue;
    const EventExpr not_between =
        (!EventExpr::atom(FiniteOrder({n, j, m}))) & (!EventExpr::atom(FiniteOrder({m, j, n})));
    event = event ? (*event & not_between) : not_between;
  }
  return event.value_or(EventExpr::atom(FiniteOrder{}));
}

}  // namespace uminflow
