#pragma once

// Brute-force reference computations and random generators shared by the
// unit tests and the acceptance runner. Nothing here calls the measure module.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "uminflow/orders.hpp"
#include "uminflow/rational.hpp"

namespace uminflow::testing {

inline void collect_support(const EventExpr& e, std::set<Natural>& out) {
  switch (e.kind()) {
    case EventExpr::Kind::atom:
      out.insert(e.order().elements().begin(), e.order().elements().end());
      return;
    case EventExpr::Kind::negation:
      collect_support(e.operand(), out);
      return;
    default:
      collect_support(e.lhs(), out);
      collect_support(e.rhs(), out);
  }
}

// Truth of e under the order given by `position` (element -> position).
inline bool holds(const EventExpr& e, const std::map<Natural, std::size_t>& position) {
  switch (e.kind()) {
    case EventExpr::Kind::atom: {
      const auto& xs = e.order().elements();
      for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (position.at(xs[i]) > position.at(xs[i + 1])) return false;
      return true;
    }
    case EventExpr::Kind::negation:
      return !holds(e.operand(), position);
    case EventExpr::Kind::conjunction:
      return holds(e.lhs(), position) && holds(e.rhs(), position);
    case EventExpr::Kind::disjunction:
      return holds(e.lhs(), position) || holds(e.rhs(), position);
  }
  return false;
}

// Satisfying orders on `domain` (which must contain the support) over |domain|!.
inline ExactRational brute_measure(const EventExpr& e, std::vector<Natural> domain) {
  std::sort(domain.begin(), domain.end());
  std::uint64_t hits = 0, total = 0;
  do {
    std::map<Natural, std::size_t> position;
    for (std::size_t i = 0; i < domain.size(); ++i) position[domain[i]] = i;
    hits += holds(e, position);
    ++total;
  } while (std::next_permutation(domain.begin(), domain.end()));
  return ExactRational(BigInt(hits), BigInt(total));
}

inline ExactRational brute_measure(const EventExpr& e) {
  std::set<Natural> s;
  collect_support(e, s);
  return brute_measure(e, std::vector<Natural>(s.begin(), s.end()));
}

// Orders on {0..n-1} (as sequences) satisfying `less`-pairs, by enumeration.
inline std::uint64_t brute_extensions(std::size_t n, const std::vector<std::pair<Natural, Natural>>& relations) {
  std::vector<Natural> seq(n);
  std::iota(seq.begin(), seq.end(), Natural{0});
  std::uint64_t count = 0;
  do {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[seq[i]] = i;
    bool ok = true;
    for (auto [a, b] : relations) ok = ok && pos[a] < pos[b];
    count += ok;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return count;
}

inline std::vector<Natural> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Natural> p(n);
  std::iota(p.begin(), p.end(), Natural{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline FiniteOrder random_atom(std::mt19937_64& rng, std::size_t universe, std::size_t max_len) {
  auto perm = random_permutation(rng, universe);
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, std::min(max_len, universe))(rng);
  perm.resize(len);
  return FiniteOrder(std::move(perm));
}

// Random expression over atoms drawn from {0..universe-1}.
inline EventExpr random_event(std::mt19937_64& rng, std::size_t universe, unsigned depth, std::size_t max_atom = 3) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 0 : 3);
  switch (pick(rng)) {
    case 0:
      return EventExpr::atom(random_atom(rng, universe, max_atom));
    case 1:
      return !random_event(rng, universe, depth - 1, max_atom);
    case 2: {
      auto lhs = random_event(rng, universe, depth - 1, max_atom);
      return lhs & random_event(rng, universe, depth - 1, max_atom);
    }
    default: {
      auto lhs = random_event(rng, universe, depth - 1, max_atom);
      return lhs | random_event(rng, universe, depth - 1, max_atom);
    }
  }
}

// Standard error of a frequency with success probability p over `trials`.
inline double standard_error(double p, double trials) { return std::sqrt(p * (1 - p) / trials); }

}  // namespace uminflow::testing
