#include "uminflow/fraisse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uminflow {

OrderPrefix prefix_of(const OrderPresentation& p, std::size_t n) {
  std::vector<Natural> seq(n);
  std::iota(seq.begin(), seq.end(), Natural{0});
  std::stable_sort(seq.begin(), seq.end(), [&](Natural a, Natural b) { return p.less(a, b); });
  return OrderPrefix::from_sequence(std::move(seq));
}

// ---------------------------------------------------------------------------
// Rational and dyadic orders

namespace {

// Stern's diatomic sequence.
std::uint64_t fusc(std::uint64_t n) {
  std::uint64_t a = 1, b = 0;
  while (n > 0) {
    if (n & 1)
      b += a;
    else
      a += b;
    n >>= 1;
  }
  return b;
}

// Cantor pairing inverse: a -> (i, j) with a = (i+j)(i+j+1)/2 + j.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t a) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(a) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](unsigned __int128 x) { return x * (x + 1) / 2; };
  while (tri(w) > a) --w;
  while (tri(w + 1) <= a) ++w;
  const auto j = a - static_cast<std::uint64_t>(tri(w));
  return {w - j, j};
}

struct Dyadic {
  std::int64_t whole;
  std::uint64_t odd;       // fraction = odd / 2^exponent, or 0 when exponent == 0
  unsigned exponent;
};

Dyadic dyadic_value(Natural a) {
  const auto [i, j] = cantor_unpair(a);
  const auto whole = (i % 2 == 0) ? static_cast<std::int64_t>(i / 2) : -static_cast<std::int64_t>((i + 1) / 2);
  if (j == 0) return {whole, 0, 0};
  const auto e = static_cast<unsigned>(std::bit_width(j));
  const std::uint64_t odd = 2 * (j - (std::uint64_t{1} << (e - 1))) + 1;
  return {whole, odd, e};
}

}  // namespace

RationalValue rational_value(Natural a) {
  if (a == 0) return {0, 1};
  const std::uint64_t i = (a + 1) / 2;
  const auto num = static_cast<std::int64_t>(fusc(i));
  const std::uint64_t den = fusc(i + 1);
  return {(a % 2 == 1) ? num : -num, den};
}

bool rational_order_less(Natural a, Natural b) {
  const auto x = rational_value(a);
  const auto y = rational_value(b);
  return static_cast<__int128>(x.numerator) * static_cast<__int128>(y.denominator) <
         static_cast<__int128>(y.numerator) * static_cast<__int128>(x.denominator);
}

bool dyadic_order_less(Natural a, Natural b) {
  const auto x = dyadic_value(a);
  const auto y = dyadic_value(b);
  if (x.whole != y.whole) return x.whole < y.whole;
  // x.odd / 2^x.exponent < y.odd / 2^y.exponent
  using u128 = unsigned __int128;
  return (u128{x.odd} << y.exponent) < (u128{y.odd} << x.exponent);
}

namespace {

struct Fraction {
  std::uint64_t num, den;  // den == 0 encodes +infinity
};

bool fraction_less(Fraction a, Fraction b) {
  if (a.den == 0) return false;
  if (b.den == 0) return true;
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

// Calkin-Wilf index of p/q (root 1/1 is 1; p/q has children p/(p+q) = 2i and
// (p+q)/q = 2i+1), or nullopt past 64 bits.
std::optional<std::uint64_t> calkin_wilf_index(std::uint64_t p, std::uint64_t q) {
  std::uint64_t path = 0;
  unsigned depth = 0;
  while (p != q) {
    if (depth == 63) return std::nullopt;
    if (p > q) {
      path |= std::uint64_t{1} << depth;
      p -= q;
    } else {
      q -= p;
    }
    ++depth;
  }
  return (std::uint64_t{1} << depth) | path;
}

// Least Calkin-Wilf index of a positive fraction strictly between lo >= 0 and
// hi. Calkin-Wilf and Stern-Brocot share their levels, an open interval holds
// a unique fraction of least depth, and breadth-first order lists shallower
// levels first; so it is the Stern-Brocot descent's first hit.
std::optional<std::uint64_t> simplest_positive(Fraction lo, Fraction hi) {
  Fraction left{0, 1}, right{1, 0};
  for (unsigned depth = 0; depth < 64; ++depth) {
    const Fraction mid{left.num + right.num, left.den + right.den};
    if (!fraction_less(lo, mid))
      left = mid;
    else if (!fraction_less(mid, hi))
      right = mid;
    else
      return calkin_wilf_index(mid.num, mid.den);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Natural> rational_least_between(std::optional<Natural> lower, std::optional<Natural> upper) {
  const auto value = [](Natural a) { return rational_value(a); };
  const bool below_zero = lower && value(*lower).numerator < 0;
  const bool above_zero = upper && value(*upper).numerator > 0;
  if ((!lower || below_zero) && (!upper || above_zero)) return Natural{0};
  auto magnitude = [&](Natural a) {
    const auto v = value(a);
    return Fraction{static_cast<std::uint64_t>(v.numerator < 0 ? -v.numerator : v.numerator), v.denominator};
  };
  if (lower && !below_zero) {
    // Interval inside [0, +inf): c_i is element 2i - 1.
    const auto i = simplest_positive(magnitude(*lower), upper ? magnitude(*upper) : Fraction{1, 0});
    if (!i || *i > std::numeric_limits<Natural>::max() / 2) return std::nullopt;
    return 2 * *i - 1;
  }
  // Interval inside (-inf, 0]: -c_i is element 2i.
  const auto i = simplest_positive(magnitude(*upper), lower ? magnitude(*lower) : Fraction{1, 0});
  if (!i || *i > std::numeric_limits<Natural>::max() / 2) return std::nullopt;
  return 2 * *i;
}

OrderPresentation rational_order() { return {"rational-v1", rational_order_less, rational_least_between}; }
OrderPresentation dyadic_order() { return {"dyadic-v1", dyadic_order_less}; }
OrderPresentation natural_order() {
  return {"natural", [](Natural a, Natural b) { return a < b; }};
}

// ---------------------------------------------------------------------------
// Rado graph

bool rado_adjacent(Natural i, Natural j) {
  if (i == j) throw std::invalid_argument("rado_adjacent: a vertex is not adjacent to itself");
  if (i > j) std::swap(i, j);
  return i < 64 && ((j >> i) & 1U);
}

Natural rado_extension_witness(const std::vector<Natural>& A, const std::vector<Natural>& B) {
  const std::set<Natural> a_set(A.begin(), A.end());
  for (Natural b : B)
    if (a_set.contains(b)) throw std::invalid_argument("rado_extension_witness: A and B intersect");

  std::optional<Natural> top;
  for (Natural x : A) top = std::max(top.value_or(0), x);
  for (Natural x : B) top = std::max(top.value_or(0), x);
  if (top && *top >= 62) throw std::out_of_range("rado_extension_witness: witness exceeds 64 bits");

  Natural z = 0;
  for (Natural a : a_set) z |= Natural{1} << a;
  // Lifting z above every element of A u B makes adjacency to them read off
  // z's own bits, which are set exactly on A.
  if (A.empty() || (top && z <= *top)) z += Natural{1} << (top ? *top + 1 : 0);
  return z;
}

Natural pair_rank(Natural i, Natural j) {
  if (i == j) throw std::invalid_argument("pair_rank: not a two-element set");
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

std::pair<Natural, Natural> pair_unrank(Natural r) {
  auto j = static_cast<Natural>((1.0L + std::sqrt(1.0L + 8.0L * static_cast<long double>(r))) / 2.0L);
  while (j * (j - 1) / 2 > r) --j;
  while ((j + 1) * j / 2 <= r) ++j;
  return {r - j * (j - 1) / 2, j};
}

GraphPrefix::GraphPrefix(std::size_t vertices) : vertices_(vertices), bits_(vertices * (vertices - (vertices > 0)) / 2) {}

GraphPrefix GraphPrefix::from_pair_bits(std::vector<bool> bits) {
  GraphPrefix g;
  while (g.vertices_ * (g.vertices_ - (g.vertices_ > 0)) / 2 < bits.size()) ++g.vertices_;
  g.bits_ = std::move(bits);
  return g;
}

bool GraphPrefix::adjacent(Natural i, Natural j) const {
  if (i >= vertices_ || j >= vertices_) throw std::out_of_range("vertex outside graph prefix");
  const Natural r = pair_rank(i, j);
  if (r >= bits_.size()) throw std::out_of_range("pair not decided by this graph prefix");
  return bits_[r];
}

void GraphPrefix::set_adjacent(Natural i, Natural j, bool value) {
  if (i >= vertices_ || j >= vertices_) throw std::out_of_range("vertex outside graph prefix");
  const Natural r = pair_rank(i, j);
  if (r >= bits_.size()) throw std::out_of_range("pair not decided by this graph prefix");
  bits_[r] = value;
}

std::vector<std::pair<Natural, Natural>> GraphPrefix::edges() const {
  std::vector<std::pair<Natural, Natural>> out;
  for (Natural r = 0; r < bits_.size(); ++r)
    if (bits_[r]) out.push_back(pair_unrank(r));
  std::sort(out.begin(), out.end());
  return out;
}

GraphPrefix rado_prefix(std::size_t vertices) {
  GraphPrefix g(vertices);
  for (Natural j = 1; j < vertices; ++j)
    for (Natural i = 0; i < j; ++i) g.set_adjacent(i, j, rado_adjacent(i, j));
  return g;
}

std::string format_edge_list(const GraphPrefix& g) {
  std::ostringstream out;
  out << g.vertices() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

GraphPrefix parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  if (!(in >> n)) throw std::invalid_argument("edge list: missing vertex count");
  GraphPrefix g(n);
  Natural i, j;
  while (in >> i) {
    if (!(in >> j)) throw std::invalid_argument("edge list: dangling vertex");
    if (i == j) throw std::invalid_argument("edge list: loop");
    if (i >= n || j >= n) throw std::invalid_argument("edge list: vertex outside 0.." + std::to_string(n) + "-1");
    g.set_adjacent(i, j, true);
  }
  if (!in.eof()) throw std::invalid_argument("edge list: malformed entry");
  return g;
}

// ---------------------------------------------------------------------------
// Universal poset

namespace {

enum class Role : char { below = 0, above = 1, apart = 2 };

struct Demand {
  std::vector<Natural> members;  // increasing
  std::vector<Role> roles;       // parallel to members
  std::size_t gap = 0;           // members canon-below the new point
};

class UniversalPosetBuilder {
 public:
  void extend_to(std::size_t n) {
    while (poset_.size() < n) add_point();
  }

  PosetStage stage(std::size_t n) const {
    PosetStage s;
    s.stage = poset_.restrict(n);
    std::vector<Natural> seq;
    seq.reserve(n);
    for (Natural x : canon_)
      if (x < n) seq.push_back(x);
    s.canon = OrderPrefix::from_sequence(std::move(seq));
    return s;
  }

  bool canon_less(Natural a, Natural b) const { return rank_[a] < rank_[b]; }
  const FinitePoset& poset() const { return poset_; }

 private:
  Demand decode() const {
    Demand d;
    for (Natural x = 0; x < 64; ++x)
      if ((mask_ >> x) & 1U) d.members.push_back(x);
    std::uint64_t t = labelling_;
    for (std::size_t i = 0; i < d.members.size(); ++i, t /= 3) d.roles.push_back(static_cast<Role>(t % 3));
    d.gap = gap_;
    return d;
  }

  void advance() {
    const std::size_t w = static_cast<std::size_t>(std::popcount(mask_));
    if (++gap_ <= w) return;
    gap_ = 0;
    std::uint64_t labellings = 1;
    for (std::size_t i = 0; i < w; ++i) labellings *= 3;
    if (++labelling_ < labellings) return;
    labelling_ = 0;
    ++mask_;
  }

  // Members sorted by canon position.
  std::vector<Natural> by_canon(const Demand& d) const {
    std::vector<Natural> v = d.members;
    std::sort(v.begin(), v.end(), [&](Natural a, Natural b) { return rank_[a] < rank_[b]; });
    return v;
  }

  bool consistent(const Demand& d) const {
    for (std::size_t i = 0; i < d.members.size(); ++i)
      for (std::size_t j = 0; j < d.members.size(); ++j) {
        const Natural x = d.members[i], y = d.members[j];
        const Role rx = d.roles[i], ry = d.roles[j];
        if (rx == Role::below && ry == Role::above && !poset_.less(x, y)) return false;
        if (rx == Role::apart && ry == Role::below && poset_.less(x, y)) return false;
        if (rx == Role::above && ry == Role::apart && poset_.less(x, y)) return false;
      }
    // Every A member among the first `gap` in canon order, every B member after.
    const auto order = by_canon(d);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const auto idx = static_cast<std::size_t>(std::find(d.members.begin(), d.members.end(), order[pos]) - d.members.begin());
      if (d.roles[idx] == Role::below && pos >= d.gap) return false;
      if (d.roles[idx] == Role::above && pos < d.gap) return false;
    }
    return true;
  }

  bool realised_by(const Demand& d, Natural y) const {
    std::size_t canon_below = 0;
    for (std::size_t i = 0; i < d.members.size(); ++i) {
      const Natural w = d.members[i];
      if (w == y) return false;
      switch (d.roles[i]) {
        case Role::below:
          if (!poset_.less(w, y)) return false;
          break;
        case Role::above:
          if (!poset_.less(y, w)) return false;
          break;
        case Role::apart:
          if (poset_.comparable(w, y)) return false;
          break;
      }
      if (rank_[w] < rank_[y]) ++canon_below;
    }
    return canon_below == d.gap;
  }

  bool realised(const Demand& d) const {
    for (Natural y = 0; y < poset_.size(); ++y)
      if (realised_by(d, y)) return true;
    return false;
  }

  void add_point() {
    for (;;) {
      if (mask_ >> std::min<std::size_t>(poset_.size(), 63)) throw std::logic_error("poset demand cursor overran the domain");
      const Demand d = decode();
      if (consistent(d) && !realised(d)) {
        realise(d);
        advance();
        return;
      }
      advance();
    }
  }

  void realise(const Demand& d) {
    const std::size_t n = poset_.size();
    const auto order = by_canon(d);
    // Canon slot p: the new point gets rank p, ahead of the point currently there.
    const std::size_t lo = d.gap > 0 ? rank_[order[d.gap - 1]] + 1 : 0;
    const std::size_t hi = d.gap < order.size() ? rank_[order[d.gap]] : n;
    const std::size_t slot = (lo + hi) / 2;

    std::vector<char> role(n, 3);  // 3: not a member
    for (std::size_t i = 0; i < d.members.size(); ++i) role[d.members[i]] = static_cast<char>(d.roles[i]);

    std::vector<char> down(n, 0), up(n, 0);
    for (std::size_t i = 0; i < d.members.size(); ++i) {
      const Natural w = d.members[i];
      if (d.roles[i] == Role::below) {
        down[w] = 1;
        for (Natural v : poset_.down_set(w)) down[v] = 1;
      } else if (d.roles[i] == Role::above) {
        up[w] = 1;
        for (Natural v : poset_.up_set(w)) up[v] = 1;
      }
    }

    // Points outside the demand are made comparable to the new point whenever
    // that stays consistent with the demand, the canon slot and transitivity.
    for (Natural y = 0; y < n; ++y) {
      if (role[y] != 3 || down[y] || up[y]) continue;
      if (rank_[y] < slot) {
        auto candidate = poset_.down_set(y);
        candidate.push_back(y);
        const bool ok = std::all_of(candidate.begin(), candidate.end(), [&](Natural c) {
          if (role[c] == static_cast<char>(Role::above) || role[c] == static_cast<char>(Role::apart)) return false;
          for (Natural u = 0; u < n; ++u)
            if (up[u] && !poset_.less(c, u)) return false;
          return true;
        });
        if (ok)
          for (Natural c : candidate) down[c] = 1;
      } else {
        auto candidate = poset_.up_set(y);
        candidate.push_back(y);
        const bool ok = std::all_of(candidate.begin(), candidate.end(), [&](Natural c) {
          if (role[c] == static_cast<char>(Role::below) || role[c] == static_cast<char>(Role::apart)) return false;
          for (Natural l = 0; l < n; ++l)
            if (down[l] && !poset_.less(l, c)) return false;
          return true;
        });
        if (ok)
          for (Natural c : candidate) up[c] = 1;
      }
    }

    std::vector<Natural> below, above;
    for (Natural v = 0; v < n; ++v) {
      if (down[v]) below.push_back(v);
      if (up[v]) above.push_back(v);
    }
    poset_.add_point(below, above);
    canon_.insert(canon_.begin() + static_cast<std::ptrdiff_t>(slot), n);
    rank_.assign(n + 1, 0);
    for (std::size_t pos = 0; pos <= n; ++pos) rank_[canon_[pos]] = pos;
  }

  FinitePoset poset_;
  std::vector<Natural> canon_;
  std::vector<std::size_t> rank_;
  std::uint64_t mask_ = 0;
  std::uint64_t labelling_ = 0;
  std::size_t gap_ = 0;
};

std::mutex& builder_mutex() {
  static std::mutex m;
  return m;
}

UniversalPosetBuilder& builder() {
  static UniversalPosetBuilder b;
  return b;
}

}  // namespace

PosetStage universal_poset_stage(std::size_t N, std::size_t cap) {
  if (N > cap) throw CapExceeded("poset stage " + std::to_string(N) + " exceeds cap " + std::to_string(cap));
  std::lock_guard lock(builder_mutex());
  builder().extend_to(N);
  return builder().stage(N);
}

std::size_t poset_demand_witness_stage(const std::vector<Natural>& A, const std::vector<Natural>& B,
                                       const std::vector<Natural>& Z, std::size_t max_stage) {
  std::lock_guard lock(builder_mutex());
  auto& b = builder();
  std::size_t floor = 0;
  for (const auto* set : {&A, &B, &Z})
    for (Natural x : *set) floor = std::max<std::size_t>(floor, x + 1);
  b.extend_to(std::max(floor, std::size_t{1}));
  const auto& p = b.poset();
  auto realises = [&](Natural x) {
    auto in = [x](const std::vector<Natural>& s) { return std::find(s.begin(), s.end(), x) != s.end(); };
    if (in(A) || in(B) || in(Z)) return false;
    for (Natural a : A)
      if (!p.less(a, x)) return false;
    for (Natural c : B)
      if (!p.less(x, c)) return false;
    for (Natural z : Z)
      if (p.comparable(x, z)) return false;
    return true;
  };
  for (Natural x = 0; x < max_stage; ++x) {
    b.extend_to(x + 1);
    if (realises(x)) return std::max<std::size_t>(x + 1, floor);
  }
  return 0;
}

OrderPresentation canonical_poset_order() {
  return {"poset-canon-v1", [](Natural a, Natural b) {
            std::lock_guard lock(builder_mutex());
            builder().extend_to(std::max(a, b) + 1);
            return builder().canon_less(a, b);
          }};
}

OrderPresentation presentation_by_name(std::string_view name) {
  if (name == "rational-v1") return rational_order();
  if (name == "dyadic-v1") return dyadic_order();
  if (name == "natural") return natural_order();
  if (name == "poset-canon-v1") return canonical_poset_order();
  throw std::invalid_argument("unknown order presentation '" + std::string(name) + "'");
}

nlohmann::json to_json(const PosetStage& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [a, b] : s.stage.pairs()) pairs.push_back({a, b});
  return {{"n", s.stage.size()}, {"pairs", pairs}, {"canon", s.canon.sequence()}};
}

PosetStage poset_stage_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  PosetStage s;
  s.stage = FinitePoset::from_pairs(n, j.at("pairs").get<std::vector<std::pair<Natural, Natural>>>());
  s.canon = OrderPrefix::from_sequence(j.at("canon").get<std::vector<Natural>>());
  if (s.canon.size() != n) throw std::invalid_argument("poset stage: canon size mismatch");
  return s;
}

// ---------------------------------------------------------------------------
// Density, back-and-forth

DensityReport check_density(const OrderPresentation& pres, std::size_t n, std::size_t search_bound) {
  DensityReport r;
  r.n = n;
  r.search_bound = search_bound;
  for (Natural a = 0; a <= n; ++a) {
    bool lower = false, upper = false;
    for (Natural j = 0; j <= search_bound && !(lower && upper); ++j) {
      if (j == a) continue;
      if (pres.less(j, a)) lower = true;
      else upper = true;
    }
    if (!lower) r.no_lower.push_back(a);
    if (!upper) r.no_upper.push_back(a);
    for (Natural b = 0; b <= n; ++b) {
      if (b == a || !pres.less(a, b)) continue;
      bool between = false;
      for (Natural j = 0; j <= search_bound && !between; ++j)
        between = j != a && j != b && pres.less(a, j) && pres.less(j, b);
      if (!between) r.unwitnessed_between.emplace_back(a, b);
    }
  }
  return r;
}

namespace {

// One side of the partial isomorphism, kept sorted along that side's order.
class BackAndForth {
 public:
  BackAndForth(const OrderPresentation& from, const OrderPresentation& to, std::size_t budget)
      : from_(from), to_(to), budget_(budget) {}

  void forth() {
    while (map_.contains(next_from_)) ++next_from_;
    extend(next_from_, /*forward=*/true);
  }

  void back() {
    while (map_.in_range(next_to_)) ++next_to_;
    extend(next_to_, /*forward=*/false);
  }

  bool covers(std::size_t n) const {
    for (Natural i = 0; i < n; ++i)
      if (!map_.contains(i) || !map_.in_range(i)) return false;
    return true;
  }

  const PartialPermutation& map() const { return map_; }

 private:
  // Adds `x` to the domain (forward) or range (backward), choosing the least
  // partner that keeps the map order preserving.
  void extend(Natural x, bool forward) {
    const auto& own = forward ? from_ : to_;
    const auto& other = forward ? to_ : from_;
    auto own_of = [forward](const std::pair<Natural, Natural>& p) { return forward ? p.first : p.second; };
    auto other_of = [forward](const std::pair<Natural, Natural>& p) { return forward ? p.second : p.first; };

    const auto pos = std::partition_point(chain_.begin(), chain_.end(),
                                          [&](const auto& p) { return own.less(own_of(p), x); });
    const std::optional<Natural> lower = pos == chain_.begin() ? std::nullopt : std::optional(other_of(*std::prev(pos)));
    const std::optional<Natural> upper = pos == chain_.end() ? std::nullopt : std::optional(other_of(*pos));

    if (other.least_between) {
      const auto y = other.least_between(lower, upper);
      if (!y || (forward ? map_.in_range(*y) : map_.contains(*y)))
        throw BudgetExhausted("no partner for " + std::to_string(x) + " between " +
                              (lower ? std::to_string(*lower) : std::string("-inf")) + " and " +
                              (upper ? std::to_string(*upper) : std::string("+inf")) + " below 2^64");
      const auto pair = forward ? std::make_pair(x, *y) : std::make_pair(*y, x);
      map_.insert(pair.first, pair.second);
      chain_.insert(pos, pair);
      return;
    }

    // Candidates below the high-water mark are already revealed; only new
    // ones count against the budget.
    Natural& revealed = forward ? revealed_to_ : revealed_from_;
    const Natural bound = revealed + budget_;
    for (Natural y = 0;; ++y) {
      const bool taken = forward ? map_.in_range(y) : map_.contains(y);
      if (taken) continue;
      if (y >= bound) {
        throw BudgetExhausted("no partner for " + std::to_string(x) + " between " +
                              (lower ? std::to_string(*lower) : std::string("-inf")) + " and " +
                              (upper ? std::to_string(*upper) : std::string("+inf")) + " within " +
                              std::to_string(budget_) + " new candidates: presentation not homogeneous at this scale");
      }
      if ((!lower || other.less(*lower, y)) && (!upper || other.less(y, *upper))) {
        revealed = std::max(revealed, y + 1);
        const auto pair = forward ? std::make_pair(x, y) : std::make_pair(y, x);
        map_.insert(pair.first, pair.second);
        chain_.insert(pos, pair);
        return;
      }
    }
  }

  const OrderPresentation& from_;
  const OrderPresentation& to_;
  std::size_t budget_;
  PartialPermutation map_;
  std::vector<std::pair<Natural, Natural>> chain_;  // (a, f(a)) increasing
  Natural next_from_ = 0;
  Natural next_to_ = 0;
  Natural revealed_from_ = 0;
  Natural revealed_to_ = 0;
};

}  // namespace

PartialPermutation back_and_forth(const OrderPresentation& from, const OrderPresentation& to, std::size_t n,
                                  std::size_t step_budget) {
  BackAndForth bf(from, to, step_budget);
  while (!bf.covers(n)) {
    bf.forth();
    if (bf.covers(n)) break;
    bf.back();
  }
  return bf.map();
}

bool is_order_isomorphism(const PartialPermutation& f, const OrderPresentation& from, const OrderPresentation& to) {
  const auto& pairs = f.pairs();
  for (auto i = pairs.begin(); i != pairs.end(); ++i)
    for (auto j = pairs.begin(); j != pairs.end(); ++j) {
      if (i == j) continue;
      if (from.less(i->first, j->first) != to.less(i->second, j->second)) return false;
    }
  return true;
}

}  // namespace uminflow
