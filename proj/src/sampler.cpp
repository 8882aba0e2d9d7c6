#include "uminflow/sampler.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace uminflow {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

// ---------------------------------------------------------------------------
// RandomOrderStream

std::uint64_t RandomOrderStream::key_word(std::uint64_t seed, Natural n, unsigned word) {
  // Counter-mode SplitMix64: position n * kKeyWords + word of the stream
  // started at mix64(seed).
  return mix64(mix64(seed) + (n * kKeyWords + word + 1) * kGolden);
}

std::uint64_t RandomOrderStream::first_word(Natural n) {
  while (first_words_.size() <= n) first_words_.push_back(key_word(seed_, first_words_.size(), 0));
  return first_words_[n];
}

bool RandomOrderStream::less(Natural a, Natural b) {
  if (a == b) return false;
  const auto wa = first_word(a), wb = first_word(b);
  if (wa != wb) return wa < wb;
  for (unsigned w = 1; w < kKeyWords; ++w) {
    const auto xa = key_word(seed_, a, w), xb = key_word(seed_, b, w);
    if (xa != xb) return xa < xb;
  }
  ++tie_cap_hits_;
  return a < b;
}

OrderPrefix RandomOrderStream::prefix(std::size_t n) {
  if (n > 0) first_word(n - 1);
  std::vector<Natural> seq(n);
  std::iota(seq.begin(), seq.end(), Natural{0});
  std::sort(seq.begin(), seq.end(), [this](Natural a, Natural b) { return less(a, b); });
  return OrderPrefix::from_sequence(std::move(seq));
}

OrderPresentation RandomOrderStream::presentation() {
  return {"stream:" + std::to_string(seed_), [this](Natural a, Natural b) { return less(a, b); }};
}

OrderPrefix sample_prefix(std::uint64_t seed, std::size_t N) {
  if (N > kMaxSampleSize)
    throw CapExceeded("sample size " + std::to_string(N) + " exceeds " + std::to_string(kMaxSampleSize));
  return RandomOrderStream(seed).prefix(N);
}

// ---------------------------------------------------------------------------
// Test families

namespace {

EventExpr conjunction_of(const std::vector<EventExpr>& parts) {
  if (parts.empty()) return EventExpr::atom(FiniteOrder{});
  EventExpr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = out & parts[i];
  return out;
}

}  // namespace

std::size_t density_level_size(Natural n, Natural m, unsigned k) {
  const std::size_t base = std::max<std::size_t>({2, n + 1, m + 1});
  if (k + 1 >= 63) return std::numeric_limits<std::size_t>::max();
  return (std::size_t{1} << (k + 1)) * base;
}

MLTestFamily density_test_family(Natural n, Natural m, std::size_t prefix_cap) {
  if (n == m) throw std::invalid_argument("density test needs two distinct points");
  const std::string name = "density(" + std::to_string(n) + "," + std::to_string(m) + ")";
  return MLTestFamily(name, [n, m, prefix_cap](unsigned k) -> std::optional<TestLevel> {
    const std::size_t N = density_level_size(n, m, k);
    if (N > prefix_cap) return std::nullopt;
    TestLevel level;
    level.k = k;
    level.prefix_size = N;
    level.measure = mu_adjacency(n, m, N);
    level.contains = [n, m](const OrderPrefix& o) {
      const auto rn = o.rank(n), rm = o.rank(m);
      return (rn > rm ? rn - rm : rm - rn) == 1;
    };
    level.event = [n, m, N] { return adjacency_event(n, m, N); };
    return level;
  });
}

std::size_t unbounded_level_size(Natural n, unsigned k) {
  if (k + 1 >= 63) return std::numeric_limits<std::size_t>::max();
  return std::max<std::size_t>({std::size_t{1} << (k + 1), n + 1, 2});
}

EventExpr extreme_event(Natural n, std::size_t points) {
  if (n >= points) throw std::invalid_argument("extreme_event: n outside {0..points-1}");
  std::vector<EventExpr> minimum, maximum;
  for (Natural j = 0; j < points; ++j) {
    if (j == n) continue;
    minimum.push_back(EventExpr::atom(FiniteOrder({n, j})));
    maximum.push_back(EventExpr::atom(FiniteOrder({j, n})));
  }
  return conjunction_of(minimum) | conjunction_of(maximum);
}

ExactRational extreme_measure(std::size_t points) {
  if (points == 0) throw std::invalid_argument("extreme_measure: no points");
  // (N-1)! orders put n first, (N-1)! put it last; both at once only when N = 1.
  if (points == 1) return ExactRational(1);
  return ExactRational(BigInt(2) * factorial(static_cast<unsigned>(points - 1)), factorial(static_cast<unsigned>(points)));
}

MLTestFamily unbounded_test_family(Natural n, std::size_t prefix_cap) {
  return MLTestFamily("unbounded(" + std::to_string(n) + ")", [n, prefix_cap](unsigned k) -> std::optional<TestLevel> {
    const std::size_t points = unbounded_level_size(n, k);
    if (points > prefix_cap) return std::nullopt;
    TestLevel level;
    level.k = k;
    level.prefix_size = points;
    level.measure = extreme_measure(points);
    level.contains = [n](const OrderPrefix& o) {
      const auto r = o.rank(n);
      return r == 0 || r + 1 == o.size();
    };
    level.event = [n, points] { return extreme_event(n, points); };
    return level;
  });
}

bool poset_extension_test(const OrderPrefix& o, std::size_t N, std::size_t cap) {
  return universal_poset_stage(N, cap).stage.extended_by(o);
}

ExactRational poset_extension_measure(std::size_t N, std::size_t linear_extension_cap) {
  const auto stage = universal_poset_stage(N, std::max(N, kDefaultPosetCap));
  return ExactRational(linear_extension_count(stage.stage, linear_extension_cap), factorial(static_cast<unsigned>(N)));
}

EventExpr poset_extension_event(std::size_t N) {
  const auto stage = universal_poset_stage(N, std::max(N, kDefaultPosetCap));
  std::vector<EventExpr> parts;
  for (auto [a, b] : stage.stage.pairs()) parts.push_back(EventExpr::atom(FiniteOrder({a, b})));
  return conjunction_of(parts);
}

MLTestFamily poset_test_family(std::size_t linear_extension_cap) {
  const std::size_t cap = std::min(linear_extension_cap, kMaxLinearExtensionCap);
  return MLTestFamily("poset", [cap](unsigned k) -> std::optional<TestLevel> {
    const ExactRational bound = dyadic_unit(k);
    for (std::size_t N = 1; N <= cap; ++N) {
      ExactRational mu = poset_extension_measure(N, cap);
      if (mu > bound) continue;
      TestLevel level;
      level.k = k;
      level.prefix_size = N;
      level.measure = std::move(mu);
      level.contains = [N](const OrderPrefix& o) { return poset_extension_test(o, N, std::max(N, kDefaultPosetCap)); };
      level.event = [N] { return poset_extension_event(N); };
      return level;
    }
    return std::nullopt;
  });
}

namespace {

template <typename PrefixFn>
std::vector<FamilyVerdict> run_levels(PrefixFn&& prefix, const std::vector<MLTestFamily>& families, unsigned depth) {
  std::vector<FamilyVerdict> out;
  for (const auto& family : families) {
    FamilyVerdict v;
    v.family = family.name();
    v.depth = depth;
    for (unsigned k = 1; k <= depth; ++k) {
      auto level = family.level(k);
      if (!level) {
        v.exhausted_at = k;
        break;
      }
      LevelOutcome outcome;
      outcome.k = k;
      outcome.prefix_size = level->prefix_size;
      outcome.measure = level->measure;
      outcome.member = level->contains(prefix(level->prefix_size));
      if (outcome.member) v.failed_level = k;
      v.levels.push_back(std::move(outcome));
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<FamilyVerdict> run_ml_tests(RandomOrderStream& stream, const std::vector<MLTestFamily>& families,
                                        unsigned depth) {
  return run_levels([&](std::size_t n) { return stream.prefix(n); }, families, depth);
}

std::vector<FamilyVerdict> run_ml_tests(const OrderPresentation& order, const std::vector<MLTestFamily>& families,
                                        unsigned depth) {
  return run_levels([&](std::size_t n) { return prefix_of(order, n); }, families, depth);
}

nlohmann::json to_json(const FamilyVerdict& v) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : v.levels)
    levels.push_back({{"k", l.k}, {"exact_mu", l.measure.to_string()}, {"member", l.member}, {"prefix", l.prefix_size}});
  nlohmann::json j{{"family", v.family}, {"depth", v.depth}, {"levels", levels}, {"verdict", v.passed() ? "pass" : "fail"}};
  j["failed_level"] = v.failed_level ? nlohmann::json(*v.failed_level) : nlohmann::json(nullptr);
  j["exhausted_at"] = v.exhausted_at ? nlohmann::json(*v.exhausted_at) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Graph codec

GraphPrefix graph_from_bits(const std::vector<bool>& bits) { return GraphPrefix::from_pair_bits(bits); }

std::vector<bool> bits_from_graph(const GraphPrefix& g) { return g.pair_bits(); }

std::vector<bool> random_bits(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  std::vector<bool> bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = (word >> (i % 64)) & 1U;
  }
  return bits;
}

std::vector<bool> parse_bits(std::string_view text) {
  std::vector<bool> bits;
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const bool hex = text.substr(i, 2) == "0x" || text.substr(i, 2) == "0X";
  if (hex) i += 2;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (hex) {
      if (!std::isxdigit(static_cast<unsigned char>(c))) throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
      const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(c) - 'a' + 10;
      for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
    } else {
      if (c != '0' && c != '1') throw std::invalid_argument(std::string("bad bit '") + c + "'");
      bits.push_back(c == '1');
    }
  }
  return bits;
}

std::string format_bits(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace uminflow
