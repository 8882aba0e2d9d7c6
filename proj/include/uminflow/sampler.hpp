#pragma once

// Seeded sampling of the invariant measure, finite levels of Martin-Lof
// tests against it, and the bit-string <-> graph codec.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uminflow/fraisse.hpp"
#include "uminflow/measure.hpp"
#include "uminflow/orders.hpp"

namespace uminflow {

inline constexpr std::size_t kMaxSampleSize = 1'000'000;
// Keys are compared 64 bits at a time, at most 256 bits deep; after that the
// smaller index wins.
inline constexpr unsigned kKeyWords = 4;

// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t x);

// UniformRandomBitGenerator over the SplitMix64 sequence.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::uint64_t state_;
};

// A total order on N drawn from the invariant measure: each natural gets an
// i.i.d. uniform binary key, revealed lazily, and the order is key order.
// Single owner; reading keys grows an internal table.
class RandomOrderStream {
 public:
  explicit RandomOrderStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  bool less(Natural a, Natural b);
  OrderPrefix prefix(std::size_t n);

  // Number of naturals whose key has been read so far.
  std::size_t revealed() const noexcept { return first_words_.size(); }
  // Comparisons that fell through all key words to the index tiebreak.
  std::size_t tie_cap_hits() const noexcept { return tie_cap_hits_; }

  // View as a presentation; the stream must outlive it.
  OrderPresentation presentation();

  // Word `word` (0-based, most significant first) of natural n's key.
  static std::uint64_t key_word(std::uint64_t seed, Natural n, unsigned word);

 private:
  std::uint64_t first_word(Natural n);

  std::uint64_t seed_;
  std::vector<std::uint64_t> first_words_;
  std::size_t tie_cap_hits_ = 0;
};

// Prefix of size N of the stream with this seed. Throws CapExceeded for N > 10^6.
OrderPrefix sample_prefix(std::uint64_t seed, std::size_t N);

// Level k of a test: an event of measure <= 2^-k that depends only on the
// order restricted to {0..prefix_size-1}.
struct TestLevel {
  unsigned k = 0;
  std::size_t prefix_size = 0;
  ExactRational measure;
  std::function<bool(const OrderPrefix&)> contains;
  std::function<EventExpr()> event;
};

class MLTestFamily {
 public:
  using LevelFn = std::function<std::optional<TestLevel>(unsigned)>;
  MLTestFamily(std::string name, LevelFn level) : name_(std::move(name)), level_(std::move(level)) {}

  const std::string& name() const noexcept { return name_; }
  // nullopt when the level is beyond the configured caps.
  std::optional<TestLevel> level(unsigned k) const { return level_(k); }

 private:
  std::string name_;
  LevelFn level_;
};

// Level k: n and m adjacent among {0..N-1}, N = 2^(k+1) max(2, n+1, m+1);
// measure 2/N. Throws std::invalid_argument if n == m.
MLTestFamily density_test_family(Natural n, Natural m, std::size_t prefix_cap = kMaxSampleSize);
std::size_t density_level_size(Natural n, Natural m, unsigned k);

// Level k: n is the least or the greatest of {0..N}, N + 1 = max(2^(k+1), n+1);
// measure 2/(N+1).
MLTestFamily unbounded_test_family(Natural n, std::size_t prefix_cap = kMaxSampleSize);
std::size_t unbounded_level_size(Natural n, unsigned k);
EventExpr extreme_event(Natural n, std::size_t points);
ExactRational extreme_measure(std::size_t points);

// Level k: the order extends stage N of the universal poset, for the least N
// with e(P_N)/N! <= 2^-k, searched up to the linear extension cap.
MLTestFamily poset_test_family(std::size_t linear_extension_cap = kDefaultLinearExtensionCap);

// True iff o linearly extends universal_poset_stage(N).
bool poset_extension_test(const OrderPrefix& o, std::size_t N, std::size_t cap = kDefaultPosetCap);
// e(P_N) / N!, the measure of the orders extending stage N.
ExactRational poset_extension_measure(std::size_t N, std::size_t linear_extension_cap = kDefaultLinearExtensionCap);
EventExpr poset_extension_event(std::size_t N);

struct LevelOutcome {
  unsigned k = 0;
  std::size_t prefix_size = 0;
  ExactRational measure;
  bool member = false;
};

struct FamilyVerdict {
  std::string family;
  unsigned depth = 0;
  std::vector<LevelOutcome> levels;
  std::optional<unsigned> failed_level;  // greatest level containing the order
  std::optional<unsigned> exhausted_at;  // first level beyond the caps

  bool passed() const { return !failed_level.has_value(); }
};

// Evaluates levels 1..depth of each family on the order's prefixes.
std::vector<FamilyVerdict> run_ml_tests(RandomOrderStream& stream, const std::vector<MLTestFamily>& families,
                                        unsigned depth);
std::vector<FamilyVerdict> run_ml_tests(const OrderPresentation& order, const std::vector<MLTestFamily>& families,
                                        unsigned depth);

// {"family": name, "levels": [{"k", "exact_mu", "member", "prefix"}], "verdict": "pass"|"fail", ...}
nlohmann::json to_json(const FamilyVerdict& v);

// --- graph codec --------------------------------------------------------------

// Edge {i, j} is present iff bit pair_rank(i, j) is 1.
GraphPrefix graph_from_bits(const std::vector<bool>& bits);
std::vector<bool> bits_from_graph(const GraphPrefix& g);

std::vector<bool> random_bits(std::uint64_t seed, std::size_t count);
// "0101..." (whitespace ignored) or "0x" followed by hex digits, 4 bits per
// digit, most significant first. Throws std::invalid_argument.
std::vector<bool> parse_bits(std::string_view text);
std::string format_bits(const std::vector<bool>& bits);

}  // namespace uminflow
