#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "uminflow/measure.hpp"
#include "uminflow/sampler.hpp"

namespace uminflow {
namespace {

using testing::standard_error;

TEST(SplitMix64, ReferenceValues) {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  SplitMix64 g(0);
  EXPECT_EQ(g(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(g(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(g(), 0x06C45D188009454FULL);
}

TEST(RandomOrderStream, TrivialPrefixes) {
  EXPECT_EQ(sample_prefix(5, 0).size(), 0u);
  EXPECT_EQ(sample_prefix(5, 1), OrderPrefix::identity(1));
  EXPECT_THROW(sample_prefix(5, kMaxSampleSize + 1), CapExceeded);
}

TEST(RandomOrderStream, Deterministic) {
  EXPECT_EQ(sample_prefix(99, 200), sample_prefix(99, 200));
  EXPECT_NE(sample_prefix(99, 200), sample_prefix(100, 200));
}

TEST(RandomOrderStream, PrefixesAreConsistent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_EQ(sample_prefix(seed, 10).restrict(5), sample_prefix(seed, 5));
}

TEST(RandomOrderStream, RevealsOnlyWhatIsCompared) {
  RandomOrderStream s(3);
  EXPECT_EQ(s.revealed(), 0u);
  s.less(2, 7);
  EXPECT_EQ(s.revealed(), 8u);
  s.prefix(4);
  EXPECT_EQ(s.revealed(), 8u);
  EXPECT_EQ(s.tie_cap_hits(), 0u);
  EXPECT_FALSE(s.less(4, 4));
}

TEST(RandomOrderStream, AgreesWithKeyWords) {
  RandomOrderStream s(42);
  for (Natural a = 0; a < 30; ++a)
    for (Natural b = 0; b < 30; ++b)
      if (a != b) {
        EXPECT_EQ(s.less(a, b), RandomOrderStream::key_word(42, a, 0) < RandomOrderStream::key_word(42, b, 0));
      }
}

TEST(RandomOrderStream, ExchangeableAtFourPoints) {
  constexpr int trials = 20000;
  std::map<std::vector<Natural>, int> counts;
  for (std::uint64_t seed = 0; seed < trials; ++seed) ++counts[sample_prefix(seed, 4).sequence()];
  EXPECT_EQ(counts.size(), 24u);
  const double p = 1.0 / 24;
  for (const auto& [order, c] : counts) EXPECT_NEAR(c / double(trials), p, 4 * standard_error(p, trials));
}

TEST(RandomOrderStream, CylinderFrequenciesMatchFactorials) {
  constexpr int trials = 20000;
  const std::vector<FiniteOrder> cylinders{FiniteOrder({3, 0}), FiniteOrder({5, 1, 2}), FiniteOrder({0, 4, 6, 2})};
  std::vector<int> hits(cylinders.size());
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const auto o = sample_prefix(seed + 1000000, 7);
    for (std::size_t i = 0; i < cylinders.size(); ++i) hits[i] += evaluate(EventExpr::atom(cylinders[i]), o);
  }
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    const double p = mu_cylinder(cylinders[i]).to_double();
    EXPECT_NEAR(hits[i] / double(trials), p, 4 * standard_error(p, trials));
  }
}

TEST(DensityFamily, LevelExamples) {
  const auto f = density_test_family(0, 1);
  const auto l1 = f.level(1);
  ASSERT_TRUE(l1);
  EXPECT_EQ(l1->prefix_size, 8u);
  EXPECT_EQ(l1->measure, ExactRational(BigInt(1), BigInt(4)));
  const auto l3 = f.level(3);
  EXPECT_EQ(l3->measure, ExactRational(BigInt(2), BigInt(32)));
  EXPECT_THROW(density_test_family(2, 2), std::invalid_argument);
  EXPECT_EQ(density_level_size(4, 1, 2), 40u);
}

TEST(DensityFamily, LevelMeasuresAreSound) {
  for (auto [n, m] : {std::pair<Natural, Natural>{0, 1}, {3, 1}, {2, 6}}) {
    const auto f = density_test_family(n, m);
    for (unsigned k = 1; k <= 5; ++k) {
      const auto l = f.level(k);
      ASSERT_TRUE(l);
      EXPECT_LE(l->measure, dyadic_unit(k));
      EXPECT_EQ(l->measure, mu_adjacency(n, m, l->prefix_size));
    }
  }
}

TEST(DensityFamily, EventMatchesMembershipAndMeasure) {
  // At small N the level event can be enumerated directly.
  for (std::size_t N = 2; N <= 6; ++N) {
    const auto e = adjacency_event(0, 1, N);
    std::vector<Natural> dom(N);
    std::iota(dom.begin(), dom.end(), Natural{0});
    EXPECT_EQ(testing::brute_measure(e, dom), mu_adjacency(0, 1, N));
    std::vector<Natural> seq = dom;
    do {
      const auto o = OrderPrefix::from_sequence(seq);
      const auto gap = o.rank(0) > o.rank(1) ? o.rank(0) - o.rank(1) : o.rank(1) - o.rank(0);
      ASSERT_EQ(evaluate(e, o), gap == 1);
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
}

TEST(DensityFamily, PrefixCapEndsTheFamily) {
  const auto f = density_test_family(0, 1, 40);
  EXPECT_TRUE(f.level(3));
  EXPECT_FALSE(f.level(4));
  RandomOrderStream s(1);
  const auto v = run_ml_tests(s, {f}, 6);
  EXPECT_EQ(v.front().exhausted_at, std::optional<unsigned>(4));
  EXPECT_EQ(v.front().levels.size(), 3u);
}

TEST(DensityFamily, EmpiricalFailureRateMatchesMeasure) {
  constexpr int trials = 1000;
  const auto f = density_test_family(0, 1);
  std::vector<int> fails(4);
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    RandomOrderStream s(seed);
    const auto v = run_ml_tests(s, {f}, 3).front();
    for (const auto& l : v.levels) fails[l.k] += l.member;
  }
  for (unsigned k = 1; k <= 3; ++k) {
    const double p = f.level(k)->measure.to_double();
    EXPECT_NEAR(fails[k] / double(trials), p, 4 * standard_error(p, trials)) << "k=" << k;
  }
}

TEST(UnboundedFamily, ExtremeMeasureMatchesEnumeration) {
  for (std::size_t N = 1; N <= 7; ++N) {
    std::vector<Natural> dom(N);
    std::iota(dom.begin(), dom.end(), Natural{0});
    EXPECT_EQ(testing::brute_measure(extreme_event(0, N), dom), extreme_measure(N)) << N;
    if (N >= 2) {
      EventExpr minimum = EventExpr::atom(FiniteOrder({0, 1}));
      for (Natural j = 2; j < N; ++j) minimum = minimum & EventExpr::atom(FiniteOrder({0, j}));
      EXPECT_EQ(testing::brute_measure(minimum, dom), ExactRational(BigInt(1), BigInt(N)));
    }
  }
}

TEST(UnboundedFamily, LevelMeasuresAreSound) {
  for (Natural n : {0u, 3u, 20u}) {
    const auto f = unbounded_test_family(n);
    for (unsigned k = 1; k <= 5; ++k) {
      const auto l = f.level(k);
      ASSERT_TRUE(l);
      EXPECT_LE(l->measure, dyadic_unit(k));
      EXPECT_GT(l->prefix_size, n);
    }
  }
}

TEST(UnboundedFamily, MostStreamsPassLevelFive) {
  const auto f = unbounded_test_family(0);
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomOrderStream s(seed);
    const auto l = f.level(5);
    passes += !l->contains(s.prefix(l->prefix_size));
  }
  EXPECT_GE(passes, 950);
}

TEST(PosetFamily, CanonicalPrefixExtendsEveryStage) {
  for (std::size_t N = 1; N <= 20; ++N) EXPECT_TRUE(poset_extension_test(universal_poset_stage(N).canon, N));
}

TEST(PosetFamily, ExtensionMeasureStrictlyDecreases) {
  for (std::size_t N = 3; N <= 10; ++N) EXPECT_LT(poset_extension_measure(N), poset_extension_measure(N - 1)) << N;
}

TEST(PosetFamily, ExtensionMeasureMatchesEnumeration) {
  for (std::size_t N = 1; N <= 7; ++N) {
    const auto stage = universal_poset_stage(N).stage;
    EXPECT_EQ(poset_extension_measure(N),
              ExactRational(BigInt(testing::brute_extensions(N, stage.pairs())), factorial(static_cast<unsigned>(N))));
    std::vector<Natural> dom(N);
    std::iota(dom.begin(), dom.end(), Natural{0});
    EXPECT_EQ(testing::brute_measure(poset_extension_event(N), dom), poset_extension_measure(N));
  }
}

TEST(PosetFamily, LevelMeasuresAreSound) {
  const auto f = poset_test_family();
  for (unsigned k = 1; k <= 5; ++k) {
    const auto l = f.level(k);
    ASSERT_TRUE(l);
    EXPECT_LE(l->measure, dyadic_unit(k));
  }
}

TEST(PosetFamily, CanonicalOrderFailsAtEveryLevel) {
  const auto v = run_ml_tests(canonical_poset_order(), {poset_test_family()}, 6).front();
  EXPECT_FALSE(v.passed());
  EXPECT_EQ(v.failed_level, std::optional<unsigned>(6));
  for (const auto& l : v.levels) EXPECT_TRUE(l.member);
}

TEST(PosetFamily, MonteCarloMatchesExtensionMeasure) {
  constexpr int trials = 4000;
  for (std::size_t N : {4u, 6u}) {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < trials; ++seed) hits += poset_extension_test(sample_prefix(seed, N), N);
    const double p = poset_extension_measure(N).to_double();
    EXPECT_NEAR(hits / double(trials), p, 4 * standard_error(p, trials)) << N;
  }
}

TEST(RunMlTests, DepthZeroIsVacuous) {
  RandomOrderStream s(0);
  const auto v = run_ml_tests(s, {density_test_family(0, 1), poset_test_family()}, 0);
  ASSERT_EQ(v.size(), 2u);
  for (const auto& f : v) {
    EXPECT_TRUE(f.passed());
    EXPECT_TRUE(f.levels.empty());
  }
}

TEST(RunMlTests, ReadsOnlyTheLevelPrefix) {
  RandomOrderStream s(12);
  run_ml_tests(s, {density_test_family(0, 1)}, 3);
  EXPECT_EQ(s.revealed(), density_level_size(0, 1, 3));
}

TEST(RunMlTests, MembershipMatchesLevelEvent) {
  const auto f = unbounded_test_family(1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto l = f.level(1);
    const auto o = sample_prefix(seed, l->prefix_size);
    EXPECT_EQ(l->contains(o), evaluate(l->event(), o));
  }
}

TEST(RunMlTests, JsonShape) {
  RandomOrderStream s(5);
  const auto j = to_json(run_ml_tests(s, {density_test_family(0, 1)}, 2).front());
  EXPECT_EQ(j.at("family"), "density(0,1)");
  EXPECT_EQ(j.at("levels").size(), 2u);
  EXPECT_EQ(j.at("levels")[0].at("exact_mu"), "1/4");
  EXPECT_TRUE(j.at("levels")[0].at("member").is_boolean());
  EXPECT_TRUE(j.at("verdict") == "pass" || j.at("verdict") == "fail");
}

TEST(Codec, AllZeroIsEmpty) {
  const auto g = graph_from_bits(std::vector<bool>(45, false));
  EXPECT_EQ(g.vertices(), 10u);
  EXPECT_TRUE(g.edges().empty());
}

TEST(Codec, RoundTripRandomStrings) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto bits = random_bits(seed, 45);
    EXPECT_EQ(bits_from_graph(graph_from_bits(bits)), bits);
  }
  for (std::size_t len : {0u, 1u, 2u, 7u, 11u}) {
    const auto bits = random_bits(len, len);
    EXPECT_EQ(bits_from_graph(graph_from_bits(bits)), bits);
  }
}

TEST(Codec, RoundTripGraphs) {
  // Zero pair bits decode to the empty graph, so the one-vertex graph is not
  // recoverable; from two vertices on the vertex count is determined.
  EXPECT_EQ(graph_from_bits(bits_from_graph(GraphPrefix(1))), GraphPrefix(0));
  std::mt19937_64 rng(61);
  for (std::size_t v = 2; v <= 20; ++v) {
    GraphPrefix g(v);
    std::bernoulli_distribution coin(0.5);
    for (Natural i = 0; i < v; ++i)
      for (Natural j = i + 1; j < v; ++j) g.set_adjacent(i, j, coin(rng));
    EXPECT_EQ(graph_from_bits(bits_from_graph(g)), g);
  }
}

TEST(Codec, EdgeIsPresentIffItsBitIs) {
  const auto bits = random_bits(9, 190);
  const auto g = graph_from_bits(bits);
  EXPECT_EQ(g.vertices(), 20u);
  for (Natural j = 1; j < 20; ++j)
    for (Natural i = 0; i < j; ++i) EXPECT_EQ(g.adjacent(i, j), bits[j * (j - 1) / 2 + i]);
}

TEST(Codec, ParseBits) {
  EXPECT_EQ(parse_bits("0 1\n1"), (std::vector<bool>{false, true, true}));
  EXPECT_EQ(parse_bits("0xA"), (std::vector<bool>{true, false, true, false}));
  EXPECT_EQ(format_bits(parse_bits("0110")), "0110");
  EXPECT_THROW(parse_bits("012"), std::invalid_argument);
  EXPECT_THROW(parse_bits("0xZ"), std::invalid_argument);
}

TEST(Codec, RandomGraphExtensionFrequency) {
  // Fair-coin graphs on 20 vertices: the demand (A, B) fails exactly when no
  // other vertex matches its pattern, probability (1 - 2^-(|A|+|B|))^(20-|A|-|B|).
  constexpr int trials = 1000;
  const std::vector<std::pair<std::vector<Natural>, std::vector<Natural>>> demands{
      {{0}, {}}, {{0, 1}, {2}}, {{}, {3, 4}}, {{1, 4}, {0}}};
  for (const auto& [A, B] : demands) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      const auto g = graph_from_bits(random_bits(seed + 5000, 190));
      bool found = false;
      for (Natural z = 0; z < 20 && !found; ++z) {
        if (std::find(A.begin(), A.end(), z) != A.end() || std::find(B.begin(), B.end(), z) != B.end()) continue;
        bool good = true;
        for (Natural a : A) good = good && g.adjacent(z, a);
        for (Natural b : B) good = good && !g.adjacent(z, b);
        found = good;
      }
      ok += found;
    }
    const double s = static_cast<double>(A.size() + B.size());
    const double p = 1 - std::pow(1 - std::pow(2.0, -s), 20 - s);
    EXPECT_NEAR(ok / double(trials), p, 4 * standard_error(p, trials) + 1e-9);
  }
}

}  // namespace
}  // namespace uminflow
