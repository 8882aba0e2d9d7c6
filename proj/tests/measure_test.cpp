#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "uminflow/measure.hpp"

namespace uminflow {
namespace {

ExactRational frac(long long p, long long q) { return ExactRational(BigInt(p), BigInt(q)); }

TEST(ExactRational, ReducedAndPrinted) {
  EXPECT_EQ(frac(2, 4).to_string(), "1/2");
  EXPECT_EQ(frac(-3, -6), frac(1, 2));
  EXPECT_EQ(frac(4, 2).to_string(), "2");
  EXPECT_EQ(ExactRational::parse("6/8"), frac(3, 4));
  EXPECT_THROW(frac(1, 0), std::domain_error);
}

TEST(DyadicApprox, RoundsToNearest) {
  const auto d = round_to_dyadic(frac(1, 3), 4);
  EXPECT_EQ(d.to_string(), "5/2^4");
  EXPECT_LE((d.value() - frac(1, 3)), dyadic_unit(5));
  EXPECT_EQ(round_to_dyadic(frac(3, 32), 4).to_string(), "2/2^4");
}

TEST(MuCylinder, OneOverFactorial) {
  EXPECT_EQ(mu_cylinder(FiniteOrder({0, 1, 2})), frac(1, 6));
  EXPECT_EQ(mu_cylinder(FiniteOrder()), ExactRational(1));
  EXPECT_EQ(mu_cylinder(FiniteOrder({0, 1, 2, 3, 4, 5, 6, 7})), frac(1, 40320));
  EXPECT_EQ(mu_cylinder(FiniteOrder({9})), ExactRational(1));
}

TEST(MuExact, Examples) {
  EXPECT_EQ(mu_exact(parse_event("ord(0<1)")), frac(1, 2));
  EXPECT_EQ(mu_exact(parse_event("ord(0<1) | !ord(0<1)")), ExactRational(1));
  EXPECT_EQ(mu_exact(parse_event("ord(0<1)&ord(1<2)&ord(2<0)")), ExactRational(0));
  EXPECT_EQ(mu_exact(parse_event("ord(0<1) & !ord(2<3)")), frac(1, 4));
}

TEST(MuExact, SupportCap) {
  const auto e = parse_event("ord(0<1<2<3<4<5<6<7<8)");
  EXPECT_THROW(mu_exact(e), CapExceeded);
  EXPECT_EQ(mu_exact(e, 9), frac(1, 362880));
}

TEST(MuExact, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 150; ++t) {
    const auto e = testing::random_event(rng, 6, 4);
    EXPECT_EQ(mu_exact(e), testing::brute_measure(e)) << to_string(e);
  }
}

TEST(MuExact, Additivity) {
  std::mt19937_64 rng(37);
  int disjoint_pairs = 0;
  for (int t = 0; t < 600 && disjoint_pairs < 60; ++t) {
    const auto a = testing::random_event(rng, 5, 2);
    const auto b = testing::random_event(rng, 5, 2);
    if (mu_exact(a & b) != ExactRational(0)) continue;
    ++disjoint_pairs;
    EXPECT_EQ(mu_exact(a | b), mu_exact(a) + mu_exact(b));
  }
  EXPECT_GE(disjoint_pairs, 20);
}

TEST(MuExact, PartitionIdentity) {
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Natural> elements{7, 2, 9, 4, 0};
    elements.resize(k);
    const FiniteOrder l(elements);
    std::vector<Natural> images(k);
    std::iota(images.begin(), images.end(), Natural{0});
    ExactRational total(0);
    std::size_t terms = 0;
    do {
      PartialPermutation s;
      auto sorted = elements;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < k; ++i) s.insert(sorted[i], sorted[images[i]]);
      const auto m = mu_cylinder(act_on_event(s, l));
      EXPECT_EQ(m, mu_cylinder(l));
      total += m;
      ++terms;
    } while (std::next_permutation(images.begin(), images.end()));
    EXPECT_EQ(total, ExactRational(1)) << "k=" << k;
    EXPECT_EQ(BigInt(terms), factorial(static_cast<unsigned>(k)));
  }
}

TEST(MuExact, Invariance) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto e = testing::random_event(rng, 6, 3);
    const auto sigma = PartialPermutation::from_images(testing::random_permutation(rng, 6));
    EXPECT_EQ(mu_exact(act_on_event(sigma, e)), mu_exact(e));
  }
}

TEST(SignedDnf, IsEquivalent) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const auto e = testing::random_event(rng, 5, 3);
    const auto dnf = signed_dnf(e);
    const auto back = to_event(dnf);
    const auto dom = std::vector<Natural>{0, 1, 2, 3, 4};
    std::vector<Natural> seq = dom;
    do {
      const auto o = OrderPrefix::from_sequence(seq);
      ASSERT_EQ(evaluate(back, o), evaluate(e, o)) << to_string(e);
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
}

TEST(SignedDnf, DropsContradictions) {
  EXPECT_TRUE(signed_dnf(parse_event("ord(0<1)&ord(1<2)&ord(2<0)")).empty());
  EXPECT_TRUE(signed_dnf(parse_event("ord(0<1<2) & !ord(0<2)")).empty());
  const auto tautology = signed_dnf(parse_event("ord(0<1) | !ord(0<1)"));
  ASSERT_EQ(tautology.size(), 2u);
  EXPECT_EQ(weight(tautology[0]) + weight(tautology[1]), 1u);
}

TEST(MuWeightRecursive, SingleAtom) {
  const auto e = parse_event("ord(3<1<4<0)");
  for (unsigned k : {0u, 1u, 5u, 20u, 64u}) {
    const auto beta = mu_weight_recursive(e, k);
    EXPECT_EQ(beta.precision, k);
    const auto err = beta.value() - frac(1, 24);
    EXPECT_LT(err < ExactRational(0) ? -err : err, dyadic_unit(k));
  }
}

TEST(MuWeightRecursive, Tautology) {
  const auto beta = mu_weight_recursive(parse_event("ord(0<1<2) | !ord(0<1<2)"), 12);
  EXPECT_EQ(beta.value(), ExactRational(1));
}

TEST(MuWeightRecursive, ExampleWithinTolerance) {
  const auto beta = mu_weight_recursive(parse_event("ord(0<1)&!ord(2<3)"), 10);
  const auto err = beta.value() - frac(1, 4);
  EXPECT_LT(err < ExactRational(0) ? -err : err, dyadic_unit(10));
}

TEST(MuWeightRecursive, PrecisionCap) {
  EXPECT_THROW(mu_weight_recursive(parse_event("ord(0<1)"), 65), CapExceeded);
}

TEST(WeightRecursion, ExactValueMatchesBruteForce) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 150; ++t) {
    const auto e = testing::random_event(rng, 6, 3);
    EXPECT_EQ(weight_recursion_value(e), testing::brute_measure(e)) << to_string(e);
  }
}

TEST(MuAdjacency, ClosedForm) {
  EXPECT_EQ(mu_adjacency(0, 1, 5), frac(2, 5));
  EXPECT_EQ(mu_adjacency(0, 1, 2), ExactRational(1));
  EXPECT_EQ(mu_adjacency(1, 0, 2), ExactRational(1));
  EXPECT_EQ(mu_adjacency(0, 3, 4), frac(2, 4));
  EXPECT_EQ(mu_exact(adjacency_event(0, 3, 4)), frac(2, 4));
  EXPECT_EQ(testing::brute_measure(adjacency_event(0, 3, 4), {0, 1, 2, 3}), frac(1, 2));
}

TEST(MuAdjacency, Preconditions) {
  EXPECT_THROW(mu_adjacency(1, 1, 4), std::invalid_argument);
  EXPECT_THROW(mu_adjacency(0, 4, 4), std::invalid_argument);
  EXPECT_THROW(mu_adjacency(0, 1, 1), std::invalid_argument);
}

TEST(MuAdjacency, StrictlyDecreasingToZero) {
  for (std::size_t N = 3; N <= 64; ++N) {
    EXPECT_LT(mu_adjacency(0, 1, N), mu_adjacency(0, 1, N - 1));
    EXPECT_EQ(mu_adjacency(0, 1, N), frac(2, static_cast<long long>(N)));
  }
  EXPECT_LT(mu_adjacency(0, 1, 64), dyadic_unit(4));
}

TEST(LinearExtensions, Examples) {
  EXPECT_EQ(linear_extension_count(FinitePoset(3)), BigInt(6));
  EXPECT_EQ(linear_extension_count(FinitePoset::chain(4)), BigInt(1));
  EXPECT_EQ(linear_extension_count(FinitePoset::from_pairs(3, {{0, 2}, {1, 2}})), BigInt(2));
  EXPECT_EQ(linear_extension_count(FinitePoset(0)), BigInt(1));
}

TEST(LinearExtensions, Cap) {
  EXPECT_THROW(linear_extension_count(FinitePoset(17)), CapExceeded);
  EXPECT_EQ(linear_extension_count(FinitePoset(20), 20), factorial(20));
  EXPECT_THROW(linear_extension_count(FinitePoset(21), 21), CapExceeded);
}

TEST(LinearExtensions, MatchesEnumerationAndBoundedByFactorial) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    // Random relations consistent with a hidden order, so the closure is acyclic.
    const auto hidden = testing::random_permutation(rng, n);
    std::vector<std::pair<Natural, Natural>> rel;
    std::bernoulli_distribution keep(0.3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (keep(rng)) rel.emplace_back(hidden[i], hidden[j]);
    const auto p = FinitePoset::from_pairs(n, rel);
    const auto count = linear_extension_count(p);
    EXPECT_EQ(count, BigInt(testing::brute_extensions(n, rel)));
    EXPECT_LE(count, factorial(static_cast<unsigned>(n)));
    EXPECT_EQ(count == factorial(static_cast<unsigned>(n)), p.is_antichain());
  }
}

TEST(FinitePoset, ClosureAndCycles) {
  const auto p = FinitePoset::from_pairs(4, {{0, 1}, {1, 2}});
  EXPECT_TRUE(p.less(0, 2));
  EXPECT_FALSE(p.comparable(0, 3));
  EXPECT_EQ(p.down_set(2), (std::vector<Natural>{0, 1}));
  EXPECT_EQ(p.up_set(0), (std::vector<Natural>{1, 2}));
  EXPECT_THROW(FinitePoset::from_pairs(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(FinitePoset::from_pairs(3, {{0, 3}}), std::invalid_argument);
  EXPECT_TRUE(p.extended_by(OrderPrefix::from_sequence({3, 0, 1, 2})));
  EXPECT_FALSE(p.extended_by(OrderPrefix::from_sequence({2, 0, 1, 3})));
  EXPECT_EQ(p.restrict(2), FinitePoset::from_pairs(2, {{0, 1}}));
}

}  // namespace
}  // namespace uminflow
