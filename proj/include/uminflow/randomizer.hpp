#pragma once

// Finite-depth certificates for randomizer permutations: sigma with
// sigma tau = xi on a finite domain, where tau is a recursive rational order
// and xi a sampled order.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "uminflow/fraisse.hpp"
#include "uminflow/measure.hpp"
#include "uminflow/orders.hpp"
#include "uminflow/sampler.hpp"

namespace uminflow {

inline constexpr std::size_t kRandomizerStepBudget = std::size_t{1} << 16;

// Holds when, for all a, b in sigma's domain, a <_tau b iff sigma(a) <_xi sigma(b).
// Says nothing about the infinite permutation.
struct RandomizerCertificate {
  PartialPermutation sigma;
  std::string tau_id;
  std::uint64_t seed = 0;
  std::size_t depth = 0;

  friend bool operator==(const RandomizerCertificate&, const RandomizerCertificate&) = default;
};

// {"seed": ..., "tau": "rational-v1", "pairs": [[a, b], ...], "depth": n}
nlohmann::json to_json(const RandomizerCertificate& c);
RandomizerCertificate certificate_from_json(const nlohmann::json& j);

// Back-and-forth between tau and the stream's order, domain and range covering
// {0..n-1}. Throws BudgetExhausted (naming the blocking pair) if a step needs
// to reveal more than `step_budget` new stream elements.
RandomizerCertificate compute_randomizer(const OrderPresentation& tau, RandomOrderStream& xi, std::size_t n,
                                         std::size_t step_budget = kRandomizerStepBudget);

// Re-checks the certificate against the stream. Throws std::invalid_argument
// if the seed or the presentation does not match the certificate.
bool verify_certificate(const RandomizerCertificate& c, const OrderPresentation& tau, RandomOrderStream& xi);

// sigma maps tau to xi on sigma's domain.
bool maps_order(const PartialPermutation& sigma, const OrderPresentation& tau, const OrderPresentation& xi);

struct ConjugationReport {
  bool direct = false;      // sigma maps tau to xi on dom(sigma)
  bool conjugated = false;  // sigma pi^-1 maps pi tau to xi on pi(dom(sigma))

  bool consistent() const { return direct == conjugated; }
};

// Both sides computed independently. Throws std::invalid_argument if pi is not
// defined on all of sigma's domain.
ConjugationReport conjugation_check(const PartialPermutation& sigma, const PartialPermutation& pi,
                                    const OrderPresentation& tau, const OrderPresentation& xi);

struct AutomorphismObstruction {
  std::size_t n = 0;
  std::size_t automorphisms = 0;  // automorphisms of stage n found
  bool all_trapped = false;       // each g tau still extends stage n
  ExactRational trap_measure;     // e(P_n)/n!
};

// All automorphisms of stage n of the universal poset, by backtracking.
std::vector<PartialPermutation> poset_automorphisms(std::size_t n, std::size_t cap = kDefaultPosetCap);

// For every automorphism g of stage n, checks that g applied to the canonical
// extension prefix still extends stage n. Throws CapExceeded past the caps.
AutomorphismObstruction poset_automorphism_obstruction(std::size_t n, std::size_t cap = kDefaultPosetCap,
                                                       std::size_t linear_extension_cap = kDefaultLinearExtensionCap);

}  // namespace uminflow
