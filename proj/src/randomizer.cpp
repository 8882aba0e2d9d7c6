#include "uminflow/randomizer.hpp"

#include <stdexcept>

namespace uminflow {

nlohmann::json to_json(const RandomizerCertificate& c) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : c.sigma.pairs()) pairs.push_back({a, b});
  return {{"seed", c.seed}, {"tau", c.tau_id}, {"pairs", pairs}, {"depth", c.depth}};
}

RandomizerCertificate certificate_from_json(const nlohmann::json& j) {
  RandomizerCertificate c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tau_id = j.at("tau").get<std::string>();
  c.depth = j.at("depth").get<std::size_t>();
  for (const auto& p : j.at("pairs")) c.sigma.insert(p.at(0).get<Natural>(), p.at(1).get<Natural>());
  return c;
}

RandomizerCertificate compute_randomizer(const OrderPresentation& tau, RandomOrderStream& xi, std::size_t n,
                                         std::size_t step_budget) {
  RandomizerCertificate c;
  c.sigma = back_and_forth(tau, xi.presentation(), n, step_budget);
  c.tau_id = tau.name;
  c.seed = xi.seed();
  c.depth = n;
  return c;
}

bool maps_order(const PartialPermutation& sigma, const OrderPresentation& tau, const OrderPresentation& xi) {
  const auto& pairs = sigma.pairs();
  for (auto i = pairs.begin(); i != pairs.end(); ++i)
    for (auto j = std::next(i); j != pairs.end(); ++j)
      if (tau.less(i->first, j->first) != xi.less(i->second, j->second)) return false;
  return true;
}

bool verify_certificate(const RandomizerCertificate& c, const OrderPresentation& tau, RandomOrderStream& xi) {
  if (c.seed != xi.seed()) throw std::invalid_argument("certificate seed does not match the stream");
  if (c.tau_id != tau.name) throw std::invalid_argument("certificate presentation '" + c.tau_id + "' does not match '" + tau.name + "'");
  for (Natural i = 0; i < c.depth; ++i)
    if (!c.sigma.contains(i) || !c.sigma.in_range(i)) return false;
  return maps_order(c.sigma, tau, xi.presentation());
}

ConjugationReport conjugation_check(const PartialPermutation& sigma, const PartialPermutation& pi,
                                    const OrderPresentation& tau, const OrderPresentation& xi) {
  for (Natural a : sigma.domain())
    if (!pi.contains(a)) throw std::invalid_argument("pi is undefined at " + std::to_string(a) + " in sigma's domain");

  ConjugationReport r;
  r.direct = maps_order(sigma, tau, xi);

  // pi tau: x <_{pi tau} y iff pi^-1 x <_tau pi^-1 y, on pi(dom sigma).
  const PartialPermutation pi_inv = pi.inverse();
  const PartialPermutation conj = sigma.compose(pi_inv);
  const OrderPresentation pi_tau{"conjugate", [&](Natural x, Natural y) { return tau.less(pi_inv.at(x), pi_inv.at(y)); }};
  PartialPermutation restricted;
  for (Natural a : sigma.domain()) {
    const Natural x = pi.at(a);
    restricted.insert(x, conj.at(x));
  }
  r.conjugated = maps_order(restricted, pi_tau, xi);
  return r;
}

namespace {

void search_automorphisms(const FinitePoset& p, PartialPermutation& partial, Natural next,
                          std::vector<bool>& used, std::vector<PartialPermutation>& out) {
  const std::size_t n = p.size();
  if (next == n) {
    out.push_back(partial);
    return;
  }
  for (Natural image = 0; image < n; ++image) {
    if (used[image]) continue;
    bool ok = true;
    for (Natural x = 0; x < next && ok; ++x) {
      const Natural gx = partial.at(x);
      ok = p.less(x, next) == p.less(gx, image) && p.less(next, x) == p.less(image, gx);
    }
    if (!ok) continue;
    used[image] = true;
    PartialPermutation extended = partial;
    extended.insert(next, image);
    search_automorphisms(p, extended, next + 1, used, out);
    used[image] = false;
  }
}

}  // namespace

std::vector<PartialPermutation> poset_automorphisms(std::size_t n, std::size_t cap) {
  const auto stage = universal_poset_stage(n, cap);
  std::vector<PartialPermutation> out;
  PartialPermutation partial;
  std::vector<bool> used(n, false);
  search_automorphisms(stage.stage, partial, 0, used, out);
  return out;
}

AutomorphismObstruction poset_automorphism_obstruction(std::size_t n, std::size_t cap, std::size_t linear_extension_cap) {
  const auto stage = universal_poset_stage(n, cap);
  AutomorphismObstruction r;
  r.n = n;
  r.trap_measure = poset_extension_measure(n, linear_extension_cap);
  r.all_trapped = true;
  for (const auto& g : poset_automorphisms(n, cap)) {
    ++r.automorphisms;
    if (!stage.stage.extended_by(act(g, stage.canon))) r.all_trapped = false;
  }
  return r;
}

}  // namespace uminflow
