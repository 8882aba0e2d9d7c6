// uminflow: command-line front end.
//
// Exit codes: 0 success, 2 usage or parse error, 3 resource cap or search
// budget exceeded, 4 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uminflow/fraisse.hpp"
#include "uminflow/measure.hpp"
#include "uminflow/orders.hpp"
#include "uminflow/randomizer.hpp"
#include "uminflow/sampler.hpp"

namespace {

using namespace uminflow;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerify = 4;

struct Caps {
  std::size_t support = kDefaultSupportCap;
  std::size_t poset = kDefaultPosetCap;
  std::size_t linear_extensions = kDefaultLinearExtensionCap;
};

// UMINFLOW_CAPS="support=8,poset=64,linext=16"; any subset of keys.
void apply_env_caps(Caps& caps) {
  const char* env = std::getenv("UMINFLOW_CAPS");
  if (!env) return;
  std::stringstream in(env);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("UMINFLOW_CAPS: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::size_t value = std::stoul(item.substr(eq + 1));
    if (key == "support")
      caps.support = value;
    else if (key == "poset")
      caps.poset = value;
    else if (key == "linext")
      caps.linear_extensions = value;
    else
      throw std::invalid_argument("UMINFLOW_CAPS: unknown key '" + key + "'");
  }
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

std::vector<MLTestFamily> families_from(const std::vector<std::string>& names, Natural n, Natural m, Natural point,
                                        const Caps& caps) {
  std::vector<MLTestFamily> out;
  for (const auto& name : names) {
    if (name == "density")
      out.push_back(density_test_family(n, m));
    else if (name == "unbounded")
      out.push_back(unbounded_test_family(point));
    else if (name == "poset")
      out.push_back(poset_test_family(caps.linear_extensions));
    else
      throw std::invalid_argument("unknown test family '" + name + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant measure on orders of N: exact measures, sampling, Martin-Lof test levels, "
               "Fraisse presentations and randomizer certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  Caps caps;
  std::string format = "text";
  std::string out_path;
  std::optional<std::size_t> cap_support, cap_poset;
  app.add_option("--cap-support", cap_support, "Largest event support enumerated exactly");
  app.add_option("--cap-poset", cap_poset, "Largest universal poset stage");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "Output file (default stdout)");

  std::uint64_t seed = 0;
  unsigned depth = 0;

  // measure
  auto* measure = app.add_subcommand("measure", "Measure of an event");
  std::string expr_text;
  std::string method = "exact";
  unsigned precision = 20;
  measure->add_option("expr", expr_text, "Event, e.g. \"ord(0<1) & !ord(2<3)\"")->required();
  measure->add_option("--method", method, "exact | weight")->check(CLI::IsMember({"exact", "weight"}));
  measure->add_option("-k,--precision", precision, "Dyadic precision for --method weight");

  // sample
  auto* sample = app.add_subcommand("sample", "Sample an order prefix or a random graph prefix");
  std::size_t size = 0;
  std::string kind = "order";
  sample->add_option("--seed", seed)->required();
  sample->add_option("-n,--size", size, "Number of points / vertices")->required();
  sample->add_option("--kind", kind)->check(CLI::IsMember({"order", "graph"}));

  // test
  auto* test = app.add_subcommand("test", "Run Martin-Lof test levels on a sampled or recursive order");
  std::vector<std::string> family_names{"density"};
  std::vector<Natural> pair{0, 1};
  Natural point = 0;
  std::string order_name;
  test->add_option("--seed", seed);
  test->add_option("--families", family_names, "density, unbounded, poset")->delimiter(',');
  test->add_option("--depth", depth, "Highest level")->required();
  test->add_option("--pair", pair, "Points n,m for the density family")->delimiter(',')->expected(2);
  test->add_option("--point", point, "Point n for the unbounded family");
  test->add_option("--order", order_name, "Test a named recursive presentation instead of the seeded stream");

  // iso
  auto* iso = app.add_subcommand("iso", "Back-and-forth isomorphism between two order presentations");
  std::string from_name = "rational-v1", to_name = "dyadic-v1";
  iso->add_option("--from", from_name);
  iso->add_option("--to", to_name);
  iso->add_option("--depth", depth)->required();
  std::size_t iso_budget = kDefaultStepBudget;
  iso->add_option("--budget", iso_budget, "New candidates allowed per step");

  // randomizer
  auto* randomizer = app.add_subcommand("randomizer", "Depth-n randomizer certificate for a seeded order");
  std::string tau_name = "rational-v1";
  randomizer->add_option("--seed", seed)->required();
  randomizer->add_option("--depth", depth)->required();
  randomizer->add_option("--tau", tau_name);
  std::size_t step_budget = kRandomizerStepBudget;
  randomizer->add_option("--budget", step_budget, "New stream elements allowed per step");

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check a randomizer certificate");
  std::string cert_path;
  verify->add_option("certificate", cert_path, "Certificate JSON file ('-' for stdin)")->required();

  // encode / decode
  auto* encode = app.add_subcommand("encode", "Graph edge list -> pair bits");
  std::string in_path;
  encode->add_option("input", in_path, "Edge list file ('-' for stdin)")->required();
  auto* decode = app.add_subcommand("decode", "Pair bits (0/1 or 0x hex) -> graph edge list");
  decode->add_option("input", in_path, "Bits file ('-' for stdin)")->required();

  // poset
  auto* poset = app.add_subcommand("poset", "Universal poset stage, extension measure and automorphism trap");
  std::size_t stage_n = 0;
  poset->add_option("-n,--size", stage_n)->required();

  // density
  auto* density = app.add_subcommand("density", "Bounded density / no-endpoint check of a presentation");
  std::size_t search_bound = 100;
  density->add_option("--order", order_name)->required();
  density->add_option("-n,--size", size)->required();
  density->add_option("--search-bound", search_bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const bool as_json = format == "json";
  try {
    apply_env_caps(caps);
    if (cap_support) caps.support = *cap_support;
    if (cap_poset) caps.poset = *cap_poset;

    if (*measure) {
      const EventExpr e = parse_event(expr_text);
      json j{{"expr", to_string(e)}, {"method", method}};
      std::string text;
      if (method == "exact") {
        text = mu_exact(e, caps.support).to_string();
        j["precision"] = nullptr;
      } else {
        text = mu_weight_recursive(e, precision, caps.linear_extensions).to_string();
        j["precision"] = precision;
      }
      j["mu"] = text;
      emit(as_json ? j.dump() + "\n" : text + "\n", out_path);
    } else if (*sample) {
      if (kind == "order") {
        const OrderPrefix o = sample_prefix(seed, size);
        emit(as_json ? json{{"seed", seed}, {"n", size}, {"order", o.sequence()}}.dump() + "\n" : format_prefix(o),
             out_path);
      } else {
        if (size > 100000) throw CapExceeded("graph prefix too large");
        const GraphPrefix g = graph_from_bits(random_bits(seed, size * (size - (size > 0)) / 2));
        emit(format_edge_list(g), out_path);
      }
    } else if (*test) {
      const auto families = families_from(family_names, pair.at(0), pair.at(1), point, caps);
      std::vector<FamilyVerdict> verdicts;
      if (!order_name.empty()) {
        verdicts = run_ml_tests(presentation_by_name(order_name), families, depth);
      } else {
        RandomOrderStream stream(seed);
        verdicts = run_ml_tests(stream, families, depth);
      }
      json report = json::array();
      if (depth > 0)
        for (const auto& v : verdicts) report.push_back(to_json(v));
      if (as_json) {
        emit(report.dump(2) + "\n", out_path);
      } else {
        std::ostringstream out;
        for (const auto& v : depth > 0 ? verdicts : std::vector<FamilyVerdict>{}) {
          out << v.family << ": " << (v.passed() ? "pass" : "fail at level " + std::to_string(*v.failed_level));
          if (v.exhausted_at) out << " (levels from " << *v.exhausted_at << " beyond caps)";
          out << '\n';
          for (const auto& l : v.levels)
            out << "  k=" << l.k << " prefix=" << l.prefix_size << " mu=" << l.measure.to_string()
                << " member=" << (l.member ? "yes" : "no") << '\n';
        }
        emit(out.str(), out_path);
      }
    } else if (*iso) {
      const auto f = back_and_forth(presentation_by_name(from_name), presentation_by_name(to_name), depth, iso_budget);
      json pairs = json::array();
      for (const auto& [a, b] : f.pairs()) pairs.push_back({a, b});
      emit(json{{"from", from_name}, {"to", to_name}, {"depth", depth}, {"pairs", pairs}}.dump() + "\n", out_path);
    } else if (*randomizer) {
      RandomOrderStream stream(seed);
      const auto cert = compute_randomizer(presentation_by_name(tau_name), stream, depth, step_budget);
      emit(to_json(cert).dump() + "\n", out_path);
    } else if (*verify) {
      const auto cert = certificate_from_json(json::parse(read_file(cert_path)));
      RandomOrderStream stream(cert.seed);
      const bool ok = verify_certificate(cert, presentation_by_name(cert.tau_id), stream);
      emit(as_json ? json{{"valid", ok}}.dump() + "\n" : std::string(ok ? "valid\n" : "invalid\n"), out_path);
      return ok ? 0 : kExitVerify;
    } else if (*encode) {
      emit(format_bits(bits_from_graph(parse_edge_list(read_file(in_path)))) + "\n", out_path);
    } else if (*decode) {
      emit(format_edge_list(graph_from_bits(parse_bits(read_file(in_path)))), out_path);
    } else if (*poset) {
      const auto stage = universal_poset_stage(stage_n, caps.poset);
      json j = to_json(stage);
      if (stage_n <= caps.linear_extensions) {
        const auto trap = poset_automorphism_obstruction(stage_n, caps.poset, caps.linear_extensions);
        j["extension_measure"] = trap.trap_measure.to_string();
        j["automorphisms"] = trap.automorphisms;
        j["all_trapped"] = trap.all_trapped;
      }
      emit(j.dump() + "\n", out_path);
    } else if (*density) {
      const auto r = check_density(presentation_by_name(order_name), size, search_bound);
      json j{{"order", order_name},
             {"n", r.n},
             {"search_bound", r.search_bound},
             {"all_witnessed", r.all_witnessed()},
             {"unwitnessed_between", r.unwitnessed_between},
             {"no_lower", r.no_lower},
             {"no_upper", r.no_upper}};
      emit(j.dump() + "\n", out_path);
      return r.all_witnessed() ? 0 : kExitVerify;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const BudgetExhausted& e) {
    std::cerr << "search budget exhausted: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
