#include "crn/io.hpp"
#include "crn/property_suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace crn;

std::pair<Index, Index> parse_edge_name(const std::string& name) {
  std::string body = name;
  const size_t arrow = body.find("->");
  if (arrow != std::string::npos)
    return {std::stol(body.substr(0, arrow)) - 1, std::stol(body.substr(arrow + 2)) - 1};
  if (!body.empty() && (body[0] == 'k' || body[0] == 'K')) body.erase(0, 1);
  const size_t underscore = body.find('_');
  if (underscore != std::string::npos)
    return {std::stol(body.substr(0, underscore)) - 1, std::stol(body.substr(underscore + 1)) - 1};
  if (body.size() == 2 && std::isdigit(static_cast<unsigned char>(body[0])) &&
      std::isdigit(static_cast<unsigned char>(body[1])))
    return {body[0] - '0' - 1, body[1] - '0' - 1};
  throw std::invalid_argument("cannot parse edge name '" + name +
                              "' (use k12, k1_2, or 1->2)");
}

void apply_rate_overrides(MassActionSystem& sys, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("rate override must be name=value: '" + item + "'");
    const auto [tail, head] = parse_edge_name(item.substr(0, eq));
    const Rational value = parse_rational(item.substr(eq + 1));
    if (value <= 0) throw std::invalid_argument("rate override must be positive: '" + item + "'");
    bool found = false;
    for (Index e = 0; e < sys.network.graph.edge_count(); ++e) {
      if (sys.network.graph.edges[e] == std::make_pair(tail, head)) {
        sys.rates[e] = value;
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument("no edge " + std::to_string(tail + 1) + "->" +
                                  std::to_string(head + 1) + " in the network");
  }
}

Eigen::VectorXd parse_anchor(const MassActionSystem& sys, const std::string& text) {
  Eigen::VectorXd anchor = Eigen::VectorXd::Constant(sys.network.species_count(), -1);
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    const size_t eq = piece.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("anchor must be name=value pairs: '" + piece + "'");
    std::string name = piece.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    auto matches = [&](const std::string& species) {
      if (species == name) return true;
      if (species.size() != name.size()) return false;
      for (size_t i = 0; i < species.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(species[i])) !=
            std::tolower(static_cast<unsigned char>(name[i])))
          return false;
      return true;
    };
    const auto it =
        std::find_if(sys.network.species.begin(), sys.network.species.end(), matches);
    if (it == sys.network.species.end())
      throw std::invalid_argument("unknown species '" + name + "' in anchor");
    anchor[it - sys.network.species.begin()] = to_double(parse_rational(piece.substr(eq + 1)));
  }
  for (Index s = 0; s < anchor.size(); ++s)
    if (!(anchor[s] > 0))
      throw std::invalid_argument("anchor must give a positive value for every species");
  return anchor;
}

void emit(const AnalysisReport& report, bool json) {
  if (json)
    std::cout << report_to_json(report).dump(2) << "\n";
  else
    std::cout << report_to_text(report);
}

int run_analyze(const std::string& path, bool json) {
  const NetworkDocument doc = parse_network_file(path);
  emit(build_analysis_report(doc), json);
  return 0;
}

int run_check(const std::string& path, const std::string& theorem,
              const std::vector<std::string>& overrides, bool json) {
  NetworkDocument doc = parse_network_file(path);
  apply_rate_overrides(doc.system, overrides);

  AnalysisReport report = build_analysis_report(doc);
  const Decomposition& dec = *report.decomposition;
  const TheoremVerdict verdict = theorem == "def1" ? check_deficiency_one(doc.system, dec)
                                                   : check_mass_action(doc.system, dec);
  report.verdicts.push_back(verdict);
  emit(report, json);
  if (verdict.passed) return 0;
  if (verdict.any_failed()) return 2;
  return 3;
}

int run_solve(const std::string& path, const std::string& anchor_text,
              const std::string& class_kind, const std::vector<std::string>& overrides,
              bool json) {
  NetworkDocument doc = parse_network_file(path);
  apply_rate_overrides(doc.system, overrides);
  const Eigen::VectorXd anchor = parse_anchor(doc.system, anchor_text);

  AnalysisReport report = build_analysis_report(doc);
  const Decomposition& dec = *report.decomposition;
  const TheoremVerdict verdict = check_mass_action(doc.system, dec);
  report.verdicts.push_back(verdict);
  const CompatibilityClass kind = class_kind == "kinetic" ? CompatibilityClass::kinetic
                                                          : CompatibilityClass::stoichiometric;
  report.equilibrium = solve_equilibrium(doc.system, dec, verdict, anchor, kind);
  emit(report, json);
  return 0;
}

int run_salt(const std::string& path, bool json) {
  const NetworkDocument doc = parse_network_file(path);
  AnalysisReport report;
  report.system = doc.system;
  report.warnings = doc.warnings;

  const GraphStats stats = graph_stats(doc.system.network.graph);
  for (Index s : stats.terminal_sccs) {
    if (stats.sccs[s].size() < 2) continue;
    report.salt_certificates.push_back(
        salt_certificate(doc.system.network.graph, doc.system.rates, stats.sccs[s]));
  }
  emit(report, json);
  if (report.salt_certificates.empty())
    std::cout << "no non-singleton terminal strong component\n";
  return 0;
}

int run_verify(const std::string& path, int fuzz, uint64_t seed) {
  if (const char* env = std::getenv("CRN_SEED")) seed = std::strtoull(env, nullptr, 10);

  const NetworkDocument doc = parse_network_file(path);
  bool all_passed = true;
  const SuiteResult file_suite = network_invariants_suite(doc.system);
  std::cout << file_suite.name << ": " << (file_suite.passed ? "PASS" : "FAIL")
            << (file_suite.detail.empty() ? "" : " -- " + file_suite.detail) << "\n";
  all_passed = all_passed && file_suite.passed;

  for (const SuiteResult& suite : run_property_suites(seed, fuzz)) {
    std::cout << suite.name << ": " << (suite.passed ? "PASS" : "FAIL") << " (" << suite.cases
              << " cases)" << (suite.detail.empty() ? "" : " -- " + suite.detail) << "\n";
    all_passed = all_passed && suite.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mass-action reaction network analysis: deficiency, dependency, "
               "decompositions, theorem verdicts, equilibria"};
  app.require_subcommand(1);

  std::string path, theorem, anchor_text, class_kind = "stoich";
  std::vector<std::string> overrides;
  bool json = false;
  int fuzz = 100;
  uint64_t seed = 12345;

  auto* analyze = app.add_subcommand("analyze", "structural report and decomposition tables");
  analyze->add_option("file", path)->required();
  analyze->add_flag("--json", json);

  auto* check = app.add_subcommand("check", "theorem-condition verdicts");
  check->add_option("file", path)->required();
  check->add_option("--theorem", theorem)->required()->check(CLI::IsMember({"dep1", "def1"}));
  check->add_option("--k", overrides, "rate override, e.g. --k k15=4");
  check->add_flag("--json", json);

  auto* solve = app.add_subcommand("solve", "equilibrium in a compatibility class");
  solve->add_option("file", path)->required();
  solve->add_option("--anchor", anchor_text, "positive anchor, e.g. x1=1,x2=1")->required();
  solve->add_option("--class", class_kind)->check(CLI::IsMember({"stoich", "kinetic"}));
  solve->add_option("--k", overrides, "rate override");
  solve->add_flag("--json", json);

  auto* salt = app.add_subcommand("salt", "second-salt-theorem certificate");
  salt->add_option("file", path)->required();
  salt->add_flag("--json", json);

  auto* verify = app.add_subcommand("verify", "randomized property oracles");
  verify->add_option("file", path)->required();
  verify->add_option("--fuzz", fuzz, "cases per suite");
  verify->add_option("--seed", seed, "rng seed (CRN_SEED env overrides)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return run_analyze(path, json);
    if (app.got_subcommand(check)) return run_check(path, theorem, overrides, json);
    if (app.got_subcommand(solve)) return run_solve(path, anchor_text, class_kind, overrides, json);
    if (app.got_subcommand(salt)) return run_salt(path, json);
    if (app.got_subcommand(verify)) return run_verify(path, fuzz, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
