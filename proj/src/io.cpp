#include "crn/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace crn {

namespace {

std::string trim(const std::string& s) {
  size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

using Complex = std::map<std::string, Rational>;

Complex parse_complex(const std::string& text, int line) {
  const std::string body = trim(text);
  if (body.empty()) throw ParseError(line, "empty complex");
  if (body == "0") return {};

  Complex out;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t next = body.find('+', pos);
    std::string term = trim(body.substr(pos, next == std::string::npos ? next : next - pos));
    if (term.empty()) throw ParseError(line, "malformed complex '" + body + "'");

    // optional rational coefficient, then an identifier
    size_t i = 0;
    if (i < term.size() && (term[i] == '-' || term[i] == '+')) ++i;
    size_t digits_begin = i;
    while (i < term.size() &&
           (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/' || term[i] == '.'))
      ++i;
    Rational coeff = 1;
    if (i > digits_begin) {
      try {
        coeff = parse_rational(term.substr(0, i));
      } catch (const std::exception&) {
        throw ParseError(line, "malformed coefficient in '" + term + "'");
      }
    } else if (digits_begin > 0) {
      coeff = term[0] == '-' ? -1 : 1;
    }
    std::string species = trim(term.substr(i));
    if (species.empty() || !(std::isalpha(static_cast<unsigned char>(species[0])) || species[0] == '_'))
      throw ParseError(line, "malformed complex term '" + term + "'");
    for (char c : species)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError(line, "malformed species name '" + species + "'");
    out[species] += coeff;

    if (next == std::string::npos) break;
    pos = next + 1;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

struct RateSpec {
  std::map<std::string, Rational> values;
};

RateSpec parse_rates(const std::string& text, int line) {
  RateSpec out;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    piece = trim(piece);
    if (piece.empty()) throw ParseError(line, "empty rate specification");
    const size_t eq = piece.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected name=value in '" + piece + "'");
    const std::string name = trim(piece.substr(0, eq));
    Rational value;
    try {
      value = parse_rational(piece.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError(line, "malformed rate constant in '" + piece + "'");
    }
    if (value <= 0) throw ParseError(line, "non-positive rate constant in '" + piece + "'");
    if (!out.values.insert({name, value}).second)
      throw ParseError(line, "duplicate rate name '" + name + "'");
  }
  return out;
}

struct Builder {
  std::vector<std::string> species;
  std::map<std::string, Index> species_index;
  std::vector<Complex> complexes;
  std::vector<std::pair<Index, Index>> edges;
  std::vector<Rational> rates;

  Index vertex_of(const Complex& complex) {
    for (size_t v = 0; v < complexes.size(); ++v)
      if (complexes[v] == complex) return static_cast<Index>(v);
    for (const auto& [name, coeff] : complex)
      if (species_index.insert({name, static_cast<Index>(species.size())}).second)
        species.push_back(name);
    complexes.push_back(complex);
    return static_cast<Index>(complexes.size()) - 1;
  }

  void add_edge(Index tail, Index head, const Rational& k, int line) {
    if (tail == head) throw ParseError(line, "reaction between identical complexes");
    for (const auto& [t, h] : edges)
      if (t == tail && h == head) throw ParseError(line, "duplicate edge");
    edges.push_back({tail, head});
    rates.push_back(k);
  }

  NetworkDocument finish() const {
    if (edges.empty()) throw ParseError(0, "no reactions");
    NetworkDocument doc;
    doc.system.network.species = species;
    doc.system.network.graph.vertex_count = static_cast<Index>(complexes.size());
    doc.system.network.graph.edges = edges;
    doc.system.network.complexes =
        MatrixXq::Zero(static_cast<Index>(species.size()), static_cast<Index>(complexes.size()));
    for (size_t v = 0; v < complexes.size(); ++v)
      for (const auto& [name, coeff] : complexes[v])
        doc.system.network.complexes(species_index.at(name), static_cast<Index>(v)) = coeff;
    doc.system.rates.resize(static_cast<Index>(rates.size()));
    for (size_t e = 0; e < rates.size(); ++e) doc.system.rates[static_cast<Index>(e)] = rates[e];
    doc.warnings = validate(doc.system.network);
    validate(doc.system);
    return doc;
  }
};

NetworkDocument parse_dsl(const std::string& text) {
  Builder builder;
  std::stringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;

    const size_t comma = body.find(',');
    if (comma == std::string::npos) throw ParseError(line, "missing rate specification");
    const std::string reaction = body.substr(0, comma);
    const RateSpec rates = parse_rates(body.substr(comma + 1), line);

    const size_t rev = reaction.find("<->");
    if (rev != std::string::npos) {
      const Complex lhs = parse_complex(reaction.substr(0, rev), line);
      const Complex rhs = parse_complex(reaction.substr(rev + 3), line);
      if (rates.values.size() != 2 || !rates.values.count("kf") || !rates.values.count("kr"))
        throw ParseError(line, "reversible reaction needs kf= and kr=");
      const Index tail = builder.vertex_of(lhs);
      const Index head = builder.vertex_of(rhs);
      builder.add_edge(tail, head, rates.values.at("kf"), line);
      builder.add_edge(head, tail, rates.values.at("kr"), line);
      continue;
    }
    const size_t fwd = reaction.find("->");
    if (fwd == std::string::npos) throw ParseError(line, "missing reaction arrow");
    const Complex lhs = parse_complex(reaction.substr(0, fwd), line);
    const Complex rhs = parse_complex(reaction.substr(fwd + 2), line);
    if (rates.values.size() != 1 || !rates.values.count("k"))
      throw ParseError(line, "irreversible reaction needs exactly k=");
    const Index tail = builder.vertex_of(lhs);
    const Index head = builder.vertex_of(rhs);
    builder.add_edge(tail, head, rates.values.at("k"), line);
  }
  return builder.finish();
}

}  // namespace

NetworkDocument parse_network(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return network_from_json(nlohmann::json::parse(text));
    break;
  }
  return parse_dsl(text);
}

NetworkDocument parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

std::string format_complex(const MassActionSystem& sys, Index vertex) {
  std::string out;
  for (Index s = 0; s < sys.network.species_count(); ++s) {
    const Rational& coeff = sys.network.complexes(s, vertex);
    if (coeff == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += to_string(coeff) + " ";
    out += sys.network.species[s];
  }
  return out.empty() ? "0" : out;
}

std::string serialize_network(const MassActionSystem& sys) {
  std::ostringstream out;
  for (Index e = 0; e < sys.network.graph.edge_count(); ++e) {
    const auto& [tail, head] = sys.network.graph.edges[e];
    out << format_complex(sys, tail) << " -> " << format_complex(sys, head)
        << ", k = " << to_string(sys.rates[e]) << "\n";
  }
  return out.str();
}

nlohmann::json network_to_json(const MassActionSystem& sys) {
  nlohmann::json out;
  out["species"] = sys.network.species;
  nlohmann::json vertices = nlohmann::json::array();
  for (Index v = 0; v < sys.network.vertex_count(); ++v) {
    nlohmann::json row = nlohmann::json::array();
    for (Index s = 0; s < sys.network.species_count(); ++s)
      row.push_back(to_string(sys.network.complexes(s, v)));
    vertices.push_back(row);
  }
  out["vertices"] = vertices;
  nlohmann::json edges = nlohmann::json::array();
  for (Index e = 0; e < sys.network.graph.edge_count(); ++e) {
    edges.push_back({{"tail", sys.network.graph.edges[e].first + 1},
                     {"head", sys.network.graph.edges[e].second + 1},
                     {"k", to_string(sys.rates[e])}});
  }
  out["edges"] = edges;
  return out;
}

NetworkDocument network_from_json(const nlohmann::json& doc) {
  NetworkDocument out;
  try {
    out.system.network.species = doc.at("species").get<std::vector<std::string>>();
    const auto& vertices = doc.at("vertices");
    const Index n = static_cast<Index>(out.system.network.species.size());
    out.system.network.graph.vertex_count = static_cast<Index>(vertices.size());
    out.system.network.complexes = MatrixXq::Zero(n, static_cast<Index>(vertices.size()));
    for (size_t v = 0; v < vertices.size(); ++v) {
      if (static_cast<Index>(vertices[v].size()) != n)
        throw std::runtime_error("vertex row length != species count");
      for (Index s = 0; s < n; ++s)
        out.system.network.complexes(s, static_cast<Index>(v)) =
            parse_rational(vertices[v][s].get<std::string>());
    }
    for (const auto& edge : doc.at("edges")) {
      out.system.network.graph.edges.push_back(
          {edge.at("tail").get<Index>() - 1, edge.at("head").get<Index>() - 1});
      Rational k = parse_rational(edge.at("k").get<std::string>());
      VectorXq rates(out.system.rates.size() + 1);
      rates.head(out.system.rates.size()) = out.system.rates;
      rates[rates.size() - 1] = k;
      out.system.rates = rates;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("JSON network: ") + e.what());
  }
  out.warnings = validate(out.system.network);
  validate(out.system);
  return out;
}

AnalysisReport build_analysis_report(const NetworkDocument& doc) {
  AnalysisReport report;
  report.system = doc.system;
  report.warnings = doc.warnings;
  report.structural = structural_report(doc.system);
  report.decomposition = finest_independent_decomposition(doc.system);
  report.checks = decomposition_checks(doc.system, *report.decomposition);
  if (report.decomposition->independent_ok) {
    const PolySystem ps = polysystem_from_decomposition(*report.decomposition);
    const MonomialStructure ms = monomial_structure(ps);
    report.class_analyses = analyze_all_classes(ps, ms);
  }
  return report;
}

namespace {

nlohmann::json rational_array(const VectorXq& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

nlohmann::json double_array(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

nlohmann::json verdict_to_json(const TheoremVerdict& verdict) {
  nlohmann::json conditions = nlohmann::json::array();
  for (const auto& c : verdict.conditions)
    conditions.push_back({{"label", c.label},
                          {"status", to_string(c.status)},
                          {"witness", c.witness},
                          {"diagnostic", c.diagnostic}});
  return {{"theorem", verdict.theorem},
          {"conditions", conditions},
          {"conclusion", verdict.conclusion},
          {"passed", verdict.passed}};
}

}  // namespace

nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json out;
  out["schema_version"] = report.schema_version;
  out["network"] = network_to_json(report.system);
  out["warnings"] = report.warnings;

  if (report.structural) {
    const StructuralReport& s = *report.structural;
    out["structural"] = {{"l", s.stats.component_count},
                         {"t", s.stats.terminal_count},
                         {"t_prime", s.stats.nonsingleton_terminal_count},
                         {"weakly_reversible", s.stats.weakly_reversible},
                         {"delta", s.deficiency},
                         {"d", s.dependency},
                         {"dim_S", s.stoich_basis.cols()},
                         {"dim_K", s.kinetic_basis.cols()},
                         {"dim_L", s.diff_basis.cols()},
                         {"K_equals_S", s.kinetic_equals_stoich},
                         {"L_equals_S", s.diff_equals_stoich},
                         {"K_equals_L", s.kinetic_equals_diff}};
  }

  if (report.decomposition) {
    const Decomposition& dec = *report.decomposition;
    nlohmann::json classes = nlohmann::json::array();
    for (size_t j = 0; j < dec.subnetworks.size(); ++j) {
      const Subnetwork& sub = dec.subnetworks[j];
      nlohmann::json entry = {{"delta", sub.deficiency},
                              {"d", sub.dependency},
                              {"t", sub.stats.terminal_count},
                              {"t_prime", sub.stats.nonsingleton_terminal_count},
                              {"connected", sub.connected}};
      nlohmann::json edge_ids = nlohmann::json::array();
      for (Index e : sub.edge_ids) edge_ids.push_back(e + 1);
      entry["edges"] = edge_ids;
      nlohmann::json vertex_ids = nlohmann::json::array();
      for (Index v : sub.vertex_ids) vertex_ids.push_back(v + 1);
      entry["vertices"] = vertex_ids;
      if (j < report.class_analyses.size()) {
        const ClassAnalysis& ca = report.class_analyses[j];
        if (ca.polytope_dim >= 0) entry["dim_P"] = ca.polytope_dim;
        if (ca.applicable && ca.dependency == 1) {
          entry["b"] = rational_array(ca.b);
          entry["b_tilde"] = rational_array(ca.b_lumped);
          entry["q"] = rational_array(ca.q_sorted);
        }
        if (!ca.applicable) entry["not_applicable"] = ca.not_applicable_reason;
      }
      classes.push_back(entry);
    }
    out["decomposition"] = {{"ell", dec.class_count()},
                            {"connected_ok", dec.connected_ok},
                            {"independent_ok", dec.independent_ok},
                            {"classes", classes}};
    if (report.checks && report.checks->applicable) {
      out["decomposition"]["identities"] = {
          {"dependency_additive", report.checks->dependency_additive},
          {"deficiency_additive", report.checks->deficiency_additive},
          {"vertex_count_identity", report.checks->vertex_count_identity},
          {"incidence_kernel_identity", report.checks->incidence_kernel_identity},
          {"diff_direct_sum", report.checks->diff_direct_sum},
          {"kinetic_sum_contained", report.checks->kinetic_sum_contained},
          {"gamma_kernel_product", report.checks->gamma_kernel_product}};
    }
  }

  if (!report.verdicts.empty()) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& verdict : report.verdicts) verdicts.push_back(verdict_to_json(verdict));
    out["verdicts"] = verdicts;
  } else {
    out["verdicts"] = nlohmann::json::array();
  }

  if (report.equilibrium) {
    const EquilibriumResult& eq = *report.equilibrium;
    nlohmann::json t_roots = nlohmann::json::array();
    for (double t : eq.t_roots) {
      if (std::isnan(t))
        t_roots.push_back(nullptr);
      else
        t_roots.push_back(t);
    }
    out["equilibrium"] = {{"x", double_array(eq.x_in_class)},
                          {"x_star", double_array(eq.x_star)},
                          {"anchor", double_array(eq.anchor)},
                          {"residual", eq.residual},
                          {"membership_gap", eq.membership_gap},
                          {"t_roots", t_roots},
                          {"birch_iterations", eq.birch_iterations},
                          {"unique_in_class", eq.unique_in_class}};
  }

  if (!report.salt_certificates.empty()) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& cert : report.salt_certificates) {
      nlohmann::json ordering = nlohmann::json::array();
      for (Index v : cert.ordering) ordering.push_back(v + 1);
      certs.push_back({{"ordering", ordering},
                       {"q_hat", rational_array(cert.q_hat)},
                       {"beta", rational_array(cert.beta)},
                       {"partial_sums", rational_array(cert.partial_sums)},
                       {"terminal_size", cert.terminal_size},
                       {"covers_all_vertices", cert.covers_all_vertices}});
    }
    out["salt_certificates"] = certs;
  }
  return out;
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream out;
  const MassActionSystem& sys = report.system;
  out << "network: " << sys.network.species_count() << " species, " << sys.network.vertex_count()
      << " vertices, " << sys.network.graph.edge_count() << " edges\n";
  for (Index v = 0; v < sys.network.vertex_count(); ++v)
    out << "  vertex " << v + 1 << ": " << format_complex(sys, v) << "\n";
  for (Index e = 0; e < sys.network.graph.edge_count(); ++e)
    out << "  edge " << e + 1 << ": " << sys.network.graph.edges[e].first + 1 << " -> "
        << sys.network.graph.edges[e].second + 1 << ", k = " << to_string(sys.rates[e]) << "\n";
  for (const auto& warning : report.warnings) out << "warning: " << warning << "\n";

  if (report.structural) {
    const StructuralReport& s = *report.structural;
    out << "l = " << s.stats.component_count << "\n";
    out << "t = " << s.stats.terminal_count << "\n";
    out << "t_prime = " << s.stats.nonsingleton_terminal_count << "\n";
    out << "weakly reversible: " << (s.stats.weakly_reversible ? "yes" : "no") << "\n";
    out << "dim S = " << s.stoich_basis.cols() << ", dim K = " << s.kinetic_basis.cols()
        << ", dim L = " << s.diff_basis.cols() << "\n";
    out << "delta = " << s.deficiency << "\n";
    out << "d = " << s.dependency << "\n";
    out << "K = S: " << (s.kinetic_equals_stoich ? "yes" : "no")
        << ", L = S: " << (s.diff_equals_stoich ? "yes" : "no")
        << ", K = L: " << (s.kinetic_equals_diff ? "yes" : "no") << "\n";
  }

  if (report.decomposition) {
    const Decomposition& dec = *report.decomposition;
    out << "ell = " << dec.class_count() << " (connected: " << (dec.connected_ok ? "yes" : "no")
        << ", independent: " << (dec.independent_ok ? "yes" : "no") << ")\n";
    for (size_t j = 0; j < dec.subnetworks.size(); ++j) {
      const Subnetwork& sub = dec.subnetworks[j];
      out << "class " << j + 1 << ": edges {";
      for (size_t i = 0; i < sub.edge_ids.size(); ++i)
        out << (i ? ", " : "") << sub.edge_ids[i] + 1;
      out << "}, delta_j = " << sub.deficiency << ", d_j = " << sub.dependency
          << ", t_j = " << sub.stats.terminal_count
          << ", t'_j = " << sub.stats.nonsingleton_terminal_count << "\n";
      if (j < report.class_analyses.size()) {
        const ClassAnalysis& ca = report.class_analyses[j];
        if (!ca.applicable) {
          out << "  " << ca.not_applicable_reason << "\n";
        } else {
          out << "  dim_P_" << j + 1 << " = " << ca.polytope_dim << "\n";
          if (ca.dependency == 1) {
            out << "  q = " << to_string(ca.q_sorted) << "\n";
            out << "  b = " << to_string(ca.b) << "\n";
            out << "  b_tilde = " << to_string(ca.b_lumped) << "\n";
          }
        }
      }
    }
    if (report.checks && report.checks->applicable)
      out << "decomposition identities: " << (report.checks->all_ok() ? "all hold" : "VIOLATED")
          << "\n";
  }

  for (const auto& verdict : report.verdicts) {
    out << "theorem " << verdict.theorem << ":\n";
    for (const auto& c : verdict.conditions)
      out << "  " << c.label << ": " << to_string(c.status)
          << (c.witness.empty() ? "" : " -- " + c.witness) << "\n";
    out << "  conclusion: " << verdict.conclusion << "\n";
  }

  if (report.equilibrium) {
    const EquilibriumResult& eq = *report.equilibrium;
    out << "equilibrium:\n";
    out << "  x = (";
    for (Index i = 0; i < eq.x_in_class.size(); ++i) out << (i ? ", " : "") << eq.x_in_class[i];
    out << ")\n";
    out << "  residual = " << eq.residual << "\n";
    out << "  membership gap = " << eq.membership_gap << "\n";
    for (size_t j = 0; j < eq.t_roots.size(); ++j)
      if (!std::isnan(eq.t_roots[j])) out << "  t_root class " << j + 1 << " = " << eq.t_roots[j] << "\n";
    out << "  birch iterations = " << eq.birch_iterations << "\n";
  }

  for (const auto& cert : report.salt_certificates) {
    out << "salt certificate (t = " << cert.terminal_size << "):\n";
    out << "  ordering = (";
    for (size_t i = 0; i < cert.ordering.size(); ++i) out << (i ? ", " : "") << cert.ordering[i] + 1;
    out << ")\n";
    out << "  q_hat = " << to_string(cert.q_hat) << "\n";
    out << "  beta = " << to_string(cert.beta) << "\n";
    out << "  partial sums = " << to_string(cert.partial_sums) << "\n";
    out << "  T = V: " << (cert.covers_all_vertices ? "yes" : "no") << "\n";
  }
  return out.str();
}

}  // namespace crn
