#include "support.hpp"

#include <stdexcept>

namespace sf_test {

PrefixMap mine_prefixes() {
  PrefixMap m;
  m.declare("", "http://example.org/mine#");
  m.declare("sn", "http://www.w3.org/ns/sosa/");
  return m;
}

std::string with_prefixes(const std::string& body) {
  return "@prefix : <http://example.org/mine#> .\n@prefix sn: <http://www.w3.org/ns/sosa/> .\n" +
         body;
}

// "?x" -> variable, "\"l\"" -> literal, otherwise a (prefixed) IRI.
static Term parse_one(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty term");
  if (s[0] == '?') return Term::variable(s.substr(1));
  if (s[0] == '"') return Term::literal(s.substr(1, s.size() - 2));
  if (s == "a") return rdf_type();
  return iri(s);
}

Term iri(const std::string& prefixed) {
  const auto m = mine_prefixes();
  const auto colon = prefixed.find(':');
  if (colon != std::string::npos) {
    if (const auto* ns = m.lookup(prefixed.substr(0, colon)))
      return Term::iri(*ns + prefixed.substr(colon + 1));
  }
  return Term::iri(prefixed);
}

Term lit(const std::string& s) { return Term::literal(s); }
Term var(const std::string& name) { return Term::variable(name); }

TriplePattern tp(const std::string& s, const std::string& p, const std::string& o) {
  return {parse_one(s), parse_one(p), parse_one(o)};
}

Graph graph(const std::string& turtle) { return parse_graph(with_prefixes(turtle)); }

GraphPattern patterns(const std::string& triples) {
  auto r = parse_rules(with_prefixes("CONSTRUCT { } WHERE { " + triples + " }"));
  return r.at(0).antecedent;
}

TriplestoreSchema schema(const std::string& text) { return parse_schema(with_prefixes(text)); }
RuleSet rules(const std::string& text) { return parse_rules(with_prefixes(text)); }

InferenceRule rule(const std::string& antecedent, const std::string& consequent,
                   const std::string& name) {
  auto r = parse_rules(with_prefixes("# name: " + name + "\nCONSTRUCT { " + consequent +
                                     " } WHERE { " + antecedent + " }"));
  return r.at(0);
}

TriplestoreSchema s1() { return parse_schema(read_file(kFixtures + "/s1.schema"), "s1.schema"); }
RuleSet r1() { return parse_rules(read_file(kFixtures + "/r1.rules"), "r1.rules"); }
Graph i1() { return parse_graph(read_file(kFixtures + "/i1.ttl"), "i1.ttl"); }

InferenceRule r1_rule(const std::string& name) {
  for (const auto& r : r1())
    if (r.name == name) return r;
  throw std::invalid_argument("no rule " + name);
}

}  // namespace sf_test
