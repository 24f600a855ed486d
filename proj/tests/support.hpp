#pragma once

#include <ostream>
#include <string>

#include "schemaforge/consequence.hpp"
#include "schemaforge/io.hpp"

namespace schemaforge {
inline void PrintTo(const Term& t, std::ostream* os) { *os << to_string(t); }
inline void PrintTo(const TriplePattern& t, std::ostream* os) { *os << to_string(t); }
}  // namespace schemaforge

namespace sf_test {

using namespace schemaforge;

inline const std::string kFixtures = FIXTURE_DIR;

/// Prefixes of the running example: ':' and 'sn:'.
PrefixMap mine_prefixes();

std::string with_prefixes(const std::string& body);

Term iri(const std::string& prefixed);
Term lit(const std::string& s);
Term var(const std::string& name);
TriplePattern tp(const std::string& s, const std::string& p, const std::string& o);

Graph graph(const std::string& turtle);
GraphPattern patterns(const std::string& triples);
TriplestoreSchema schema(const std::string& text);
RuleSet rules(const std::string& text);
InferenceRule rule(const std::string& antecedent, const std::string& consequent,
                   const std::string& name = "r");

TriplestoreSchema s1();
RuleSet r1();
Graph i1();
InferenceRule r1_rule(const std::string& name);

}  // namespace sf_test
