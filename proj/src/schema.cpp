#include "schemaforge/schema.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "schemaforge/pattern_eval.hpp"

namespace schemaforge {

std::string to_string(const ExistentialRule& e) {
  return to_string(e.antecedent) + " ->E " + to_string(e.consequent);
}

void TriplestoreSchema::validate() const {
  std::set<std::string> seen;
  for (const auto& t : graph) {
    if (!is_well_formed(t)) throw SchemaError("ill-formed schema pattern " + to_string(t));
    for (std::size_t i = 0; i < 3; ++i) {
      if (!t[i].is_variable()) continue;
      if (!seen.insert(t[i].lexical()).second)
        throw SchemaError("variable ?" + t[i].lexical() + " occurs more than once in schema graph");
      if (i < 2 && !no_literal.count(t[i].lexical()))
        throw SchemaError("subject/predicate variable ?" + t[i].lexical() +
                          " missing from no-literal set");
    }
  }
  for (const auto& v : no_literal)
    if (!seen.count(v))
      throw SchemaError("no-literal variable ?" + v + " does not occur in schema graph");
  for (const auto& e : existentials)
    if (!is_well_formed(e.antecedent) || !is_well_formed(e.consequent))
      throw SchemaError("ill-formed existential rule " + to_string(e));
}

bool triple_instantiates(const Triple& triple, const TriplePattern& pattern,
                         const NoLiteralSet& no_literal) {
  Mapping m;
  std::vector<std::string> added;
  if (!match_triple(pattern, triple, m, added)) return false;
  for (const auto& [name, value] : m)
    if (value.is_literal() && no_literal.count(name)) return false;
  return true;
}

bool conforms_to_graph(const Graph& graph, const TriplestoreSchema& schema) {
  std::map<Term, std::vector<const TriplePattern*>> by_predicate;
  std::vector<const TriplePattern*> variable_predicate;
  for (const auto& p : schema.graph) {
    if (p.p.is_variable())
      variable_predicate.push_back(&p);
    else
      by_predicate[p.p].push_back(&p);
  }
  for (const auto& t : graph) {
    if (!is_valid_triple(t)) return false;
    bool ok = false;
    if (auto it = by_predicate.find(t.p); it != by_predicate.end())
      ok = std::any_of(it->second.begin(), it->second.end(), [&](const TriplePattern* p) {
        return triple_instantiates(t, *p, schema.no_literal);
      });
    if (!ok)
      ok = std::any_of(variable_predicate.begin(), variable_predicate.end(),
                       [&](const TriplePattern* p) {
                         return triple_instantiates(t, *p, schema.no_literal);
                       });
    if (!ok) return false;
  }
  return true;
}

bool is_instance(const Graph& graph, const TriplestoreSchema& schema) {
  return conforms_to_graph(graph, schema) && violations(schema.existentials, graph).empty();
}

std::vector<Violation> violations(const std::set<ExistentialRule>& rules, const Graph& graph) {
  std::vector<Violation> out;
  if (rules.empty()) return out;
  const TripleIndex index(graph);
  for (const auto& e : rules) {
    for (const auto& m : evaluate_bgp(GraphPattern{e.antecedent}, index)) {
      const TriplePattern witness = apply_substitution(m, e.consequent);
      if (evaluate_bgp(GraphPattern{witness}, index).empty()) out.push_back({m, e});
    }
  }
  return out;
}

namespace {

/// Representative values for a variable: every schema constant allowed at
/// that position plus one fresh IRI and, when literals are allowed, one fresh
/// literal.
std::vector<Term> representatives(std::size_t position, bool allows_literal,
                                  const std::set<Term>& consts, const Term& fresh_iri,
                                  const Term& fresh_literal) {
  std::vector<Term> out;
  for (const auto& c : consts) {
    if (c.is_iri() || (c.is_literal() && position == 2 && allows_literal)) out.push_back(c);
  }
  out.push_back(fresh_iri);
  if (position == 2 && allows_literal) out.push_back(fresh_literal);
  return out;
}

Term unused_constant(const std::set<Term>& consts, bool literal) {
  for (int i = 0;; ++i) {
    const std::string lex = "urn:schemaforge:representative:" + std::to_string(i);
    Term t = literal ? Term::literal(lex) : Term::iri(lex);
    if (!consts.count(t)) return t;
  }
}

}  // namespace

bool schema_contains(const TriplestoreSchema& lhs, const TriplestoreSchema& rhs) {
  std::set<Term> consts = vars_and_consts(lhs.graph).consts;
  const auto rhs_consts = vars_and_consts(rhs.graph).consts;
  consts.insert(rhs_consts.begin(), rhs_consts.end());
  const Term fresh_iri = unused_constant(consts, false);
  const Term fresh_literal = unused_constant(consts, true);

  TriplestoreSchema target{rhs.graph, rhs.no_literal, {}};
  for (const auto& pattern : lhs.graph) {
    std::vector<std::vector<Term>> options(3);
    for (std::size_t i = 0; i < 3; ++i) {
      if (pattern[i].is_variable()) {
        const bool allows_literal = !lhs.no_literal.count(pattern[i].lexical());
        options[i] = representatives(i, allows_literal, consts, fresh_iri, fresh_literal);
      } else {
        options[i] = {pattern[i]};
      }
    }
    Graph reps;
    for (const auto& s : options[0])
      for (const auto& p : options[1])
        for (const auto& o : options[2]) {
          Triple t{s, p, o};
          if (is_valid_triple(t)) reps.insert(t);
        }
    if (!conforms_to_graph(reps, target)) return false;
  }
  return true;
}

ExistentialRule canonical_existential(const ExistentialRule& e) {
  Substitution rename;
  int next = 0;
  auto visit = [&](const TriplePattern& t) {
    for (std::size_t i = 0; i < 3; ++i)
      if (t[i].is_variable() && !rename.count(t[i].lexical()))
        rename.emplace(t[i].lexical(), Term::variable("x" + std::to_string(++next)));
  };
  visit(e.antecedent);
  visit(e.consequent);
  return {apply_substitution(rename, e.antecedent), apply_substitution(rename, e.consequent)};
}

bool schema_equivalent(const TriplestoreSchema& lhs, const TriplestoreSchema& rhs) {
  std::set<ExistentialRule> a, b;
  for (const auto& e : lhs.existentials) a.insert(canonical_existential(e));
  for (const auto& e : rhs.existentials) b.insert(canonical_existential(e));
  return a == b && schema_contains(lhs, rhs) && schema_contains(rhs, lhs);
}

bool pattern_subsumed(const TriplePattern& specific, const NoLiteralSet& specific_delta,
                      const TriplePattern& general, const NoLiteralSet& general_delta) {
  for (std::size_t i = 0; i < 3; ++i) {
    const Term& a = specific[i];
    const Term& b = general[i];
    if (!b.is_variable()) {
      if (a != b) return false;
      continue;
    }
    // Literals can only ever reach the object position.
    if (i < 2) continue;
    const bool general_allows_literal = !general_delta.count(b.lexical());
    if (general_allows_literal) continue;
    if (a.is_literal()) return false;
    if (a.is_variable() && !specific_delta.count(a.lexical())) return false;
  }
  return true;
}

namespace {

/// Shape of a pattern with variable names erased; equal keys mean equal
/// modulo renaming.
using ShapeKey = std::array<std::tuple<int, int, std::string>, 3>;

ShapeKey shape_key(const TriplePattern& t, const NoLiteralSet& delta) {
  ShapeKey key;
  for (std::size_t i = 0; i < 3; ++i) {
    if (t[i].is_variable())
      key[i] = {1, delta.count(t[i].lexical()) ? 1 : 0, std::string()};
    else
      key[i] = {0, static_cast<int>(t[i].kind()), t[i].lexical()};
  }
  return key;
}

}  // namespace

TriplestoreSchema normalize_schema(const TriplestoreSchema& schema) {
  // Deduplicate by shape, then drop patterns strictly subsumed by another.
  std::map<ShapeKey, TriplePattern> shapes;
  for (const auto& t : schema.graph) shapes.emplace(shape_key(t, schema.no_literal), t);

  // Candidate subsumers of t share its predicate or have a variable one, and
  // agree on each of subject/object or have a variable there.
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<const TriplePattern*>>
      buckets;
  auto slot = [](const Term& t) {
    return t.is_variable() ? std::string("?") : std::to_string(int(t.kind())) + t.lexical();
  };
  for (const auto& [key, t] : shapes) buckets[{slot(t.p), slot(t.s), slot(t.o)}].push_back(&t);

  std::vector<TriplePattern> kept;
  for (const auto& [key, t] : shapes) {
    bool subsumed = false;
    for (const std::string& p : {slot(t.p), std::string("?")}) {
      for (const std::string& s : {slot(t.s), std::string("?")}) {
        for (const std::string& o : {slot(t.o), std::string("?")}) {
          auto it = buckets.find({p, s, o});
          if (it == buckets.end()) continue;
          for (const TriplePattern* g : it->second) {
            if (g == &t) continue;
            if (pattern_subsumed(t, schema.no_literal, *g, schema.no_literal) &&
                !pattern_subsumed(*g, schema.no_literal, t, schema.no_literal)) {
              subsumed = true;
              break;
            }
          }
          if (subsumed || slot(t.o) == "?") break;
        }
        if (subsumed || slot(t.s) == "?") break;
      }
      if (subsumed || slot(t.p) == "?") break;
    }
    if (!subsumed) kept.push_back(t);
  }

  TriplestoreSchema out;
  int next = 0;
  for (const auto& t : kept) {
    TriplePattern renamed = t;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!t[i].is_variable()) continue;
      const std::string name = "v" + std::to_string(++next);
      if (schema.no_literal.count(t[i].lexical())) out.no_literal.insert(name);
      renamed[i] = Term::variable(name);
    }
    out.graph.insert(renamed);
  }
  for (const auto& e : schema.existentials) out.existentials.insert(canonical_existential(e));
  return out;
}

}  // namespace schemaforge
