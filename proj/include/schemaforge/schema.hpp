#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "schemaforge/term.hpp"

namespace schemaforge {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear single-atom existential rule a ->E c. Variables of c that do not
/// occur in a are existentially quantified.
struct ExistentialRule {
  TriplePattern antecedent;
  TriplePattern consequent;

  auto operator<=>(const ExistentialRule&) const = default;
  bool operator==(const ExistentialRule&) const = default;
};

std::string to_string(const ExistentialRule& e);

using NoLiteralSet = std::set<std::string>;

/// <schema graph, no-literal set, existential rules>.
///
/// Invariants (checked by validate()):
///  - every variable occurs at most once in the schema graph;
///  - the no-literal set only names schema-graph variables and contains every
///    subject- or predicate-position variable;
///  - patterns and existential rules are well-formed.
struct TriplestoreSchema {
  GraphPattern graph;
  NoLiteralSet no_literal;
  std::set<ExistentialRule> existentials;

  void validate() const;

  bool operator==(const TriplestoreSchema&) const = default;
};

struct Violation {
  Mapping mapping;
  ExistentialRule rule;

  auto operator<=>(const Violation&) const = default;
};

/// True iff some m with m(pattern) = triple binds no `no_literal` variable to
/// a literal.
bool triple_instantiates(const Triple& triple, const TriplePattern& pattern,
                         const NoLiteralSet& no_literal);

/// Graph part only: every triple instantiates some schema pattern.
bool conforms_to_graph(const Graph& graph, const TriplestoreSchema& schema);

bool is_instance(const Graph& graph, const TriplestoreSchema& schema);

std::vector<Violation> violations(const std::set<ExistentialRule>& rules, const Graph& graph);

/// Instance-set containment of the graph/no-literal parts (existential rules
/// ignored), decided on a finite set of representative triples.
bool schema_contains(const TriplestoreSchema& lhs, const TriplestoreSchema& rhs);

/// Containment both ways, plus existential rules equal as sets modulo
/// per-rule variable renaming.
bool schema_equivalent(const TriplestoreSchema& lhs, const TriplestoreSchema& rhs);

/// Positionwise, no-literal-aware pattern subsumption: every triple that
/// instantiates `specific` also instantiates `general`.
bool pattern_subsumed(const TriplePattern& specific, const NoLiteralSet& specific_delta,
                      const TriplePattern& general, const NoLiteralSet& general_delta);

/// Removes subsumed patterns and renames variables canonically (v1, v2, ...
/// in sorted pattern order). Idempotent; preserves the instance set.
TriplestoreSchema normalize_schema(const TriplestoreSchema& schema);

/// Renames the variables of an existential rule to x1, x2, ... in order of
/// first occurrence.
ExistentialRule canonical_existential(const ExistentialRule& e);

}  // namespace schemaforge
