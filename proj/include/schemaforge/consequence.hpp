#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schemaforge/inference.hpp"
#include "schemaforge/limits.hpp"
#include "schemaforge/pattern_eval.hpp"
#include "schemaforge/schema.hpp"

namespace schemaforge {

enum class Algorithm { score, critical };

std::string_view to_string(Algorithm a);

/// Per-run mutable state: fresh-name source and resource limits. Build it
/// with make_context so that the placeholder IRI avoids every input name.
struct Context {
  NameRegistry names;
  Limits limits;

  const Term& lambda() { return names.lambda(); }
};

Context make_context(const TriplestoreSchema& schema, const RuleSet& rules, Limits limits = {});

/// Every schema variable replaced by `lambda`.
Graph build_sandbox(const GraphPattern& schema_graph, const Term& lambda);

/// Every schema variable replaced by every constant of the schema graph and
/// the rule plus `lambda`; literals only in object position of
/// literal-permitting variables. Throws BudgetExceeded above the triple budget.
Graph build_critical(const TriplestoreSchema& schema, const InferenceRule& rule,
                     const Term& lambda, const Limits& limits = {});

/// Schema patterns that produce `t` in the canonical instance of `mode`.
std::vector<TriplePattern> find_origin_patterns(const Triple& t, const TriplestoreSchema& schema,
                                                const Term& lambda, Algorithm mode);

struct FilteredMapping {
  Mapping mapping;
  std::set<std::string> temp_no_literal;

  bool operator==(const FilteredMapping&) const = default;
};

/// Returns nullopt when the mapping must be disregarded.
std::optional<FilteredMapping> filter_and_annotate(const Mapping& m, const InferenceRule& rule,
                                                   const TriplestoreSchema& schema,
                                                   Algorithm mode, const Term& lambda);

/// Adds the instantiated consequent to `target`, replacing each occurrence
/// of a lambda binding by its own fresh variable. Patterns already present
/// up to renaming are skipped.
void expand_schema(TriplestoreSchema& target, const FilteredMapping& fm,
                   const GraphPattern& consequent, const Term& lambda, NameRegistry& names);

struct BasicConsequence {
  TriplestoreSchema schema;
  bool applicable = false;
  std::size_t surviving_mappings = 0;
};

BasicConsequence basic_consequence(const TriplestoreSchema& schema, const InferenceRule& rule,
                                   Algorithm mode, Context& ctx);

struct SimpleConsequence {
  TriplestoreSchema schema;
  std::set<std::string> applicable;
  std::size_t rounds = 0;
};

/// Fixpoint of basic_consequence over all rules. Each round applies every
/// rule to the schema as it stood at the start of the round.
SimpleConsequence simple_schema_consequence(const TriplestoreSchema& schema,
                                            const RuleSet& rules, Algorithm mode, Context& ctx);

std::set<std::string> applicable_rules(const TriplestoreSchema& schema, const RuleSet& rules,
                                       Context& ctx);

/// Name used in reports; falls back to the rule's position.
std::string rule_label(const RuleSet& rules, std::size_t index);

}  // namespace schemaforge
