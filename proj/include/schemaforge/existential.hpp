#pragma once

#include <set>
#include <string>
#include <vector>

#include "schemaforge/consequence.hpp"

namespace schemaforge {

struct Rewriting {
  GraphPattern antecedent;
  std::string source_rule;
  std::size_t depth = 0;
};

/// The antecedent of `rule` plus every pattern reachable by backward
/// chaining through the consequents of `rules` (most general unifiers,
/// rules renamed apart). Rewritings into which an earlier one maps
/// homomorphically are pruned. Throws BudgetExceeded if new rewritings still
/// appear at the depth bound.
std::vector<Rewriting> rewrite_antecedents(const InferenceRule& rule, const RuleSet& rules,
                                           Context& ctx);

/// True iff some h with h(general) a subset of `specific` (constants fixed).
bool maps_into(const GraphPattern& general, const GraphPattern& specific);

struct ViolationWitness {
  ExistentialRule rule;
  /// Instance of the input schema (after chasing) whose closure violates `rule`.
  Graph instance;
  std::string trigger_rule;
  GraphPattern rewriting;
};

struct ExistentialReport {
  std::set<ExistentialRule> retained;
  std::vector<ViolationWitness> violated;
};

ExistentialReport retained_existentials(const TriplestoreSchema& schema, const RuleSet& rules,
                                        Context& ctx);

struct ExistentialConsequence {
  TriplestoreSchema schema;
  ExistentialReport report;
  std::set<std::string> applicable;
  std::size_t rounds = 0;
};

ExistentialConsequence existential_schema_consequence(const TriplestoreSchema& schema,
                                                      const RuleSet& rules, Algorithm mode,
                                                      Context& ctx);

}  // namespace schemaforge
