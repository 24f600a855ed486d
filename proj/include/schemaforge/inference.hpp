#pragma once

#include <string>
#include <vector>

#include "schemaforge/limits.hpp"
#include "schemaforge/schema.hpp"
#include "schemaforge/term.hpp"

namespace schemaforge {

/// Datalog rule A -> C. Consequent variables must appear in the antecedent.
struct InferenceRule {
  GraphPattern antecedent;
  GraphPattern consequent;
  std::string name;

  /// Throws SchemaError on an ill-formed rule.
  void validate() const;

  bool operator==(const InferenceRule&) const = default;
};

using RuleSet = std::vector<InferenceRule>;

std::string to_string(const InferenceRule& r);

/// I plus every valid instantiation m(C), m in [[A]]_I.
Graph apply_rule(const InferenceRule& rule, const Graph& graph);

enum class ClosureStrategy { semi_naive, naive };

Graph closure(const Graph& graph, const RuleSet& rules,
              ClosureStrategy strategy = ClosureStrategy::semi_naive,
              const Limits* limits = nullptr);

/// Restricted chase: for every unsatisfied trigger of an existential rule,
/// add its consequent with the remaining variables replaced by fresh IRIs.
/// Consequents that would not be valid RDF are skipped. Throws
/// BudgetExceeded when the step bound is hit.
Graph chase_existentials(const Graph& graph, const std::set<ExistentialRule>& rules,
                         NameRegistry& names, const Limits& limits = {});

}  // namespace schemaforge
