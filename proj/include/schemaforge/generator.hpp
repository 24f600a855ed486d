#pragma once

#include <cstdint>

#include "schemaforge/inference.hpp"
#include "schemaforge/schema.hpp"

namespace schemaforge {

struct GeneratorConfig {
  double pi_c = 0.1;
  int p_count = 15;
  int u_count = 10;
  int l_count = 10;
  int schema_size = 10;
  int rule_count = 4;
  int existential_count = 0;
  int antecedent_len = 2;
  std::uint64_t seed = 1;
  /// Test-only: probability that a random schema pattern gets a variable
  /// predicate. The benchmark generator never does this.
  double variable_predicate_p = 0.0;
};

struct Generated {
  TriplestoreSchema schema;
  RuleSet rules;
};

/// Synthetic chain rules and a schema half seeded from their antecedents.
/// Deterministic in the config. Duplicate patterns/rules are redrawn a
/// bounded number of times, so counts can fall short on tiny vocabularies.
Generated generate(const GeneratorConfig& config);

}  // namespace schemaforge
