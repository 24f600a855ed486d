#pragma once

#include <string>
#include <vector>

#include "schemaforge/generator.hpp"
#include "schemaforge/schema.hpp"

namespace sf_test {

using namespace schemaforge;

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
  bool ok() const { return cases > 0 && failures == 0; }
};

/// score and critical basic consequences agree, one rule at a time.
PropertyResult agreement_suite(int seeds, double variable_predicate_p = 0.0);

/// Both inclusions between rule applications on small instances and the
/// score consequence, checked by enumeration.
PropertyResult enumeration_suite(int seeds);

/// Hand-written and generated constant-predicate schemas.
std::vector<TriplestoreSchema> shacl_corpus();
PropertyResult shacl_round_trip(const std::vector<TriplestoreSchema>& corpus);

PropertyResult bgp_oracle_suite(int rounds);
PropertyResult closure_suite(int rounds);
PropertyResult chase_suite(int rounds);

}  // namespace sf_test
