#pragma once

#include <stdexcept>
#include <string>

#include "schemaforge/schema.hpp"
#include "schemaforge/term.hpp"

namespace schemaforge {

class UnsupportedShape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A SHACL document is kept as its RDF graph.
using ShapeDocument = Graph;

/// Closed-vocabulary translation. Triples of each vocabulary predicate are
/// kept when every targeted shape accepts them in isolation; minCount 1,
/// property hasValue and sh:class at shape level become existential rules.
/// Throws UnsupportedShape for anything outside the handled fragment.
TriplestoreSchema shacl_to_schema(const ShapeDocument& doc);

/// Existential rules as shapes, then the per-predicate shapes of the
/// schema graph, then a closed declaration listing the vocabulary.
ShapeDocument schema_to_shacl(const TriplestoreSchema& schema);

/// e << e': equal, or e' a literal-permitting variable, or e an IRI and e' a
/// variable.
bool subsumes(const Term& e, const Term& e_prime, const NoLiteralSet& no_literal);

/// Patterns whose instances are exactly the common instances of the two
/// single-predicate pattern sets (positionwise meet of every pair).
TriplestoreSchema schema_intersection(const TriplestoreSchema& a, const TriplestoreSchema& b);

/// Reference checker with standard SHACL semantics for the same fragment,
/// plus the closed-vocabulary condition.
bool shacl_conforms(const Graph& data, const ShapeDocument& doc);

}  // namespace schemaforge
