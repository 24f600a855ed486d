#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "schemaforge/limits.hpp"
#include "schemaforge/term.hpp"

namespace schemaforge {

/// In-memory triple store with one hash index per position. Insertion-only;
/// references into the store stay valid.
class TripleIndex {
 public:
  TripleIndex() = default;
  explicit TripleIndex(const Graph& g);

  /// Returns false if the triple was already present.
  bool insert(const Triple& t);
  bool contains(const Triple& t) const { return members_.count(t) != 0; }
  std::size_t size() const { return triples_.size(); }

  const std::deque<Triple>& triples() const { return triples_; }

  /// Indices of triples that may match `pattern` under `binding`: the
  /// shortest posting list over bound positions, or everything.
  const std::vector<std::uint32_t>* candidates(const TriplePattern& pattern,
                                               const Mapping& binding) const;

  Graph to_graph() const { return Graph(triples_.begin(), triples_.end()); }

 private:
  std::deque<Triple> triples_;
  std::unordered_set<Triple, TripleHash> members_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_position_[3];
  std::vector<std::uint32_t> all_;
};

/// Extends `binding` so that binding(pattern) == triple. On failure the
/// binding is left unchanged. Newly bound names are appended to `added`.
bool match_triple(const TriplePattern& pattern, const Triple& triple, Mapping& binding,
                  std::vector<std::string>& added);

/// All mappings m with dom(m) = vars(pattern) and m(pattern) in the graph.
std::set<Mapping> evaluate_bgp(const GraphPattern& pattern, const Graph& graph,
                               const Limits* limits = nullptr);
std::set<Mapping> evaluate_bgp(const GraphPattern& pattern, const TripleIndex& index,
                               const Limits* limits = nullptr);

/// Conjunction of disjunctions: one entry per source triple, each entry the
/// set of alternatives that replace some positions with the placeholder IRI.
struct UnionQuery {
  GraphPattern source;
  std::vector<TriplePattern> source_triples;
  std::vector<std::vector<TriplePattern>> disjunct_lists;
};

/// Q(A): each triple expands into every variant obtained by substituting any
/// subset of its positions with `lambda`. With `drop_lambda_predicate`,
/// variants with `lambda` in predicate position are omitted (valid when no
/// schema pattern has a variable predicate).
UnionQuery build_lambda_rewriting(const GraphPattern& antecedent, const Term& lambda,
                                  bool drop_lambda_predicate = false);

/// All alternatives of a single triple, in the same order as the rewriting.
std::vector<TriplePattern> lambda_variants(const TriplePattern& t, const Term& lambda,
                                           bool drop_lambda_predicate);

/// Union of the conjunctive queries in `q`, keeping only mappings that bind
/// every variable of the source pattern.
std::set<Mapping> evaluate_union_query(const UnionQuery& q, const TripleIndex& index,
                                       const Limits* limits = nullptr);
std::set<Mapping> evaluate_union_query(const UnionQuery& q, const Graph& graph,
                                       const Limits* limits = nullptr);

}  // namespace schemaforge
