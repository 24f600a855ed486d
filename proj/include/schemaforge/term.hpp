#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

namespace schemaforge {

enum class TermKind : std::uint8_t { iri, literal, variable };

/// An RDF term or a query variable. Literals carry their lexical form only
/// (no datatype or language tag); variables carry their name without '?'.
class Term {
 public:
  Term() = default;

  static Term iri(std::string lexical) { return Term(TermKind::iri, std::move(lexical)); }
  static Term literal(std::string lexical) { return Term(TermKind::literal, std::move(lexical)); }
  static Term variable(std::string name) { return Term(TermKind::variable, std::move(name)); }

  TermKind kind() const { return kind_; }
  const std::string& lexical() const { return lexical_; }

  bool is_iri() const { return kind_ == TermKind::iri; }
  bool is_literal() const { return kind_ == TermKind::literal; }
  bool is_variable() const { return kind_ == TermKind::variable; }
  bool is_constant() const { return kind_ != TermKind::variable; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  Term(TermKind kind, std::string lexical);

  TermKind kind_ = TermKind::iri;
  std::string lexical_;
};

/// Debug rendering: `<iri>`-free compact form, `"lit"`, `?var`.
std::string to_string(const Term& term);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept {
    return std::hash<std::string>{}(t.lexical()) * 3u + static_cast<std::size_t>(t.kind());
  }
};

/// A triple pattern; also used for ground triples (see is_valid_triple).
struct TriplePattern {
  Term s, p, o;

  const Term& operator[](std::size_t i) const { return i == 0 ? s : (i == 1 ? p : o); }
  Term& operator[](std::size_t i) { return i == 0 ? s : (i == 1 ? p : o); }

  bool is_ground() const { return s.is_constant() && p.is_constant() && o.is_constant(); }

  auto operator<=>(const TriplePattern&) const = default;
  bool operator==(const TriplePattern&) const = default;
};

using Triple = TriplePattern;

std::string to_string(const TriplePattern& t);

struct TripleHash {
  std::size_t operator()(const TriplePattern& t) const noexcept {
    TermHash h;
    std::size_t seed = h(t.s);
    seed ^= h(t.p) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= h(t.o) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

using GraphPattern = std::set<TriplePattern>;
using Graph = std::set<Triple>;

/// Variable name -> constant. std::map keeps iteration sorted by name.
using Mapping = std::map<std::string, Term>;
/// Variable name -> any term (targets may be variables).
using Substitution = std::map<std::string, Term>;

std::string to_string(const Mapping& m);

/// Pattern well-formedness: (IRI|var) x (IRI|var) x (IRI|literal|var).
bool is_well_formed(const TriplePattern& t);
/// Ground triple in IRI x IRI x (IRI|literal).
bool is_valid_triple(const TriplePattern& t);
bool is_valid_rdf_graph(const GraphPattern& g);

Term apply_substitution(const Substitution& subst, const Term& term);
TriplePattern apply_substitution(const Substitution& subst, const TriplePattern& t);
GraphPattern apply_substitution(const Substitution& subst, const GraphPattern& pattern);

struct VarsAndConsts {
  std::set<std::string> vars;
  std::set<Term> consts;
};

VarsAndConsts vars_and_consts(const GraphPattern& p);
void collect_vars(const TriplePattern& t, std::set<std::string>& out);
std::set<std::string> vars_of(const TriplePattern& t);
std::set<std::string> vars_of(const GraphPattern& p);

/// Issues fresh variable names and IRIs that never collide with anything the
/// registry has observed. The sequence is deterministic given the same
/// observations, so outputs are byte-stable across runs. Not thread-safe.
class NameRegistry {
 public:
  void observe(const Term& t);
  void observe(const TriplePattern& t);
  void observe(const GraphPattern& p);

  Term fresh(TermKind kind);
  Term fresh_variable() { return fresh(TermKind::variable); }
  Term fresh_iri() { return fresh(TermKind::iri); }
  Term fresh_literal() { return fresh(TermKind::literal); }

  /// The reserved placeholder IRI used by canonical instances. Chosen on
  /// first call to be absent from everything observed so far; callers must
  /// observe all inputs first.
  const Term& lambda();

 private:
  bool taken(const Term& t) const;

  std::unordered_set<Term, TermHash> seen_;
  std::array<std::uint64_t, 3> counters_{};
  Term lambda_;
  bool has_lambda_ = false;
};

}  // namespace schemaforge
