#include "schemaforge/term.hpp"

#include <stdexcept>

namespace schemaforge {

Term::Term(TermKind kind, std::string lexical) : kind_(kind), lexical_(std::move(lexical)) {
  if (lexical_.empty()) throw std::invalid_argument("term with empty lexical form");
}

std::string to_string(const Term& term) {
  switch (term.kind()) {
    case TermKind::variable:
      return "?" + term.lexical();
    case TermKind::literal:
      return "\"" + term.lexical() + "\"";
    case TermKind::iri:
      break;
  }
  return term.lexical();
}

std::string to_string(const TriplePattern& t) {
  return "<" + to_string(t.s) + " " + to_string(t.p) + " " + to_string(t.o) + ">";
}

std::string to_string(const Mapping& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : m) {
    if (!first) out += ", ";
    first = false;
    out += "?" + name + "->" + to_string(value);
  }
  return out + "}";
}

bool is_well_formed(const TriplePattern& t) {
  return !t.s.is_literal() && !t.p.is_literal();
}

bool is_valid_triple(const TriplePattern& t) {
  return t.s.is_iri() && t.p.is_iri() && t.o.is_constant();
}

bool is_valid_rdf_graph(const GraphPattern& g) {
  for (const auto& t : g)
    if (!is_valid_triple(t)) return false;
  return true;
}

Term apply_substitution(const Substitution& subst, const Term& term) {
  if (!term.is_variable()) return term;
  auto it = subst.find(term.lexical());
  return it == subst.end() ? term : it->second;
}

TriplePattern apply_substitution(const Substitution& subst, const TriplePattern& t) {
  return {apply_substitution(subst, t.s), apply_substitution(subst, t.p),
          apply_substitution(subst, t.o)};
}

GraphPattern apply_substitution(const Substitution& subst, const GraphPattern& pattern) {
  GraphPattern out;
  for (const auto& t : pattern) out.insert(apply_substitution(subst, t));
  return out;
}

void collect_vars(const TriplePattern& t, std::set<std::string>& out) {
  for (std::size_t i = 0; i < 3; ++i)
    if (t[i].is_variable()) out.insert(t[i].lexical());
}

std::set<std::string> vars_of(const TriplePattern& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> vars_of(const GraphPattern& p) {
  std::set<std::string> out;
  for (const auto& t : p) collect_vars(t, out);
  return out;
}

VarsAndConsts vars_and_consts(const GraphPattern& p) {
  VarsAndConsts out;
  for (const auto& t : p) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (t[i].is_variable())
        out.vars.insert(t[i].lexical());
      else
        out.consts.insert(t[i]);
    }
  }
  return out;
}

void NameRegistry::observe(const Term& t) { seen_.insert(t); }

void NameRegistry::observe(const TriplePattern& t) {
  observe(t.s);
  observe(t.p);
  observe(t.o);
}

void NameRegistry::observe(const GraphPattern& p) {
  for (const auto& t : p) observe(t);
}

bool NameRegistry::taken(const Term& t) const {
  if (seen_.count(t)) return true;
  return has_lambda_ && t == lambda_;
}

Term NameRegistry::fresh(TermKind kind) {
  auto& counter = counters_[static_cast<std::size_t>(kind)];
  for (;;) {
    const std::string n = std::to_string(++counter);
    Term candidate;
    switch (kind) {
      case TermKind::variable:
        candidate = Term::variable("f" + n);
        break;
      case TermKind::iri:
        candidate = Term::iri("urn:schemaforge:fresh:" + n);
        break;
      case TermKind::literal:
        candidate = Term::literal("fresh-" + n);
        break;
    }
    if (!taken(candidate)) {
      seen_.insert(candidate);
      return candidate;
    }
  }
}

const Term& NameRegistry::lambda() {
  if (!has_lambda_) {
    Term candidate = Term::iri("urn:schemaforge:lambda");
    for (int i = 1; seen_.count(candidate); ++i)
      candidate = Term::iri("urn:schemaforge:lambda:" + std::to_string(i));
    lambda_ = candidate;
    has_lambda_ = true;
  }
  return lambda_;
}

}  // namespace schemaforge
