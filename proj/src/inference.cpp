#include "schemaforge/inference.hpp"

#include "schemaforge/pattern_eval.hpp"

namespace schemaforge {

void InferenceRule::validate() const {
  const std::string label = name.empty() ? std::string("rule") : "rule " + name;
  for (const auto& t : antecedent)
    if (!is_well_formed(t)) throw SchemaError(label + ": ill-formed antecedent " + to_string(t));
  const auto bound = vars_of(antecedent);
  for (const auto& t : consequent) {
    if (!is_well_formed(t)) throw SchemaError(label + ": ill-formed consequent " + to_string(t));
    if (t.p.is_variable())
      throw SchemaError(label + ": consequent predicate must be a constant in " + to_string(t));
    if (t.s.is_variable() && t.s == t.o)
      throw SchemaError(label + ": same variable in subject and object of " + to_string(t));
    for (const auto& v : vars_of(t))
      if (!bound.count(v)) throw SchemaError(label + ": consequent variable ?" + v + " is unbound");
  }
}

std::string to_string(const InferenceRule& r) {
  std::string out = r.name.empty() ? std::string() : r.name + ": ";
  auto list = [](const GraphPattern& g) {
    std::string s = "{";
    bool first = true;
    for (const auto& t : g) {
      s += first ? " " : ", ";
      s += to_string(t);
      first = false;
    }
    return s + " }";
  };
  return out + list(r.antecedent) + " -> " + list(r.consequent);
}

namespace {

// Adds m(C) to `out` when it is a valid RDF graph.
template <typename Sink>
void instantiate(const GraphPattern& consequent, const Mapping& m, Sink&& sink) {
  std::vector<Triple> produced;
  produced.reserve(consequent.size());
  for (const auto& t : consequent) {
    Triple g = apply_substitution(m, t);
    if (!is_valid_triple(g)) return;
    produced.push_back(std::move(g));
  }
  for (auto& t : produced) sink(t);
}

Graph naive_closure(const Graph& graph, const RuleSet& rules, const Limits* limits) {
  Graph current = graph;
  for (;;) {
    if (limits) limits->check_deadline();
    Graph next = current;
    for (const auto& r : rules) {
      for (const auto& m : evaluate_bgp(r.antecedent, current, limits))
        instantiate(r.consequent, m, [&](const Triple& t) { next.insert(t); });
    }
    if (next.size() == current.size()) return current;
    current = std::move(next);
  }
}

// Matches of `rule` that use at least one triple of `delta`.
void delta_matches(const InferenceRule& rule, const TripleIndex& full, const TripleIndex& delta,
                   const Limits* limits, std::vector<Triple>& out) {
  const std::vector<TriplePattern> body(rule.antecedent.begin(), rule.antecedent.end());
  for (std::size_t j = 0; j < body.size(); ++j) {
    const Mapping empty;
    const auto* cands = delta.candidates(body[j], empty);
    for (std::uint32_t idx : *cands) {
      Mapping seed;
      std::vector<std::string> added;
      if (!match_triple(body[j], delta.triples()[idx], seed, added)) continue;
      GraphPattern rest;
      for (std::size_t k = 0; k < body.size(); ++k)
        if (k != j) rest.insert(apply_substitution(seed, body[k]));
      for (const auto& m : evaluate_bgp(rest, full, limits)) {
        Mapping total = seed;
        total.insert(m.begin(), m.end());
        instantiate(rule.consequent, total, [&](const Triple& t) { out.push_back(t); });
      }
    }
  }
}

Graph semi_naive_closure(const Graph& graph, const RuleSet& rules, const Limits* limits) {
  TripleIndex full(graph);
  // Rules with an empty antecedent fire once.
  std::vector<Triple> produced;
  for (const auto& r : rules)
    if (r.antecedent.empty())
      instantiate(r.consequent, Mapping{}, [&](const Triple& t) { produced.push_back(t); });
  TripleIndex delta(graph);
  for (const auto& t : produced)
    if (full.insert(t)) delta.insert(t);

  while (delta.size() > 0) {
    if (limits) limits->check_deadline();
    produced.clear();
    for (const auto& r : rules)
      if (!r.antecedent.empty()) delta_matches(r, full, delta, limits, produced);
    TripleIndex next;
    for (const auto& t : produced)
      if (full.insert(t)) next.insert(t);
    delta = std::move(next);
  }
  return full.to_graph();
}

}  // namespace

Graph apply_rule(const InferenceRule& rule, const Graph& graph) {
  Graph out = graph;
  for (const auto& m : evaluate_bgp(rule.antecedent, graph))
    instantiate(rule.consequent, m, [&](const Triple& t) { out.insert(t); });
  return out;
}

Graph closure(const Graph& graph, const RuleSet& rules, ClosureStrategy strategy,
              const Limits* limits) {
  if (strategy == ClosureStrategy::naive) return naive_closure(graph, rules, limits);
  return semi_naive_closure(graph, rules, limits);
}

Graph chase_existentials(const Graph& graph, const std::set<ExistentialRule>& rules,
                         NameRegistry& names, const Limits& limits) {
  names.observe(GraphPattern(graph.begin(), graph.end()));
  TripleIndex index(graph);
  std::size_t bound = limits.chase_step_bound;
  if (bound == 0) {
    const std::size_t n = graph.size() + rules.size();
    bound = 10 * n * n;
  }
  std::size_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    limits.check_deadline();
    for (const auto& e : rules) {
      for (const auto& m : evaluate_bgp(GraphPattern{e.antecedent}, index)) {
        const TriplePattern wanted = apply_substitution(m, e.consequent);
        if (!evaluate_bgp(GraphPattern{wanted}, index).empty()) continue;
        Substitution g;
        for (const auto& v : vars_of(wanted)) g.emplace(v, names.fresh_iri());
        const Triple added = apply_substitution(g, wanted);
        if (!is_valid_triple(added)) continue;
        if (++steps > bound)
          throw BudgetExceeded("chase did not reach a fixpoint within " + std::to_string(bound) +
                               " steps; existential rules may not be weakly acyclic");
        index.insert(added);
        changed = true;
      }
    }
  }
  return index.to_graph();
}

}  // namespace schemaforge
