#include "schemaforge/existential.hpp"

#include <map>
#include <optional>

namespace schemaforge {

namespace {

Term resolve(const Substitution& theta, Term t) {
  while (t.is_variable()) {
    auto it = theta.find(t.lexical());
    if (it == theta.end()) break;
    t = it->second;
  }
  return t;
}

std::optional<Substitution> unify(const TriplePattern& a, const TriplePattern& b) {
  Substitution theta;
  for (std::size_t i = 0; i < 3; ++i) {
    const Term x = resolve(theta, a[i]);
    const Term y = resolve(theta, b[i]);
    if (x == y) continue;
    if (x.is_variable())
      theta[x.lexical()] = y;
    else if (y.is_variable())
      theta[y.lexical()] = x;
    else
      return std::nullopt;
  }
  Substitution out;
  for (const auto& [v, t] : theta) out[v] = resolve(theta, t);
  return out;
}

InferenceRule rename_apart(const InferenceRule& r, NameRegistry& names) {
  Substitution fresh;
  for (const auto& v : vars_of(r.antecedent)) fresh.emplace(v, names.fresh_variable());
  for (const auto& v : vars_of(r.consequent))
    if (!fresh.count(v)) fresh.emplace(v, names.fresh_variable());
  return {apply_substitution(fresh, r.antecedent), apply_substitution(fresh, r.consequent), r.name};
}

Graph freeze(const GraphPattern& p) {
  Graph out;
  for (auto t : p) {
    for (std::size_t i = 0; i < 3; ++i)
      if (t[i].is_variable()) t[i] = Term::iri("urn:schemaforge:frozen:" + t[i].lexical());
    out.insert(t);
  }
  return out;
}

bool all_well_formed(const GraphPattern& p) {
  for (const auto& t : p)
    if (!is_well_formed(t)) return false;
  return true;
}

}  // namespace

bool maps_into(const GraphPattern& general, const GraphPattern& specific) {
  // Frozen variables of `specific` act as constants; only `general` binds.
  const Graph target = freeze(specific);
  const TripleIndex index(target);
  return !evaluate_bgp(general, index).empty();
}

std::vector<Rewriting> rewrite_antecedents(const InferenceRule& rule, const RuleSet& rules,
                                           Context& ctx) {
  std::vector<Rewriting> out{{rule.antecedent, rule.name, 0}};
  std::vector<std::size_t> frontier{0};
  for (std::size_t depth = 1; !frontier.empty(); ++depth) {
    ctx.limits.check_deadline();
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const GraphPattern current = out[idx].antecedent;
      for (const auto& t : current) {
        for (const auto& candidate : rules) {
          bool relevant = false;
          for (const auto& c : candidate.consequent)
            relevant = relevant || t.p.is_variable() || c.p.is_variable() || t.p == c.p;
          if (!relevant) continue;
          const InferenceRule r = rename_apart(candidate, ctx.names);
          for (const auto& c : r.consequent) {
            auto theta = unify(t, c);
            if (!theta) continue;
            GraphPattern rewritten;
            for (const auto& u : current)
              if (u != t) rewritten.insert(apply_substitution(*theta, u));
            for (const auto& u : r.antecedent) rewritten.insert(apply_substitution(*theta, u));
            if (!all_well_formed(rewritten)) continue;
            bool subsumed = false;
            for (const auto& existing : out) {
              if (maps_into(existing.antecedent, rewritten)) {
                subsumed = true;
                break;
              }
            }
            if (subsumed) continue;
            if (depth > ctx.limits.rewrite_depth)
              throw BudgetExceeded("rewriting of rule " + rule.name +
                                   " did not converge within depth " +
                                   std::to_string(ctx.limits.rewrite_depth));
            out.push_back({std::move(rewritten), rule.name, depth});
            next.push_back(out.size() - 1);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

bool has_variable_predicate(const GraphPattern& g) {
  for (const auto& t : g)
    if (t.p.is_variable()) return true;
  return false;
}

struct Candidate {
  Graph instance;  // chased grounding
  Graph closed;
  const Rewriting* rewriting;
};

class CandidateCache {
 public:
  CandidateCache(const TriplestoreSchema& schema, const RuleSet& rules, Context& ctx)
      : schema_(schema), rules_(rules), ctx_(ctx) {
    sandbox_ = TripleIndex(build_sandbox(schema.graph, ctx.lambda()));
    drop_ = !has_variable_predicate(schema.graph);
  }

  const std::vector<Candidate>& for_rule(std::size_t i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    auto& slot = cache_[i];
    rewritings_[i] = rewrite_antecedents(rules_[i], rules_, ctx_);
    const Term& lambda = ctx_.lambda();
    for (const auto& w : rewritings_[i]) {
      const auto q = build_lambda_rewriting(w.antecedent, lambda, drop_);
      for (const auto& m : evaluate_union_query(q, sandbox_, &ctx_.limits)) {
        ctx_.limits.check_deadline();
        Substitution ground;
        for (const auto& [v, value] : m)
          ground.emplace(v, value == lambda ? ctx_.names.fresh_iri() : value);
        Graph g;
        bool valid = true;
        for (const auto& t : w.antecedent) {
          Triple x = apply_substitution(ground, t);
          if (!is_valid_triple(x)) valid = false;
          g.insert(x);
        }
        if (!valid) continue;
        Graph chased = chase_existentials(g, schema_.existentials, ctx_.names, ctx_.limits);
        if (!is_instance(chased, schema_)) continue;
        Graph closed = closure(chased, rules_, ClosureStrategy::semi_naive, &ctx_.limits);
        slot.push_back({std::move(chased), std::move(closed), &w});
      }
    }
    return slot;
  }

 private:
  const TriplestoreSchema& schema_;
  const RuleSet& rules_;
  Context& ctx_;
  TripleIndex sandbox_;
  bool drop_ = true;
  std::map<std::size_t, std::vector<Rewriting>> rewritings_;
  std::map<std::size_t, std::vector<Candidate>> cache_;
};

}  // namespace

ExistentialReport retained_existentials(const TriplestoreSchema& schema, const RuleSet& rules,
                                        Context& ctx) {
  ExistentialReport report;
  CandidateCache cache(schema, rules, ctx);
  const Term& lambda = ctx.lambda();
  std::vector<TripleIndex> consequent_sandboxes;
  for (const auto& r : rules) consequent_sandboxes.emplace_back(build_sandbox(r.consequent, lambda));

  for (const auto& e : schema.existentials) {
    const auto trigger = build_lambda_rewriting(GraphPattern{e.antecedent}, lambda, true);
    std::optional<ViolationWitness> witness;
    for (std::size_t i = 0; i < rules.size() && !witness; ++i) {
      if (evaluate_union_query(trigger, consequent_sandboxes[i], &ctx.limits).empty()) continue;
      for (const auto& c : cache.for_rule(i)) {
        if (violations({e}, c.closed).empty()) continue;
        witness = ViolationWitness{e, c.instance, rule_label(rules, i), c.rewriting->antecedent};
        break;
      }
    }
    if (witness)
      report.violated.push_back(std::move(*witness));
    else
      report.retained.insert(e);
  }
  return report;
}

ExistentialConsequence existential_schema_consequence(const TriplestoreSchema& schema,
                                                      const RuleSet& rules, Algorithm mode,
                                                      Context& ctx) {
  ExistentialConsequence out;
  auto simple = simple_schema_consequence(schema, rules, mode, ctx);
  out.report = retained_existentials(schema, rules, ctx);
  out.schema = std::move(simple.schema);
  out.schema.existentials = out.report.retained;
  out.applicable = std::move(simple.applicable);
  out.rounds = simple.rounds;
  return out;
}

}  // namespace schemaforge
