#include "schemaforge/consequence.hpp"

#include <unordered_map>

namespace schemaforge {

std::string_view to_string(Algorithm a) { return a == Algorithm::score ? "score" : "critical"; }

Context make_context(const TriplestoreSchema& schema, const RuleSet& rules, Limits limits) {
  Context ctx;
  ctx.limits = limits;
  ctx.names.observe(schema.graph);
  for (const auto& e : schema.existentials) {
    ctx.names.observe(e.antecedent);
    ctx.names.observe(e.consequent);
  }
  for (const auto& r : rules) {
    ctx.names.observe(r.antecedent);
    ctx.names.observe(r.consequent);
  }
  ctx.names.lambda();
  return ctx;
}

std::string rule_label(const RuleSet& rules, std::size_t index) {
  const auto& name = rules.at(index).name;
  return name.empty() ? "r" + std::to_string(index + 1) : name;
}

Graph build_sandbox(const GraphPattern& schema_graph, const Term& lambda) {
  Graph out;
  for (const auto& t : schema_graph) {
    Triple g = t;
    for (std::size_t i = 0; i < 3; ++i)
      if (g[i].is_variable()) g[i] = lambda;
    out.insert(g);
  }
  return out;
}

Graph build_critical(const TriplestoreSchema& schema, const InferenceRule& rule,
                     const Term& lambda, const Limits& limits) {
  std::set<Term> consts = vars_and_consts(schema.graph).consts;
  for (const auto& c : vars_and_consts(rule.antecedent).consts) consts.insert(c);
  // Consequent constants too: harmless for soundness and they make the
  // instance cover triples such as <lambda, p, k> for a consequent class k.
  for (const auto& c : vars_and_consts(rule.consequent).consts) consts.insert(c);
  consts.insert(lambda);
  std::vector<Term> iris, literals;
  for (const auto& c : consts) (c.is_iri() ? iris : literals).push_back(c);

  auto options = [&](const TriplePattern& t, std::size_t i) -> std::vector<Term> {
    if (!t[i].is_variable()) return {t[i]};
    if (i == 2 && !schema.no_literal.count(t[i].lexical())) {
      std::vector<Term> all = iris;
      all.insert(all.end(), literals.begin(), literals.end());
      return all;
    }
    return iris;
  };

  // Size check before materializing anything.
  double expected = 0;
  for (const auto& t : schema.graph) {
    double n = 1;
    for (std::size_t i = 0; i < 3; ++i) n *= static_cast<double>(options(t, i).size());
    expected += n;
  }
  if (expected > static_cast<double>(limits.critical_triple_budget))
    throw BudgetExceeded("critical instance would hold about " +
                         std::to_string(static_cast<long long>(expected)) +
                         " triples, above the budget of " +
                         std::to_string(limits.critical_triple_budget));

  Graph out;
  DeadlineTicker ticker(&limits);
  for (const auto& t : schema.graph) {
    const auto s = options(t, 0), p = options(t, 1), o = options(t, 2);
    for (const auto& a : s)
      for (const auto& b : p)
        for (const auto& c : o) {
          ticker.tick();
          out.insert(Triple{a, b, c});
        }
  }
  return out;
}

namespace {

bool produces(const Term& pattern_term, const Term& value, std::size_t i,
              const NoLiteralSet& delta, const Term& lambda, Algorithm mode) {
  if (!pattern_term.is_variable()) return pattern_term == value;
  if (value == lambda) return true;
  if (mode == Algorithm::score) return false;
  if (value.is_iri()) return true;
  return i == 2 && value.is_literal() && !delta.count(pattern_term.lexical());
}

struct OriginSummary {
  // Some origin has a literal-permitting variable in object position.
  bool literal_variable = false;
  // Some origin has a constant object (necessarily equal to the triple's).
  bool constant_object = false;
};

class OriginIndex {
 public:
  OriginIndex(const TriplestoreSchema& schema, const Term& lambda, Algorithm mode)
      : schema_(schema), lambda_(lambda), mode_(mode) {
    for (const auto& t : schema.graph) {
      if (t.p.is_variable())
        variable_predicate_.push_back(&t);
      else
        by_predicate_[t.p].push_back(&t);
    }
  }

  std::vector<const TriplePattern*> origins(const Triple& t) const {
    std::vector<const TriplePattern*> out;
    auto visit = [&](const TriplePattern* p) {
      for (std::size_t i = 0; i < 3; ++i)
        if (!produces((*p)[i], t[i], i, schema_.no_literal, lambda_, mode_)) return;
      out.push_back(p);
    };
    if (auto it = by_predicate_.find(t.p); it != by_predicate_.end())
      for (const auto* p : it->second) visit(p);
    for (const auto* p : variable_predicate_) visit(p);
    return out;
  }

  const OriginSummary& summary(const Triple& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    OriginSummary s;
    for (const auto* p : origins(t)) {
      if (p->o.is_variable()) {
        if (!schema_.no_literal.count(p->o.lexical())) s.literal_variable = true;
      } else {
        s.constant_object = true;
      }
    }
    return cache_.emplace(t, s).first->second;
  }

 private:
  const TriplestoreSchema& schema_;
  const Term& lambda_;
  Algorithm mode_;
  std::unordered_map<Term, std::vector<const TriplePattern*>, TermHash> by_predicate_;
  std::vector<const TriplePattern*> variable_predicate_;
  std::unordered_map<Triple, OriginSummary, TripleHash> cache_;
};

bool has_variable_predicate(const GraphPattern& g) {
  for (const auto& t : g)
    if (t.p.is_variable()) return true;
  return false;
}

std::set<std::string> seed_no_literal(const InferenceRule& rule) {
  std::set<std::string> out;
  auto visit = [&](const GraphPattern& g) {
    for (const auto& t : g)
      for (std::size_t i = 0; i < 2; ++i)
        if (t[i].is_variable()) out.insert(t[i].lexical());
  };
  visit(rule.antecedent);
  visit(rule.consequent);
  return out;
}

class Filter {
 public:
  Filter(const InferenceRule& rule, const TriplestoreSchema& schema, Algorithm mode,
         const Term& lambda, const TripleIndex& canonical)
      : rule_(rule),
        mode_(mode),
        lambda_(lambda),
        canonical_(canonical),
        origins_(schema, lambda, mode),
        seed_(seed_no_literal(rule)) {
    const bool drop = !has_variable_predicate(schema.graph);
    for (const auto& t : rule.antecedent) {
      if (mode == Algorithm::critical)
        variants_.push_back({t});
      else
        variants_.push_back(lambda_variants(t, lambda, drop));
      sources_.push_back(t);
    }
  }

  std::optional<FilteredMapping> operator()(const Mapping& m) {
    FilteredMapping fm{m, seed_};
    for (std::size_t k = 0; k < sources_.size(); ++k) {
      const Term& object = sources_[k].o;
      const Term value = object.is_variable() ? m.at(object.lexical()) : object;
      if (!value.is_literal() && value != lambda_) continue;
      bool literal_variable = false, literal_match = false;
      for (const auto& tq : variants_[k]) {
        const Triple x = apply_substitution(m, tq);
        if (!canonical_.contains(x)) continue;
        const auto& s = origins_.summary(x);
        literal_variable = literal_variable || s.literal_variable;
        if (value.is_literal() && x.o == value && s.constant_object) literal_match = true;
      }
      if (value.is_literal()) {
        if (!literal_variable && !literal_match) return std::nullopt;
      } else if (object.is_variable() && !literal_variable) {
        fm.temp_no_literal.insert(object.lexical());
      }
    }
    for (const auto& v : fm.temp_no_literal) {
      auto it = m.find(v);
      if (it != m.end() && it->second.is_literal()) return std::nullopt;
    }
    return fm;
  }

 private:
  const InferenceRule& rule_;
  Algorithm mode_;
  const Term& lambda_;
  const TripleIndex& canonical_;
  OriginIndex origins_;
  std::set<std::string> seed_;
  std::vector<std::vector<TriplePattern>> variants_;
  std::vector<TriplePattern> sources_;
};

const Term& no_literal_marker() {
  static const Term t = Term::variable("#d");
  return t;
}
const Term& literal_marker() {
  static const Term t = Term::variable("#l");
  return t;
}

TriplePattern shape_of(const TriplePattern& t, const NoLiteralSet& delta) {
  TriplePattern key = t;
  for (std::size_t i = 0; i < 3; ++i)
    if (t[i].is_variable())
      key[i] = delta.count(t[i].lexical()) ? no_literal_marker() : literal_marker();
  return key;
}

class Expander {
 public:
  Expander(TriplestoreSchema& target, const Term& lambda, NameRegistry& names)
      : target_(target), lambda_(lambda), names_(names) {
    for (const auto& t : target.graph) seen_.insert(shape_of(t, target.no_literal));
  }

  void add(const FilteredMapping& fm, const GraphPattern& consequent) {
    for (const auto& t : consequent) {
      TriplePattern key = t;
      for (std::size_t i = 0; i < 3; ++i) {
        if (!t[i].is_variable()) continue;
        const Term& v = fm.mapping.at(t[i].lexical());
        if (v != lambda_) {
          key[i] = v;
        } else {
          const bool no_lit = i < 2 || fm.temp_no_literal.count(t[i].lexical());
          key[i] = no_lit ? no_literal_marker() : literal_marker();
        }
      }
      if (!seen_.insert(key).second) continue;
      TriplePattern fresh = key;
      for (std::size_t i = 0; i < 3; ++i) {
        if (!key[i].is_variable()) continue;
        fresh[i] = names_.fresh_variable();
        if (key[i] == no_literal_marker()) target_.no_literal.insert(fresh[i].lexical());
      }
      target_.graph.insert(fresh);
    }
  }

 private:
  TriplestoreSchema& target_;
  const Term& lambda_;
  NameRegistry& names_;
  std::set<TriplePattern> seen_;
};

TripleIndex canonical_instance(const TriplestoreSchema& schema, const InferenceRule& rule,
                               Algorithm mode, const Term& lambda, const Limits& limits) {
  if (mode == Algorithm::score) return TripleIndex(build_sandbox(schema.graph, lambda));
  return TripleIndex(build_critical(schema, rule, lambda, limits));
}

std::set<Mapping> canonical_mappings(const TriplestoreSchema& schema, const InferenceRule& rule,
                                     Algorithm mode, const Term& lambda,
                                     const TripleIndex& canonical, const Limits& limits) {
  if (mode == Algorithm::critical) return evaluate_bgp(rule.antecedent, canonical, &limits);
  const bool drop = !has_variable_predicate(schema.graph);
  return evaluate_union_query(build_lambda_rewriting(rule.antecedent, lambda, drop), canonical,
                              &limits);
}

}  // namespace

std::vector<TriplePattern> find_origin_patterns(const Triple& t, const TriplestoreSchema& schema,
                                                const Term& lambda, Algorithm mode) {
  OriginIndex index(schema, lambda, mode);
  std::vector<TriplePattern> out;
  for (const auto* p : index.origins(t)) out.push_back(*p);
  return out;
}

std::optional<FilteredMapping> filter_and_annotate(const Mapping& m, const InferenceRule& rule,
                                                   const TriplestoreSchema& schema,
                                                   Algorithm mode, const Term& lambda) {
  const Limits limits;
  const TripleIndex canonical = canonical_instance(schema, rule, mode, lambda, limits);
  Filter filter(rule, schema, mode, lambda, canonical);
  return filter(m);
}

void expand_schema(TriplestoreSchema& target, const FilteredMapping& fm,
                   const GraphPattern& consequent, const Term& lambda, NameRegistry& names) {
  Expander(target, lambda, names).add(fm, consequent);
}

BasicConsequence basic_consequence(const TriplestoreSchema& schema, const InferenceRule& rule,
                                   Algorithm mode, Context& ctx) {
  ctx.limits.check_deadline();
  const Term& lambda = ctx.lambda();
  BasicConsequence out;
  out.schema = TriplestoreSchema{schema.graph, schema.no_literal, {}};

  const TripleIndex canonical = canonical_instance(schema, rule, mode, lambda, ctx.limits);
  const auto mappings = canonical_mappings(schema, rule, mode, lambda, canonical, ctx.limits);

  Filter filter(rule, schema, mode, lambda, canonical);
  Expander expander(out.schema, lambda, ctx.names);
  DeadlineTicker ticker(&ctx.limits);
  for (const auto& m : mappings) {
    ticker.tick();
    auto fm = filter(m);
    if (!fm) continue;
    ++out.surviving_mappings;
    expander.add(*fm, rule.consequent);
  }
  out.applicable = out.surviving_mappings > 0;
  return out;
}

SimpleConsequence simple_schema_consequence(const TriplestoreSchema& schema,
                                            const RuleSet& rules, Algorithm mode, Context& ctx) {
  SimpleConsequence out;
  TriplestoreSchema current = normalize_schema({schema.graph, schema.no_literal, {}});
  for (;;) {
    ++out.rounds;
    TriplestoreSchema next = current;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto bc = basic_consequence(current, rules[i], mode, ctx);
      if (bc.applicable) out.applicable.insert(rule_label(rules, i));
      for (const auto& t : bc.schema.graph) {
        if (current.graph.count(t)) continue;
        next.graph.insert(t);
        for (const auto& v : vars_of(t))
          if (bc.schema.no_literal.count(v)) next.no_literal.insert(v);
      }
    }
    next = normalize_schema(next);
    if (next == current) break;
    current = std::move(next);
  }
  out.schema = std::move(current);
  return out;
}

std::set<std::string> applicable_rules(const TriplestoreSchema& schema, const RuleSet& rules,
                                       Context& ctx) {
  return simple_schema_consequence(schema, rules, Algorithm::score, ctx).applicable;
}

}  // namespace schemaforge
