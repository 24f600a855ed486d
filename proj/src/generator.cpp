#include "schemaforge/generator.hpp"

#include <random>

namespace schemaforge {

namespace {

constexpr int kRetries = 50;
const std::string kBase = "http://example.org/gen/";

class Drawer {
 public:
  explicit Drawer(const GeneratorConfig& c) : c_(c), rng_(c.seed) {}

  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, std::max(n, 1) - 1)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[pick(static_cast<int>(v.size()))];
  }

  Term predicate() { return Term::iri(kBase + "p" + std::to_string(pick(c_.p_count))); }
  Term iri() { return Term::iri(kBase + "u" + std::to_string(pick(c_.u_count))); }
  Term literal() { return Term::literal("l" + std::to_string(pick(c_.l_count))); }
  Term object_constant() { return coin(0.5) || c_.l_count <= 0 ? iri() : literal(); }
  Term var(const std::string& prefix) { return Term::variable(prefix + std::to_string(next_++)); }

 private:
  const GeneratorConfig& c_;
  std::mt19937_64 rng_;
  int next_ = 0;
};

// Variables renamed to a fixed sequence; equal keys mean equal modulo renaming.
InferenceRule canonical_rule(const InferenceRule& r) {
  Substitution rename;
  int next = 0;
  auto visit = [&](const GraphPattern& g) {
    for (const auto& t : g)
      for (std::size_t i = 0; i < 3; ++i)
        if (t[i].is_variable() && !rename.count(t[i].lexical()))
          rename.emplace(t[i].lexical(), Term::variable("c" + std::to_string(next++)));
  };
  visit(r.antecedent);
  visit(r.consequent);
  return {apply_substitution(rename, r.antecedent), apply_substitution(rename, r.consequent), {}};
}

std::string pattern_key(const TriplePattern& t, const NoLiteralSet& delta) {
  std::string key;
  for (std::size_t i = 0; i < 3; ++i) {
    if (t[i].is_variable())
      key += delta.count(t[i].lexical()) ? "?D " : "? ";
    else
      key += to_string(t[i]) + " ";
  }
  return key;
}

}  // namespace

Generated generate(const GeneratorConfig& c) {
  Drawer d(c);
  Generated out;
  const int n_a = std::max(c.antecedent_len, 1);

  // Chain rules: nodes n0..n_a, triple i links n_i to n_{i+1}.
  std::set<std::string> seen_rules;
  for (int k = 0; k < c.rule_count; ++k) {
    for (int attempt = 0; attempt < kRetries; ++attempt) {
      std::vector<Term> nodes;
      for (int i = 0; i <= n_a; ++i) {
        if (!d.coin(c.pi_c))
          nodes.push_back(d.var("v"));
        else
          nodes.push_back(i == n_a ? d.object_constant() : d.iri());
      }
      InferenceRule r;
      for (int i = 0; i < n_a; ++i) r.antecedent.insert({nodes[i], d.predicate(), nodes[i + 1]});
      r.consequent.insert({nodes.front(), d.predicate(), nodes.back()});
      r.name = "g" + std::to_string(k + 1);
      const InferenceRule key = canonical_rule(r);
      const std::string text = to_string(key);
      if (r.antecedent.size() != static_cast<std::size_t>(n_a) || seen_rules.count(text)) continue;
      try {
        r.validate();
      } catch (const SchemaError&) {
        continue;
      }
      seen_rules.insert(text);
      out.rules.push_back(r);
      break;
    }
  }

  auto& s = out.schema;
  std::set<std::string> seen_patterns;
  auto add_pattern = [&](TriplePattern t) {
    // Schema variables occur once: every variable position gets its own.
    for (std::size_t i = 0; i < 3; ++i) {
      if (!t[i].is_variable()) continue;
      t[i] = d.var("s");
      if (i < 2) s.no_literal.insert(t[i].lexical());
    }
    const std::string key = pattern_key(t, s.no_literal);
    if (seen_patterns.count(key)) {
      for (std::size_t i = 0; i < 3; ++i)
        if (t[i].is_variable()) s.no_literal.erase(t[i].lexical());
      return false;
    }
    seen_patterns.insert(key);
    s.graph.insert(t);
    return true;
  };
  auto random_pattern = [&]() {
    TriplePattern t;
    t.s = d.coin(c.pi_c) ? d.iri() : d.var("x");
    t.p = d.coin(c.variable_predicate_p) ? d.var("x") : d.predicate();
    t.o = d.coin(c.pi_c) ? d.object_constant() : d.var("x");
    return t;
  };

  const int seeded = c.schema_size / 2;
  for (int attempt = 0; !out.rules.empty() && static_cast<int>(s.graph.size()) < seeded &&
                        attempt < kRetries * seeded;
       ++attempt) {
    const auto& r = d.pick(out.rules);
    for (const auto& t : r.antecedent) {
      if (static_cast<int>(s.graph.size()) >= seeded) break;
      add_pattern(t);
    }
  }
  for (int attempt = 0;
       static_cast<int>(s.graph.size()) < c.schema_size && attempt < kRetries * c.schema_size;
       ++attempt)
    add_pattern(random_pattern());

  // Existential rules: antecedent from a rule consequent, consequent from a
  // rule antecedent triple whose subject is joined to the antecedent's.
  if (!out.rules.empty()) {
    for (int k = 0; k < c.existential_count; ++k) {
      for (int attempt = 0; attempt < kRetries; ++attempt) {
        const auto& from = d.pick(out.rules);
        const auto& to = d.pick(out.rules);
        TriplePattern a = *from.consequent.begin();
        std::vector<TriplePattern> ants(to.antecedent.begin(), to.antecedent.end());
        TriplePattern cns = d.pick(ants);
        // Rename the two triples apart, then join.
        for (std::size_t i = 0; i < 3; ++i) {
          if (a[i].is_variable()) a[i] = d.var("e");
          if (cns[i].is_variable()) cns[i] = d.var("e");
        }
        cns.s = a.s;
        if (!is_well_formed(a) || !is_well_formed(cns)) continue;
        const ExistentialRule e = canonical_existential({a, cns});
        if (!s.existentials.insert(e).second) continue;
        break;
      }
    }
  }
  return out;
}

}  // namespace schemaforge
