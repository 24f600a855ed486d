#include "properties.hpp"

#include <random>

#include "schemaforge/consequence.hpp"
#include "schemaforge/io.hpp"
#include "schemaforge/shacl.hpp"
#include "support.hpp"

namespace sf_test {

namespace {

std::string describe(const TriplestoreSchema& s, const InferenceRule& r) {
  return write_schema(s) + "rule: " + to_string(r);
}

GeneratorConfig small_config(std::uint64_t seed, int size) {
  GeneratorConfig c;
  const double pis[] = {0.0, 0.1, 0.5};
  c.pi_c = pis[seed % 3];
  c.antecedent_len = 1 + static_cast<int>((seed / 3) % 3);
  c.schema_size = size;
  c.p_count = 4;
  c.u_count = 3;
  c.l_count = 2;
  c.rule_count = 2;
  c.seed = seed;
  return c;
}

}  // namespace

PropertyResult agreement_suite(int seeds, double variable_predicate_p) {
  PropertyResult res;
  for (int k = 0; k < seeds; ++k) {
    auto c = small_config(1000 + k, 4 + k % 9);
    c.variable_predicate_p = variable_predicate_p;
    const auto g = generate(c);
    for (const auto& r : g.rules) {
      ++res.cases;
      Context a = make_context(g.schema, {r});
      Context b = make_context(g.schema, {r});
      const auto score = basic_consequence(g.schema, r, Algorithm::score, a);
      const auto critical = basic_consequence(g.schema, r, Algorithm::critical, b);
      if (score.applicable != critical.applicable ||
          !schema_equivalent(score.schema, critical.schema))
        res.fail("seed " + std::to_string(c.seed) + "\n" + describe(g.schema, r) +
                 "\nscore:\n" + write_schema(score.schema) + "critical:\n" +
                 write_schema(critical.schema));
    }
  }
  return res;
}

PropertyResult enumeration_suite(int seeds) {
  PropertyResult res;
  for (int k = 0; k < seeds; ++k) {
    auto c = small_config(5000 + k, 2 + k % 3);
    c.variable_predicate_p = k % 5 == 0 ? 0.3 : 0.0;
    const auto g = generate(c);
    const TriplestoreSchema plain{g.schema.graph, g.schema.no_literal, {}};
    for (const auto& r : g.rules) {
      ++res.cases;
      Context ctx = make_context(plain, {r});
      const auto score = basic_consequence(plain, r, Algorithm::score, ctx).schema;

      // Universe: input constants, three unseen IRIs, one unseen literal.
      std::set<Term> consts = vars_and_consts(plain.graph).consts;
      for (const auto* part : {&r.antecedent, &r.consequent}) {
        const auto cs = vars_and_consts(*part).consts;
        consts.insert(cs.begin(), cs.end());
      }
      std::vector<Term> universe(consts.begin(), consts.end());
      for (int i = 0; i < 3; ++i) universe.push_back(Term::iri("urn:oracle:fresh:" + std::to_string(i)));
      universe.push_back(Term::literal("urn:oracle:literal"));

      // Any instance with at most three triples that triggers r contains
      // m(A) for some mapping m; m(A) is itself an instance, so enumerating
      // the groundings of A covers every inferred triple.
      const auto vars = vars_of(r.antecedent);
      std::vector<std::string> names(vars.begin(), vars.end());
      std::vector<std::size_t> idx(names.size(), 0);
      Graph inferred;
      bool bad = false;
      while (!bad) {
        Mapping m;
        for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = universe[idx[i]];
        const Graph inst = apply_substitution(m, r.antecedent);
        if (inst.size() <= 3 && is_valid_rdf_graph(inst) && is_instance(inst, plain)) {
          for (const auto& t : apply_substitution(m, r.consequent)) {
            if (!is_valid_triple(t)) continue;
            inferred.insert(t);
            if (!conforms_to_graph({t}, score)) {
              res.fail("inferred " + to_string(t) + " not modelled\n" + describe(plain, r) +
                       "score:\n" + write_schema(score));
              bad = true;
              break;
            }
          }
        }
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == universe.size()) idx[j++] = 0;
        if (j == idx.size()) break;
      }
      if (bad) continue;
      for (const auto& p : score.graph) {
        NoLiteralSet d;
        for (const auto& v : vars_of(p))
          if (score.no_literal.count(v)) d.insert(v);
        const TriplestoreSchema single{{p}, d, {}};
        if (schema_contains(single, plain)) continue;
        bool realized = false;
        for (const auto& t : inferred)
          if (triple_instantiates(t, p, score.no_literal)) realized = true;
        if (!realized) {
          res.fail("new pattern " + to_string(p) + " never realized\n" + describe(plain, r) +
                   "score:\n" + write_schema(score));
          break;
        }
      }
    }
  }
  return res;
}

std::vector<TriplestoreSchema> shacl_corpus() {
  std::vector<TriplestoreSchema> out{s1()};
  auto s = s1();
  s.no_literal.erase("v6");
  out.push_back(s);
  out.push_back(TriplestoreSchema{});
  out.push_back(schema(R"(GRAPH { ?x :p ?y . :a :p "l" . } NOLIT { ?x ?y })"));
  out.push_back(schema(R"(GRAPH { ?x :p :k . :a :p ?y . } NOLIT { ?x })"));
  out.push_back(schema(R"(GRAPH { :a :p :b . :c :p ?y . :a :q "1" . } NOLIT { ?y }
                          EXISTS { ?u :p ?w => ?u :q ?z ; })"));
  out.push_back(schema(R"(GRAPH { ?x :p ?y . :a :p ?z . ?w :q :a . } NOLIT { ?x ?y ?w }
                          EXISTS { ?u :q ?w => ?v :p ?w ; ?u rdf:type :T => ?u :q :a ; })"));
  out.push_back(schema(R"(GRAPH { :a :p :b . :a :p "2" . :c :p :b . } NOLIT { })"));
  out.push_back(schema(R"(GRAPH { ?x :p ?y . ?z :p "1" . } NOLIT { ?x ?z })"));
  for (std::uint64_t seed = 1; out.size() < 40; ++seed) {
    GeneratorConfig c;
    const double pis[] = {0.0, 0.1, 0.5};
    c.pi_c = pis[seed % 3];
    c.schema_size = 6 + static_cast<int>(seed % 10);
    c.p_count = 5;
    c.u_count = 4;
    c.l_count = 3;
    c.rule_count = 3;
    c.antecedent_len = 2;
    c.existential_count = c.pi_c == 0.0 ? 2 : 0;
    c.seed = seed;
    out.push_back(generate(c).schema);
  }
  return out;
}

PropertyResult shacl_round_trip(const std::vector<TriplestoreSchema>& corpus) {
  PropertyResult res;
  for (const auto& s : corpus) {
    ++res.cases;
    try {
      const auto doc = schema_to_shacl(s);
      const auto back = shacl_to_schema(parse_graph(write_graph(doc)));
      if (!schema_equivalent(back, s))
        res.fail(write_schema(s) + "became\n" + write_schema(back));
    } catch (const std::exception& e) {
      res.fail(write_schema(s) + "threw " + e.what());
    }
  }
  return res;
}

namespace {

const std::vector<Term>& small_universe() {
  static const std::vector<Term> u{iri(":a"), iri(":b"), iri(":c"), lit("1")};
  return u;
}

Term draw(std::mt19937_64& rng, std::size_t pos, bool allow_var) {
  const auto& u = small_universe();
  const int k = std::uniform_int_distribution<int>(0, allow_var ? 6 : 3)(rng);
  if (k >= 4) return var("x" + std::to_string(k - 4));
  if (pos < 2 && u[k].is_literal()) return iri(":a");
  return u[k];
}

}  // namespace

PropertyResult bgp_oracle_suite(int rounds) {
  PropertyResult res;
  std::mt19937_64 rng(2024);
  for (int round = 0; round < rounds; ++round) {
    Graph g;
    const int n = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < n; ++i) g.insert({draw(rng, 0, false), draw(rng, 1, false), draw(rng, 2, false)});
    GraphPattern p;
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) p.insert({draw(rng, 0, true), draw(rng, 1, true), draw(rng, 2, true)});
    ++res.cases;
    const auto vars = vars_of(p);
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::size_t> idx(names.size(), 0);
    std::set<Mapping> expected;
    while (true) {
      Mapping m;
      for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = small_universe()[idx[i]];
      bool ok = true;
      for (const auto& t : p) ok = ok && g.count(apply_substitution(m, t));
      if (ok) expected.insert(m);
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == small_universe().size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
    if (evaluate_bgp(p, g) != expected) res.fail("bgp mismatch on " + to_string(*p.begin()));
  }
  return res;
}

PropertyResult closure_suite(int rounds) {
  PropertyResult res;
  std::mt19937_64 rng(77);
  const std::vector<Term> preds{iri(":p"), iri(":q"), iri(":r")};
  auto pred = [&] { return preds[rng() % preds.size()]; };
  for (int round = 0; round < rounds; ++round) {
    Graph g;
    for (int i = 0; i < 8; ++i) g.insert({draw(rng, 0, false), pred(), draw(rng, 2, false)});
    RuleSet rs;
    const int nr = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < nr; ++k) {
      InferenceRule r;
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i)
        r.antecedent.insert({var("x" + std::to_string(i)), pred(), var("x" + std::to_string(i + 1))});
      r.consequent.insert({var("x0"), pred(), var("x" + std::to_string(len))});
      r.name = "t" + std::to_string(k);
      rs.push_back(r);
    }
    ++res.cases;
    const auto semi = closure(g, rs, ClosureStrategy::semi_naive);
    if (semi != closure(g, rs, ClosureStrategy::naive)) res.fail("semi-naive differs from naive");
    else if (closure(semi, rs) != semi) res.fail("closure not idempotent");
  }
  return res;
}

PropertyResult chase_suite(int rounds) {
  PropertyResult res;
  std::mt19937_64 rng(31);
  const std::vector<Term> preds{iri(":p"), iri(":q"), iri(":r")};
  for (int round = 0; round < rounds; ++round) {
    std::set<ExistentialRule> es;
    for (int k = 0; k < 3; ++k) {
      const std::size_t i = rng() % 2;
      const std::size_t j = i + 1 + rng() % (2 - i);
      es.insert({{var("x"), preds[i], var("y")},
                 rng() % 2 ? TriplePattern{var("x"), preds[j], var("z")}
                           : TriplePattern{var("z"), preds[j], var("y")}});
    }
    Graph g;
    for (int i = 0; i < 5; ++i)
      g.insert({iri(":n" + std::to_string(rng() % 4)), preds[rng() % 3],
                iri(":n" + std::to_string(rng() % 4))});
    NameRegistry names;
    names.observe(g);
    ++res.cases;
    const auto chased = chase_existentials(g, es, names);
    if (!violations(es, chased).empty()) res.fail("chase result violates a rule");
  }
  return res;
}

}  // namespace sf_test
