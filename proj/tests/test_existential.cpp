#include <gtest/gtest.h>

#include "schemaforge/existential.hpp"
#include "support.hpp"

using namespace sf_test;

namespace {

const ExistentialRule& e1() {
  static const ExistentialRule e{tp("?v1", "a", ":PersonnelTag"), tp("?v1", ":carriedBy", "?v2")};
  return e;
}

void expect_sound(const ViolationWitness& w, const TriplestoreSchema& s, const RuleSet& rules) {
  EXPECT_TRUE(is_instance(w.instance, s));
  EXPECT_TRUE(violations({w.rule}, w.instance).empty());
  EXPECT_FALSE(violations({w.rule}, closure(w.instance, rules)).empty());
}

}  // namespace

TEST(Rewrite, NoMatchingConsequentKeepsAntecedentOnly) {
  auto s = s1();
  auto ctx = make_context(s, r1());
  auto w = rewrite_antecedents(r1_rule("r1"), r1(), ctx);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].antecedent, r1_rule("r1").antecedent);
  auto w0 = rewrite_antecedents(r1_rule("r3"), {}, ctx);
  ASSERT_EQ(w0.size(), 1u);
}

TEST(Rewrite, R3ReachesSensorLevelPattern) {
  auto s = s1();
  auto ctx = make_context(s, r1());
  auto w = rewrite_antecedents(r1_rule("r3"), r1(), ctx);
  // r3 itself, one step through r1, one through r2, and both.
  EXPECT_EQ(w.size(), 4u);
  bool found = false;
  for (const auto& rw : w) {
    if (rw.antecedent.size() != 6) continue;
    bool sensor_only = true;
    for (const auto& t : rw.antecedent)
      if (t.p == iri(":isLocatedIn") || t.o == iri(":OffLimitArea")) sensor_only = false;
    found = found || sensor_only;
    EXPECT_EQ(rw.depth, 2u);
  }
  EXPECT_TRUE(found);
}

TEST(Rewrite, RecursiveRuleConvergesThroughPruning) {
  auto rs = rules(R"(
    # name: trans
    CONSTRUCT { ?x :p ?y . } WHERE { ?x :p ?z . ?z :p ?y . })");
  TriplestoreSchema s{{tp("?a", ":p", "?b")}, {"a", "b"}, {}};
  auto ctx = make_context(s, rs);
  auto w = rewrite_antecedents(rs[0], rs, ctx);
  EXPECT_EQ(w.size(), 1u);
}

TEST(Rewrite, DepthBoundRaises) {
  auto rs = rules(R"(
    # name: a
    CONSTRUCT { ?x :p ?y . } WHERE { ?x :q ?z . ?z :r ?y . }
    # name: b
    CONSTRUCT { ?x :q ?y . } WHERE { ?x :p ?z . ?z :s ?y . }
    # name: goal
    CONSTRUCT { ?x :t ?y . } WHERE { ?x :p ?y . ?y :u ?x . })");
  TriplestoreSchema s{{tp("?a", ":p", "?b")}, {"a", "b"}, {}};
  auto ctx = make_context(s, rs);
  ctx.limits.rewrite_depth = 4;
  EXPECT_THROW(rewrite_antecedents(rs[2], rs, ctx), BudgetExceeded);
}

TEST(MapsInto, Basics) {
  EXPECT_TRUE(maps_into(patterns("?x :p ?y ."), patterns("?a :p :c . ?a :q ?b .")));
  EXPECT_FALSE(maps_into(patterns("?x :p ?y . ?y :q ?z ."), patterns("?a :p :c . ?a :q ?b .")));
  EXPECT_TRUE(maps_into(patterns("?x :p ?x ."), patterns("?a :p ?a .")));
  EXPECT_FALSE(maps_into(patterns("?x :p ?x ."), patterns("?a :p ?b .")));
}

TEST(Retained, RunningExampleViolatesE1) {
  auto s = s1();
  auto ctx = make_context(s, r1());
  auto report = retained_existentials(s, r1(), ctx);
  EXPECT_TRUE(report.retained.empty());
  ASSERT_EQ(report.violated.size(), 1u);
  const auto& w = report.violated[0];
  EXPECT_EQ(w.rule, e1());
  EXPECT_EQ(w.trigger_rule, "r1");
  EXPECT_EQ(w.instance.size(), 3u);
  std::set<Term> predicates;
  for (const auto& t : w.instance) predicates.insert(t.p);
  EXPECT_EQ(predicates, (std::set<Term>{iri("sn:observedProperty"), iri("sn:hasResult"),
                                        iri("sn:hasFeatureOfInterest")}));
  EXPECT_TRUE(w.instance.count(Triple{w.instance.begin()->s, iri("sn:observedProperty"),
                                      iri(":TagID")}));
  expect_sound(w, s, r1());
}

TEST(Retained, NoRulesRetainsEverything) {
  auto s = s1();
  auto ctx = make_context(s, {});
  auto report = retained_existentials(s, {}, ctx);
  EXPECT_EQ(report.retained, s.existentials);
  EXPECT_TRUE(report.violated.empty());
}

TEST(Retained, WitnessForcedBySecondExistential) {
  auto s = schema(R"(
    GRAPH { ?a :p ?b . ?c rdf:type :T . ?d :q ?e . }
    NOLIT { ?a ?b ?c ?d ?e }
    EXISTS {
      ?x rdf:type :T => ?x :q ?z ;
      ?x :p ?y => ?x :q ?z ;
    })");
  auto rs = rules("CONSTRUCT { ?x rdf:type :T . } WHERE { ?x :p ?y . }");
  auto ctx = make_context(s, rs);
  auto report = retained_existentials(s, rs, ctx);
  EXPECT_EQ(report.retained, s.existentials);
  // Verified independently: a grounding of the antecedent, chased, then closed.
  Graph g = graph(":k :p :m .");
  NameRegistry names;
  auto chased = chase_existentials(g, s.existentials, names);
  EXPECT_TRUE(violations(s.existentials, closure(chased, rs)).empty());
}

TEST(Retained, ViolatedAndRetainedPartition) {
  auto s = schema(R"(
    GRAPH { ?a :p ?b . ?c rdf:type :T . ?d :q ?e . ?f :w ?g . }
    NOLIT { ?a ?b ?c ?d ?e ?f ?g }
    EXISTS {
      ?x rdf:type :T => ?x :q ?z ;
      ?x :w ?y => ?y :q ?z ;
    })");
  auto rs = rules("CONSTRUCT { ?x rdf:type :T . } WHERE { ?x :p ?y . }");
  auto ctx = make_context(s, rs);
  auto report = retained_existentials(s, rs, ctx);
  ASSERT_EQ(report.violated.size(), 1u);
  EXPECT_EQ(report.retained.size(), 1u);
  EXPECT_FALSE(report.retained.count(report.violated[0].rule));
  expect_sound(report.violated[0], s, rs);
}

TEST(ExistentialConsequence, RunningExample) {
  auto s = s1();
  auto ctx = make_context(s, r1());
  auto con = existential_schema_consequence(s, r1(), Algorithm::score, ctx);
  EXPECT_TRUE(con.schema.existentials.empty());
  auto ctx2 = make_context(s, r1());
  auto simple = simple_schema_consequence(s, r1(), Algorithm::score, ctx2);
  EXPECT_EQ(con.schema.graph, simple.schema.graph);
  EXPECT_EQ(con.schema.no_literal, simple.schema.no_literal);
}

TEST(ExistentialConsequence, NoRulesIsIdentity) {
  auto s = s1();
  auto ctx = make_context(s, {});
  auto con = existential_schema_consequence(s, {}, Algorithm::score, ctx);
  EXPECT_TRUE(schema_equivalent(con.schema, s));
}
