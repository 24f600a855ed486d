#include <gtest/gtest.h>

#include <sstream>

#include "schemaforge/bench.hpp"
#include "support.hpp"

using namespace sf_test;

namespace {

GeneratorConfig fig2a(int size, std::uint64_t seed) {
  GeneratorConfig c;
  c.schema_size = size;
  c.p_count = size * 3 / 2;
  c.u_count = c.l_count = size;
  c.pi_c = 0.1;
  c.rule_count = 4;
  c.antecedent_len = 2;
  c.existential_count = 0;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Generator, Deterministic) {
  auto c = fig2a(20, 7);
  c.existential_count = 5;
  const auto a = generate(c);
  const auto b = generate(c);
  EXPECT_EQ(a.schema, b.schema);
  EXPECT_EQ(a.rules, b.rules);
  c.seed = 8;
  EXPECT_FALSE(generate(c).schema == a.schema);
}

TEST(Generator, OutputsSatisfyInvariants) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (double pi : {0.0, 0.1, 0.5, 1.0}) {
      auto c = fig2a(12, seed);
      c.pi_c = pi;
      c.existential_count = 3;
      c.antecedent_len = 1 + static_cast<int>(seed % 3);
      const auto g = generate(c);
      EXPECT_NO_THROW(g.schema.validate());
      for (const auto& r : g.rules) EXPECT_NO_THROW(r.validate());
      for (const auto& t : g.schema.graph) EXPECT_TRUE(t.p.is_iri());
      EXPECT_EQ(g.rules.size(), 4u);
      EXPECT_LE(g.schema.graph.size(), 12u);
      // Every subject variable is in the no-literal set, no object variable is.
      for (const auto& t : g.schema.graph) {
        if (t.s.is_variable()) EXPECT_TRUE(g.schema.no_literal.count(t.s.lexical()));
        if (t.o.is_variable()) EXPECT_FALSE(g.schema.no_literal.count(t.o.lexical()));
      }
    }
  }
}

TEST(Generator, ChainRuleShape) {
  auto c = fig2a(10, 3);
  c.pi_c = 0.0;
  for (const auto& r : generate(c).rules) {
    ASSERT_EQ(r.antecedent.size(), 2u);
    ASSERT_EQ(r.consequent.size(), 1u);
    std::vector<TriplePattern> a(r.antecedent.begin(), r.antecedent.end());
    // One triple's object is the other's subject.
    const bool chained = a[0].o == a[1].s || a[1].o == a[0].s;
    EXPECT_TRUE(chained) << to_string(r);
    const auto& head = a[0].o == a[1].s ? a[0] : a[1];
    const auto& tail = a[0].o == a[1].s ? a[1] : a[0];
    EXPECT_EQ(r.consequent.begin()->s, head.s);
    EXPECT_EQ(r.consequent.begin()->o, tail.o);
  }
}

TEST(Generator, NoConstantsWhenPiIsZero) {
  auto c = fig2a(16, 5);
  c.pi_c = 0.0;
  const auto g = generate(c);
  for (const auto& t : g.schema.graph) {
    EXPECT_TRUE(t.s.is_variable());
    EXPECT_TRUE(t.o.is_variable());
  }
}

TEST(Generator, HalfSeededFromAntecedents) {
  auto c = fig2a(20, 11);
  const auto g = generate(c);
  std::set<Term> antecedent_predicates;
  for (const auto& r : g.rules)
    for (const auto& t : r.antecedent) antecedent_predicates.insert(t.p);
  std::size_t hits = 0;
  for (const auto& t : g.schema.graph) hits += antecedent_predicates.count(t.p);
  EXPECT_GE(hits, 10u);
}

TEST(Generator, ExistentialsJoinRuleTriples) {
  auto c = fig2a(20, 13);
  c.pi_c = 0.0;
  c.existential_count = 6;
  const auto g = generate(c);
  EXPECT_EQ(g.schema.existentials.size(), 6u);
  std::set<Term> consequent_p, antecedent_p;
  for (const auto& r : g.rules) {
    for (const auto& t : r.consequent) consequent_p.insert(t.p);
    for (const auto& t : r.antecedent) antecedent_p.insert(t.p);
  }
  for (const auto& e : g.schema.existentials) {
    EXPECT_TRUE(consequent_p.count(e.antecedent.p));
    EXPECT_TRUE(antecedent_p.count(e.consequent.p));
    EXPECT_EQ(e.antecedent.s, e.consequent.s);
  }
}

TEST(Bench, EmptySweepGivesHeaderOnly) {
  BenchPlan plan;
  std::ostringstream out;
  write_csv(out, run_benchmark(plan));
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Bench, PlanParsingAndScaling) {
  const auto plan = parse_bench_plan(R"({
    "budget_ms": 1000, "repetitions": 2, "algorithms": ["score", "critical"],
    "base": {"pi_c": 0.1, "rule_count": 4, "antecedent_len": 2, "seed": 9},
    "sweep": {"param": "schema_size", "values": [10, 20]},
    "scale": {"p_count": 1.5, "u_count": 1, "l_count": 1}
  })");
  ASSERT_EQ(plan.points.size(), 2u);
  EXPECT_EQ(plan.points[1].schema_size, 20);
  EXPECT_EQ(plan.points[1].p_count, 30);
  EXPECT_EQ(plan.points[1].u_count, 20);
  EXPECT_EQ(plan.algorithms.size(), 2u);
  EXPECT_EQ(plan.budget.count(), 1000);
  EXPECT_THROW(parse_bench_plan(R"({"base": {"nope": 1}})"), std::invalid_argument);
}

TEST(Bench, CsvReproducibleModuloTime) {
  BenchPlan plan;
  plan.points = {fig2a(10, 2)};
  plan.algorithms = {Algorithm::score, Algorithm::critical};
  plan.budget = std::chrono::milliseconds(20'000);
  auto strip = [](std::vector<BenchRecord> rs) {
    for (auto& r : rs) r.time_ms = 0;
    std::ostringstream out;
    write_csv(out, rs);
    return out.str();
  };
  EXPECT_EQ(strip(run_benchmark(plan)), strip(run_benchmark(plan)));
}

TEST(Bench, TimeoutIsRecorded) {
  auto r = run_once(fig2a(60, 1), Algorithm::critical, BenchMode::simple,
                    std::chrono::milliseconds(1));
  EXPECT_TRUE(r.timed_out);
  EXPECT_GE(r.time_ms, 1.0);
}
