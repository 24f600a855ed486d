#include "schemaforge/bench.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "schemaforge/existential.hpp"

namespace schemaforge {

std::string_view to_string(BenchMode m) {
  return m == BenchMode::simple ? "simple" : "existential";
}

namespace {

using nlohmann::json;

void set_param(GeneratorConfig& c, const std::string& name, double v) {
  if (name == "pi_c") c.pi_c = v;
  else if (name == "p_count") c.p_count = static_cast<int>(std::lround(v));
  else if (name == "u_count") c.u_count = static_cast<int>(std::lround(v));
  else if (name == "l_count") c.l_count = static_cast<int>(std::lround(v));
  else if (name == "schema_size") c.schema_size = static_cast<int>(std::lround(v));
  else if (name == "rule_count") c.rule_count = static_cast<int>(std::lround(v));
  else if (name == "existential_count") c.existential_count = static_cast<int>(std::lround(v));
  else if (name == "antecedent_len") c.antecedent_len = static_cast<int>(std::lround(v));
  else if (name == "seed") c.seed = static_cast<std::uint64_t>(v);
  else throw std::invalid_argument("unknown generator parameter '" + name + "'");
}

}  // namespace

BenchPlan parse_bench_plan(const std::string& text) {
  BenchPlan plan;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bench config: ") + e.what());
  }
  plan.budget = std::chrono::milliseconds(j.value("budget_ms", 600'000));
  plan.repetitions = j.value("repetitions", 1);
  if (j.contains("algorithms")) {
    plan.algorithms.clear();
    for (const auto& a : j["algorithms"]) {
      const auto s = a.get<std::string>();
      if (s == "score") plan.algorithms.push_back(Algorithm::score);
      else if (s == "critical") plan.algorithms.push_back(Algorithm::critical);
      else throw std::invalid_argument("unknown algorithm '" + s + "'");
    }
  }
  if (j.contains("modes")) {
    plan.modes.clear();
    for (const auto& m : j["modes"]) {
      const auto s = m.get<std::string>();
      if (s == "simple") plan.modes.push_back(BenchMode::simple);
      else if (s == "existential") plan.modes.push_back(BenchMode::existential);
      else throw std::invalid_argument("unknown mode '" + s + "'");
    }
  }
  GeneratorConfig base;
  if (j.contains("base"))
    for (const auto& [k, v] : j["base"].items()) set_param(base, k, v.get<double>());
  if (const char* env = std::getenv("SCHEMAFORGE_SEED")) base.seed = std::strtoull(env, nullptr, 10);

  if (!j.contains("sweep")) {
    plan.points.push_back(base);
    return plan;
  }
  const auto& sweep = j["sweep"];
  const auto param = sweep.at("param").get<std::string>();
  for (const auto& v : sweep.at("values")) {
    GeneratorConfig c = base;
    const double x = v.get<double>();
    set_param(c, param, x);
    if (j.contains("scale"))
      for (const auto& [k, f] : j["scale"].items()) set_param(c, k, f.get<double>() * x);
    plan.points.push_back(c);
  }
  return plan;
}

BenchRecord run_once(const GeneratorConfig& config, Algorithm algorithm, BenchMode mode,
                     std::chrono::milliseconds budget) {
  BenchRecord rec{config, algorithm, mode};
  const Generated g = generate(config);
  const auto start = std::chrono::steady_clock::now();
  try {
    Context ctx = make_context(g.schema, g.rules, Limits::with_timeout(budget));
    if (mode == BenchMode::simple) {
      rec.out_patterns = simple_schema_consequence(g.schema, g.rules, algorithm, ctx).schema.graph.size();
    } else {
      const auto r = existential_schema_consequence(g.schema, g.rules, algorithm, ctx);
      rec.out_patterns = r.schema.graph.size();
      rec.violated_count = r.report.violated.size();
    }
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
  } catch (const BudgetExceeded&) {
    rec.timed_out = true;
    rec.time_ms = static_cast<double>(budget.count());
  }
  return rec;
}

std::vector<BenchRecord> run_benchmark(const BenchPlan& plan) {
  std::vector<BenchRecord> out;
  for (const auto& point : plan.points)
    for (auto mode : plan.modes)
      for (auto algo : plan.algorithms) {
        BenchRecord first;
        double total = 0;
        bool timed_out = false;
        const int reps = std::max(plan.repetitions, 1);
        for (int k = 0; k < reps; ++k) {
          GeneratorConfig c = point;
          c.seed = point.seed + static_cast<std::uint64_t>(k);
          BenchRecord r = run_once(c, algo, mode, plan.budget);
          if (k == 0) first = r;
          total += r.time_ms;
          timed_out = timed_out || r.timed_out;
        }
        first.config = point;
        first.time_ms = total / reps;
        first.timed_out = timed_out;
        out.push_back(first);
      }
  return out;
}

const char* const kCsvHeader =
    "seed,schema_size,p_count,pi_c,u_count,l_count,rule_count,antecedent_len,existential_count,"
    "algo,mode,time_ms,timed_out,out_patterns,violated_count";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    const auto& c = r.config;
    out << c.seed << ',' << c.schema_size << ',' << c.p_count << ',' << c.pi_c << ','
        << c.u_count << ',' << c.l_count << ',' << c.rule_count << ',' << c.antecedent_len << ','
        << c.existential_count << ',' << to_string(r.algorithm) << ',' << to_string(r.mode) << ','
        << r.time_ms << ',' << (r.timed_out ? "true" : "false") << ',' << r.out_patterns << ','
        << r.violated_count << '\n';
  }
}

}  // namespace schemaforge
