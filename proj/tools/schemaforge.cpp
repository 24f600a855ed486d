#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "schemaforge/bench.hpp"
#include "schemaforge/existential.hpp"
#include "schemaforge/io.hpp"
#include "schemaforge/shacl.hpp"

using namespace schemaforge;

namespace {

enum Exit { ok = 0, usage = 1, parse = 2, budget = 3, unsupported = 4, invalid = 5 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Limits limits_for(int timeout_ms) {
  return timeout_ms > 0 ? Limits::with_timeout(std::chrono::milliseconds(timeout_ms)) : Limits{};
}

std::string report_violations(const ExistentialReport& report, const PrefixMap& pm) {
  std::ostringstream out;
  for (const auto& w : report.violated) {
    out << "# violated: " << pm.render(w.rule.antecedent) << " => " << pm.render(w.rule.consequent)
        << "  (via " << w.trigger_rule << ")\n# witness:\n";
    std::istringstream body(write_graph(w.instance, pm));
    for (std::string line; std::getline(body, line);)
      if (line.rfind("@prefix", 0) != 0 && !line.empty()) out << "#   " << line << '\n';
  }
  for (const auto& e : report.retained)
    out << "# retained: " << pm.render(e.antecedent) << " => " << pm.render(e.consequent) << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema consequence under RDF inference rules"};
  app.require_subcommand(1);

  std::string schema_path, rules_path, graph_path, out_path, shapes_path, config_path, csv_path;
  std::string algo = "score";
  int timeout_ms = 0;

  auto* consequence = app.add_subcommand("consequence", "schema consequence of a schema and rules");
  bool simple = false, existential = false;
  auto* simple_flag = consequence->add_flag("--simple", simple, "simple consequence");
  consequence->add_flag("--existential", existential, "existential-preserving consequence")
      ->excludes(simple_flag);
  consequence->add_option("--algo", algo, "score or critical")
      ->check(CLI::IsMember({"score", "critical"}));
  consequence->add_option("-s,--schema", schema_path)->required();
  consequence->add_option("-r,--rules", rules_path)->required();
  consequence->add_option("-o,--out", out_path);
  consequence->add_option("--timeout-ms", timeout_ms);

  auto* validate = app.add_subcommand("validate", "check that a graph is an instance of a schema");
  validate->add_option("-s,--schema", schema_path)->required();
  validate->add_option("-g,--graph", graph_path)->required();

  auto* closure_cmd = app.add_subcommand("closure", "closure of a graph under rules");
  closure_cmd->add_option("-g,--graph", graph_path)->required();
  closure_cmd->add_option("-r,--rules", rules_path)->required();
  closure_cmd->add_option("-o,--out", out_path);

  auto* applicable = app.add_subcommand("applicable", "rules triggered on some schema instance");
  applicable->add_option("-s,--schema", schema_path)->required();
  applicable->add_option("-r,--rules", rules_path)->required();

  auto* shacl2schema = app.add_subcommand("shacl2schema", "SHACL shapes to schema");
  shacl2schema->add_option("-i,--shapes", shapes_path)->required();
  shacl2schema->add_option("-o,--out", out_path);

  auto* schema2shacl = app.add_subcommand("schema2shacl", "schema to SHACL shapes");
  schema2shacl->add_option("-s,--schema", schema_path)->required();
  schema2shacl->add_option("-o,--out", out_path);

  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("--config", config_path)->required();
  bench->add_option("--csv", csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*consequence) {
      if (!simple && !existential) simple = true;
      PrefixMap pm;
      const auto schema = parse_schema(read_file(schema_path), schema_path, &pm);
      const auto rules = parse_rules(read_file(rules_path), rules_path, &pm);
      const Algorithm mode = algo == "critical" ? Algorithm::critical : Algorithm::score;
      Context ctx = make_context(schema, rules, limits_for(timeout_ms));
      if (simple) {
        const auto r = simple_schema_consequence(schema, rules, mode, ctx);
        emit(write_schema(r.schema, pm), out_path);
      } else {
        const auto r = existential_schema_consequence(schema, rules, mode, ctx);
        emit(write_schema(r.schema, pm), out_path);
        std::cout << report_violations(r.report, pm);
      }
      return ok;
    }
    if (*validate) {
      PrefixMap pm;
      const auto schema = parse_schema(read_file(schema_path), schema_path, &pm);
      const auto g = parse_graph(read_file(graph_path), graph_path, &pm);
      if (!conforms_to_graph(g, schema)) {
        std::cout << "invalid: triples outside the schema graph\n";
        for (const auto& t : g)
          if (!conforms_to_graph({t}, schema)) std::cout << "  " << pm.render(t) << '\n';
        return invalid;
      }
      const auto v = violations(schema.existentials, g);
      if (!v.empty()) {
        std::cout << "invalid: " << v.size() << " existential violation(s)\n";
        for (const auto& x : v)
          std::cout << "  " << pm.render(apply_substitution(x.mapping, x.rule.antecedent))
                    << " lacks " << pm.render(x.rule.consequent) << '\n';
        return invalid;
      }
      std::cout << "valid\n";
      return ok;
    }
    if (*closure_cmd) {
      PrefixMap pm;
      const auto g = parse_graph(read_file(graph_path), graph_path, &pm);
      const auto rules = parse_rules(read_file(rules_path), rules_path, &pm);
      emit(write_graph(closure(g, rules), pm), out_path);
      return ok;
    }
    if (*applicable) {
      PrefixMap pm;
      const auto schema = parse_schema(read_file(schema_path), schema_path, &pm);
      const auto rules = parse_rules(read_file(rules_path), rules_path, &pm);
      Context ctx = make_context(schema, rules);
      for (const auto& name : applicable_rules(schema, rules, ctx)) std::cout << name << '\n';
      return ok;
    }
    if (*shacl2schema) {
      PrefixMap pm;
      const auto doc = parse_graph(read_file(shapes_path), shapes_path, &pm);
      emit(write_schema(shacl_to_schema(doc), pm), out_path);
      return ok;
    }
    if (*schema2shacl) {
      PrefixMap pm;
      const auto schema = parse_schema(read_file(schema_path), schema_path, &pm);
      pm.declare("shape", "urn:schemaforge:shape:");
      emit(write_graph(schema_to_shacl(schema), pm), out_path);
      return ok;
    }
    if (*bench) {
      BenchPlan plan;
      try {
        plan = parse_bench_plan(read_file(config_path));
      } catch (const std::invalid_argument& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return parse;
      }
      const auto records = run_benchmark(plan);
      if (csv_path.empty()) {
        write_csv(std::cout, records);
      } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        write_csv(out, records);
      }
      return ok;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return parse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (const UnsupportedShape& e) {
    std::cerr << "unsupported SHACL: " << e.what() << '\n';
    return unsupported;
  } catch (const SchemaError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return parse;
  }
  return usage;
}
