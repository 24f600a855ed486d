#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include "schemaforge/consequence.hpp"
#include "schemaforge/generator.hpp"

namespace schemaforge {

enum class BenchMode { simple, existential };
std::string_view to_string(BenchMode m);

struct BenchRecord {
  GeneratorConfig config;
  Algorithm algorithm = Algorithm::score;
  BenchMode mode = BenchMode::simple;
  double time_ms = 0;
  bool timed_out = false;
  std::size_t out_patterns = 0;
  std::size_t violated_count = 0;
};

struct BenchPlan {
  std::vector<GeneratorConfig> points;
  std::vector<Algorithm> algorithms{Algorithm::score};
  std::vector<BenchMode> modes{BenchMode::simple};
  std::chrono::milliseconds budget{600'000};
  int repetitions = 1;
};

/// JSON plan: {"budget_ms", "repetitions", "algorithms", "modes", "base": {config},
/// "sweep": {"param": name, "values": [...]}, "scale": {param: factor of the
/// swept value}}. SCHEMAFORGE_SEED, when set, replaces the base seed.
BenchPlan parse_bench_plan(const std::string& json_text);

/// One measured run. A run that exceeds the wall-clock budget or any other
/// resource bound is recorded as timed out with the budget as its time.
BenchRecord run_once(const GeneratorConfig& config, Algorithm algorithm, BenchMode mode,
                     std::chrono::milliseconds budget);

/// Mean time over repetitions (seeds seed, seed+1, ...); counts from the
/// first repetition. Timeouts never abort the sweep.
std::vector<BenchRecord> run_benchmark(const BenchPlan& plan);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace schemaforge
