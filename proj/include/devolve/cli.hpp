#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "devolve/allocation.hpp"
#include "devolve/annealing.hpp"
#include "devolve/metrics.hpp"

namespace devolve::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Algorithm { PathPartition, PartitionPath, Anneal };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algo);

struct RunSpec {
  Algorithm algorithm = Algorithm::PathPartition;
  AllocParams alloc;
  AnnealParams anneal;
  /// Independent annealing chains (seeds anneal.seed, anneal.seed + 1, ...); best kept.
  int chains = 1;
  int threads = 1;
};

struct RunResult {
  ControllerConfig config;
  MetricsReport report;
  double seconds = 0.0;
};

RunResult execute(const Topology& topo, const RunSpec& spec);

struct SweepSpec {
  RunSpec base;
  /// One of "q", "k", "r".
  std::string vary = "q";
  std::vector<int> values;
  int repeats = 11;
  std::uint64_t seed_base = 1;
  int threads = 1;
};

struct SweepRecord {
  int value = 0;
  int run = 0;
  std::uint64_t seed = 0;
  MetricsReport report;
  double seconds = 0.0;
};

/// Runs every (value, repeat) point; run i of every value uses seed
/// seed_base + i. Records come back ordered by (value order, run).
std::vector<SweepRecord> run_sweep(const Topology& topo, const SweepSpec& spec);

/// Header, one "run" row per record, then one "median" row per value.
void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRecord>& records, std::ostream& out);

std::string sweep_csv_header();

double median(std::vector<double> values);

/// Entry point behind the `devolve` binary; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace devolve::cli
