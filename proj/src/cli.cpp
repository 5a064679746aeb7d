#include "devolve/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "devolve/config_io.hpp"
#include "devolve/dispatch.hpp"

namespace devolve::cli {

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// Flags shared by `run` and `sweep`.
void add_run_flags(CLI::App& cmd, std::string& topo_source, std::string& algo, RunSpec& spec,
                   double& psi, double& temperature) {
  cmd.add_option("--topo", topo_source, "Edge-list file or fat-tree:P")->required();
  cmd.add_option("--algo", algo, "path-partition | partition-path | anneal")
      ->check(CLI::IsMember({"path-partition", "partition-path", "anneal"}));
  cmd.add_option("--q", spec.alloc.q, "Number of controllers");
  cmd.add_option("--k", spec.alloc.k, "Paths per ordered pair");
  cmd.add_option("--alpha", spec.alloc.alpha, "Weight of newly introduced links in the cost");
  cmd.add_option("--omega", spec.alloc.omega, "Penalty added to links of each found path");
  cmd.add_option("--psi", psi, "Partition-path weight of non-preferred links (default ceil(sqrt(|E|)))");
  cmd.add_option("--r", spec.alloc.r, "Controllers holding each pair (redundancy)");
  cmd.add_option("--seed", spec.alloc.seed, "Random seed");
  cmd.add_flag("--fixed-length", spec.alloc.fixed_length, "Only paths of shortest hop length");
  cmd.add_flag("--tiers-only", spec.alloc.partition_tiers_only,
               "Partition only core-aggregation links (fat trees)");
  cmd.add_flag("--edge-endpoints", spec.alloc.edge_endpoints_only, "Route only edge-switch pairs (fat trees)");
  cmd.add_option("--temp", temperature, "Annealing start temperature (default |E|)");
  cmd.add_option("--cooling", spec.anneal.cooling_factor, "Annealing geometric cooling factor");
  cmd.add_option("--iterations", spec.anneal.iterations, "Annealing iterations");
  cmd.add_option("--chains", spec.chains, "Independent annealing chains; best is kept");
  cmd.add_option("--threads", spec.threads, "Worker threads");
}

void finish_run_spec(RunSpec& spec, const std::string& algo, double psi, double temperature) {
  spec.algorithm = parse_algorithm(algo);
  if (psi > 0.0) spec.alloc.psi = psi;
  if (temperature >= 0.0) spec.anneal.initial_temperature = temperature;
  spec.anneal.seed = spec.alloc.seed;
}

std::vector<int> parse_values(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-', 1);
    try {
      if (dash != std::string::npos) {
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("empty range");
        for (int v = lo; v <= hi; ++v) values.push_back(v);
      } else {
        values.push_back(std::stoi(item));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--values", "cannot parse \"" + item + "\"");
    }
  }
  if (values.empty()) throw CLI::ValidationError("--values", "no values given");
  return values;
}

void print_report(const RunResult& result, bool csv, std::ostream& out) {
  if (csv) {
    out << metrics_csv_header() << ",seconds\n" << to_csv_row(result.report) << ',' << result.seconds << '\n';
    return;
  }
  auto j = to_json(result.report);
  j["algorithm"] = result.config.algorithm;
  j["seconds"] = result.seconds;
  out << j.dump(2) << '\n';
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "path-partition") return Algorithm::PathPartition;
  if (name == "partition-path") return Algorithm::PartitionPath;
  if (name == "anneal") return Algorithm::Anneal;
  throw std::invalid_argument("unknown algorithm \"" + name + "\"");
}

std::string algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::PathPartition:
      return "path-partition";
    case Algorithm::PartitionPath:
      return "partition-path";
    case Algorithm::Anneal:
      return "anneal";
  }
  return "?";
}

RunResult execute(const Topology& topo, const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (spec.algorithm) {
    case Algorithm::PathPartition:
      result.config = path_partition(topo, spec.alloc);
      break;
    case Algorithm::PartitionPath:
      result.config = partition_path(topo, spec.alloc);
      break;
    case Algorithm::Anneal: {
      const auto multipaths = enumerate_all_multipaths(topo, spec.alloc);
      const auto chains = static_cast<std::size_t>(std::max(1, spec.chains));
      std::vector<AnnealOutcome> outcomes(chains);
      parallel_for(chains, spec.threads, [&](std::size_t i) {
        auto params = spec.anneal;
        params.seed = spec.anneal.seed + i;
        outcomes[i] = anneal_assignment(topo, multipaths, spec.alloc.q, params);
      });
      std::size_t best = 0;
      for (std::size_t i = 1; i < chains; ++i)
        if (outcomes[i].best_objective < outcomes[best].best_objective) best = i;
      result.config = config_from_assignment(topo, multipaths, outcomes[best].assignment, spec.alloc.q, "anneal",
                                             spec.anneal.seed + best);
      result.config.params.alpha = spec.alloc.alpha;
      result.config.params.omega = spec.alloc.omega;
      result.config.params.fixed_length = spec.alloc.fixed_length;
      break;
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.report = measure(topo, result.config);
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SweepRecord> run_sweep(const Topology& topo, const SweepSpec& spec) {
  if (spec.vary != "q" && spec.vary != "k" && spec.vary != "r")
    throw std::invalid_argument("sweep can vary q, k or r, not \"" + spec.vary + "\"");
  if (spec.repeats < 1) throw std::invalid_argument("repeats must be >= 1");

  std::vector<SweepRecord> records(spec.values.size() * static_cast<std::size_t>(spec.repeats));
  parallel_for(records.size(), spec.threads, [&](std::size_t i) {
    const auto point = i / static_cast<std::size_t>(spec.repeats);
    const auto run = static_cast<int>(i % static_cast<std::size_t>(spec.repeats));
    auto run_spec = spec.base;
    run_spec.threads = 1;
    const int value = spec.values[point];
    if (spec.vary == "q") run_spec.alloc.q = value;
    if (spec.vary == "k") run_spec.alloc.k = value;
    if (spec.vary == "r") run_spec.alloc.r = value;
    // Redundancy cannot exceed the controller count.
    if (spec.vary == "q") run_spec.alloc.r = std::min(run_spec.alloc.r, value);
    const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(run);
    run_spec.alloc.seed = seed;
    run_spec.anneal.seed = seed;
    const auto result = execute(topo, run_spec);
    records[i] = {value, run, seed, result.report, result.seconds};
  });
  return records;
}

std::string sweep_csv_header() { return "kind,algo,vary,value,run,seed," + metrics_csv_header() + ",seconds"; }

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRecord>& records, std::ostream& out) {
  const auto algo = algorithm_name(spec.base.algorithm);
  out << sweep_csv_header() << '\n';
  for (const auto& r : records)
    out << "run," << algo << ',' << spec.vary << ',' << r.value << ',' << r.run << ',' << r.seed << ','
        << to_csv_row(r.report) << ',' << r.seconds << '\n';

  for (const auto value : spec.values) {
    std::vector<double> max_links, min_links, mean_links, hops, per_link, seconds;
    bool t1 = true, routable = true, consistent = true;
    std::size_t q = 0;
    for (const auto& r : records) {
      if (r.value != value) continue;
      const auto& rep = r.report;
      q = rep.per_controller_links.size();
      max_links.push_back(static_cast<double>(rep.max_links));
      min_links.push_back(static_cast<double>(rep.min_links));
      double mean = 0.0;
      for (const auto v : rep.per_controller_links) mean += static_cast<double>(v);
      mean_links.push_back(q ? mean / static_cast<double>(q) : 0.0);
      hops.push_back(rep.avg_hop_count);
      per_link.push_back(rep.avg_controllers_per_link);
      seconds.push_back(r.seconds);
      t1 = t1 && rep.theorem1_ok;
      routable = routable && rep.routable;
      consistent = consistent && rep.consistent;
    }
    if (max_links.empty()) continue;
    out << "median," << algo << ',' << spec.vary << ',' << value << ",,," << q << ',' << median(max_links) << ','
        << median(min_links) << ',' << median(mean_links) << ',' << median(hops) << ',' << median(per_link) << ','
        << (t1 ? 1 : 0) << ',' << (routable ? 1 : 0) << ',' << (consistent ? 1 : 0) << ",," << median(seconds)
        << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Configure devolved network controllers"};
  app.require_subcommand(1);

  // run
  RunSpec run_spec;
  run_spec.threads = default_threads();
  std::string run_topo, run_algo = "path-partition", run_out;
  double run_psi = -1.0, run_temp = -1.0;
  bool run_csv = false;
  auto* run_cmd = app.add_subcommand("run", "Allocate multipaths to controllers and report coverage");
  add_run_flags(*run_cmd, run_topo, run_algo, run_spec, run_psi, run_temp);
  run_cmd->add_option("--out", run_out, "Write the controller config JSON here");
  run_cmd->add_flag("--csv", run_csv, "Print the report as a CSV row instead of JSON");

  // sweep
  SweepSpec sweep;
  sweep.base.threads = default_threads();
  std::string sweep_topo, sweep_algo = "path-partition", sweep_values, sweep_out;
  double sweep_psi = -1.0, sweep_temp = -1.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat runs over a range of q, k or r and emit CSV");
  add_run_flags(*sweep_cmd, sweep_topo, sweep_algo, sweep.base, sweep_psi, sweep_temp);
  sweep_cmd->add_option("--vary", sweep.vary, "Parameter to vary")->check(CLI::IsMember({"q", "k", "r"}))->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma list and/or ranges, e.g. 1-4,6,8")->required();
  sweep_cmd->add_option("--repeats", sweep.repeats, "Seeded runs per value");
  sweep_cmd->add_option("--out", sweep_out, "CSV destination (default stdout)");

  // verify
  std::string verify_config, verify_topo;
  auto* verify_cmd = app.add_subcommand("verify", "Check routability, consistency and node coverage of a config");
  verify_cmd->add_option("--config", verify_config, "Config JSON")->required();
  verify_cmd->add_option("--topo", verify_topo, "Edge-list file or fat-tree:P")->required();

  // query
  std::string query_config, query_load, query_metric = "bottleneck";
  NodeId query_s = 0, query_t = 0;
  auto* query_cmd = app.add_subcommand("query", "Return the least congested stored route for a pair");
  query_cmd->add_option("--config", query_config, "Config JSON")->required();
  query_cmd->add_option("--s", query_s, "Source node id")->required();
  query_cmd->add_option("--t", query_t, "Destination node id")->required();
  query_cmd->add_option("--load", query_load, "CSV of link_id,utilization rows")->required();
  query_cmd->add_option("--metric", query_metric, "bottleneck | sum")->check(CLI::IsMember({"bottleneck", "sum"}));

  // topo
  std::string topo_source;
  bool topo_edges = false;
  auto* topo_cmd = app.add_subcommand("topo", "Print a topology summary");
  topo_cmd->add_option("--topo", topo_source, "Edge-list file or fat-tree:P")->required();
  topo_cmd->add_flag("--edges", topo_edges, "Print the normalised edge list");

  // space
  std::int64_t space_items = 0, space_q = 1;
  auto* space_cmd = app.add_subcommand("space", "Count ways to split items into q nonempty groups");
  space_cmd->add_option("--items", space_items, "Number of items (e.g. n(n-1) multipaths)")->required();
  space_cmd->add_option("--q", space_q, "Number of groups")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      finish_run_spec(run_spec, run_algo, run_psi, run_temp);
      const auto topo = topology_from_source(run_topo);
      const auto result = execute(topo, run_spec);
      if (!run_out.empty()) {
        ordered_json extra = ordered_json::object();
        if (run_spec.algorithm == Algorithm::Anneal)
          extra["anneal"] = {{"initial_temperature", run_spec.anneal.initial_temperature.value_or(topo.link_count())},
                             {"cooling_factor", run_spec.anneal.cooling_factor},
                             {"iterations", run_spec.anneal.iterations},
                             {"chains", run_spec.chains}};
        write_config_file(result.config, run_out, extra);
      }
      print_report(result, run_csv, out);
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      finish_run_spec(sweep.base, sweep_algo, sweep_psi, sweep_temp);
      sweep.values = parse_values(sweep_values);
      sweep.seed_base = sweep.base.alloc.seed;
      sweep.threads = sweep.base.threads;
      const auto topo = topology_from_source(sweep_topo);
      const auto records = run_sweep(topo, sweep);
      if (sweep_out.empty()) {
        write_sweep_csv(sweep, records, out);
      } else {
        std::ofstream file(sweep_out);
        if (!file) throw std::ios_base::failure("cannot write " + sweep_out);
        write_sweep_csv(sweep, records, file);
      }
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      const auto config = read_config_file(verify_config);
      const auto topo = topology_from_source(verify_topo);
      const auto report = measure(topo, config);
      out << "routability:  " << (report.routable ? "pass" : "FAIL") << '\n'
          << "consistency:  " << (report.consistent ? "pass" : "FAIL") << '\n'
          << "node-cover:   " << (report.theorem1_ok ? "pass" : "FAIL") << '\n';
      for (const auto& p : report.problems) out << "  - " << p << '\n';
      if (!report.routable) out << "fail: routability\n";
      if (!report.consistent) out << "fail: consistency\n";
      if (!report.theorem1_ok) out << "fail: node-cover\n";
      if (report.verified()) out << "pass\n";
      return report.verified() ? kExitOk : kExitVerifyFailed;
    }
    if (query_cmd->parsed()) {
      const auto config = read_config_file(query_config);
      std::ifstream load_file(query_load);
      if (!load_file) throw std::ios_base::failure("cannot open load file: " + query_load);
      const auto load = LinkLoadSnapshot::from_csv(load_file, config.links.size());
      const auto metric = query_metric == "sum" ? CongestionMetric::Sum : CongestionMetric::Bottleneck;
      const auto path = select_route(config, {query_s, query_t}, load, metric);
      for (std::size_t i = 0; i < path.nodes.size(); ++i) out << (i ? " " : "") << path.nodes[i];
      out << '\n';
      return kExitOk;
    }
    if (topo_cmd->parsed()) {
      const auto topo = topology_from_source(topo_source);
      if (topo_edges) {
        serialize_edge_list(topo, out);
      } else {
        out << "nodes " << topo.node_count() << "\nlinks " << topo.link_count() << "\nordered_pairs "
            << all_ordered_pairs(topo).size() << '\n';
      }
      return kExitOk;
    }
    if (space_cmd->parsed()) {
      out << solution_space_size(space_items, space_q) << '\n';
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace devolve::cli
