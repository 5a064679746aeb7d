#include "devolve/metrics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace devolve {

bool is_valid_path(const Topology& topo, const Path& p, OrderedPair pair) {
  if (p.links.empty() || p.nodes.size() != p.links.size() + 1) return false;
  if (p.nodes.front() != pair.s || p.nodes.back() != pair.t) return false;
  std::set<NodeId> seen;
  for (const auto v : p.nodes) {
    if (v < 0 || v >= topo.node_count() || !seen.insert(v).second) return false;
  }
  for (std::size_t i = 0; i < p.links.size(); ++i) {
    const auto id = topo.find_link(p.nodes[i], p.nodes[i + 1]);
    if (!id || *id != p.links[i]) return false;
  }
  return true;
}

MetricsReport measure(const Topology& topo, const ControllerConfig& config) {
  if (config.node_count != topo.node_count() ||
      !std::equal(config.links.begin(), config.links.end(), topo.links().begin(), topo.links().end()))
    throw ConfigMismatch("config was built for a different topology");
  const auto& params = config.params;
  if (static_cast<int>(config.controllers.size()) != params.q)
    throw ConfigMismatch("config holds " + std::to_string(config.controllers.size()) +
                         " controllers but declares q=" + std::to_string(params.q));

  MetricsReport report;
  const auto m = static_cast<std::size_t>(topo.link_count());
  const auto n = static_cast<std::size_t>(topo.node_count());

  // Monitoring load and node coverage.
  report.consistent = true;
  std::int64_t link_slots = 0;
  report.node_cover_counts.assign(n, 0);
  bool someone_covers_all = false;
  for (const auto& c : config.controllers) {
    const auto size = static_cast<std::int64_t>(c.monitored.size());
    report.per_controller_links.push_back(size);
    link_slots += size;

    LinkSet expected(m);
    for (const auto& [pair, mp] : c.assigned)
      for (const auto& p : mp.paths)
        for (const auto l : p.links)
          if (l >= 0 && static_cast<std::size_t>(l) < m) expected.insert(l);
    if (!(c.monitored == expected)) {
      report.consistent = false;
      report.problems.push_back("controller " + std::to_string(c.id) +
                                ": monitored set differs from the links of its multipaths");
    }

    std::vector<bool> covered(n, false);
    if (c.monitored.universe() == m) {
      for (const auto l : c.monitored.to_vector()) {
        covered[static_cast<std::size_t>(topo.link(l).u)] = true;
        covered[static_cast<std::size_t>(topo.link(l).v)] = true;
      }
    }
    const auto count = std::count(covered.begin(), covered.end(), true);
    if (static_cast<std::size_t>(count) == n) someone_covers_all = true;
    for (std::size_t v = 0; v < n; ++v)
      if (covered[v]) ++report.node_cover_counts[v];
  }
  if (!report.per_controller_links.empty()) {
    const auto [lo, hi] =
        std::minmax_element(report.per_controller_links.begin(), report.per_controller_links.end());
    report.min_links = *lo;
    report.max_links = *hi;
  }
  report.avg_controllers_per_link = m ? static_cast<double>(link_slots) / static_cast<double>(m) : 0.0;

  report.theorem1_ok =
      someone_covers_all || std::all_of(report.node_cover_counts.begin(), report.node_cover_counts.end(),
                                        [](std::int32_t c) { return c >= 2; });
  if (!report.theorem1_ok)
    report.problems.push_back("a node is covered by a single controller that does not cover every node");

  // Routability and hop statistics.
  report.routable = true;
  auto fail_route = [&](const std::string& why) {
    if (report.routable) report.problems.push_back(why);
    report.routable = false;
  };
  const auto pairs = routed_pairs(topo, params);
  std::int64_t hops = 0;
  std::int64_t path_count = 0;
  for (const auto& pair : pairs) {
    const auto label = "(" + std::to_string(pair.s) + "," + std::to_string(pair.t) + ")";
    const auto it = config.mapping.find(pair);
    if (it == config.mapping.end()) {
      fail_route("pair " + label + " has no mapping entry");
      continue;
    }
    const auto& owners = it->second;
    std::set<ControllerId> distinct(owners.begin(), owners.end());
    if (static_cast<int>(owners.size()) != params.r || distinct.size() != owners.size())
      fail_route("pair " + label + " does not map to exactly r distinct controllers");
    for (std::size_t i = 0; i < owners.size(); ++i) {
      const auto id = owners[i];
      if (id < 0 || id >= params.q) {
        fail_route("pair " + label + " maps to unknown controller " + std::to_string(id));
        continue;
      }
      const auto* mp = config.controllers[static_cast<std::size_t>(id)].find(pair);
      if (mp == nullptr) {
        fail_route("controller " + std::to_string(id) + " holds no multipath for " + label);
        continue;
      }
      if (static_cast<int>(mp->paths.size()) != params.k)
        fail_route("multipath for " + label + " does not hold k paths");
      for (const auto& p : mp->paths) {
        if (!is_valid_path(topo, p, pair)) fail_route("invalid stored path for " + label);
        if (i == 0) {
          hops += static_cast<std::int64_t>(p.hops());
          ++path_count;
        }
      }
    }
  }
  if (config.mapping.size() != pairs.size()) fail_route("mapping table lists pairs outside the routed set");
  report.avg_hop_count = path_count ? static_cast<double>(hops) / static_cast<double>(path_count) : 0.0;
  return report;
}

boost::multiprecision::cpp_int solution_space_size(std::int64_t items, std::int64_t q) {
  using boost::multiprecision::cpp_int;
  if (items < 0 || q < 1) throw std::invalid_argument("need items >= 0 and q >= 1");
  cpp_int sum = 0;
  cpp_int binom = 1;  // C(q, j)
  for (std::int64_t j = 0; j <= q; ++j) {
    const cpp_int term = binom * boost::multiprecision::pow(cpp_int(q - j), static_cast<unsigned>(items));
    sum += (j % 2 == 0) ? term : cpp_int(-term);
    binom = binom * (q - j) / (j + 1);
  }
  cpp_int factorial = 1;
  for (std::int64_t i = 2; i <= q; ++i) factorial *= i;
  return sum / factorial;
}

ordered_json to_json(const MetricsReport& report) {
  ordered_json j;
  j["per_controller_links"] = report.per_controller_links;
  j["max_links"] = report.max_links;
  j["min_links"] = report.min_links;
  j["avg_hop_count"] = report.avg_hop_count;
  j["avg_controllers_per_link"] = report.avg_controllers_per_link;
  j["node_cover_counts"] = report.node_cover_counts;
  j["theorem1_ok"] = report.theorem1_ok;
  j["routable"] = report.routable;
  j["consistent"] = report.consistent;
  j["problems"] = report.problems;
  return j;
}

std::string metrics_csv_header() {
  return "q,max_links,min_links,mean_links,avg_hop_count,avg_controllers_per_link,"
         "theorem1_ok,routable,consistent,per_controller_links";
}

std::string to_csv_row(const MetricsReport& report) {
  std::ostringstream out;
  out.precision(6);
  double mean = 0.0;
  for (const auto v : report.per_controller_links) mean += static_cast<double>(v);
  if (!report.per_controller_links.empty()) mean /= static_cast<double>(report.per_controller_links.size());
  out << report.per_controller_links.size() << ',' << report.max_links << ',' << report.min_links << ','
      << mean << ',' << report.avg_hop_count << ',' << report.avg_controllers_per_link << ','
      << (report.theorem1_ok ? 1 : 0) << ',' << (report.routable ? 1 : 0) << ','
      << (report.consistent ? 1 : 0) << ',';
  for (std::size_t i = 0; i < report.per_controller_links.size(); ++i) {
    if (i) out << ';';
    out << report.per_controller_links[i];
  }
  return out.str();
}

}  // namespace devolve
