#pragma once

// Config checks computed directly from the raw config contents, without
// going through measure().

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "devolve/allocation.hpp"
#include "oracles.hpp"

namespace oracle {

struct ConfigAudit {
  bool routable = true;
  bool consistent = true;
  bool dichotomy = true;
  std::size_t paths_walked = 0;
  std::size_t paths_failed = 0;
  std::vector<int> node_cover;
  std::string first_problem;

  bool ok() const { return routable && consistent && dichotomy && paths_failed == 0; }
};

inline ConfigAudit audit(const devolve::Topology& topo, const devolve::ControllerConfig& config,
                         const std::vector<devolve::OrderedPair>& pairs) {
  ConfigAudit a;
  auto note = [&](const std::string& s) {
    if (a.first_problem.empty()) a.first_problem = s;
  };
  const int n = topo.node_count();
  const int q = config.params.q;
  const int r = config.params.r;

  for (const auto& c : config.controllers) {
    std::set<int> expected;
    for (const auto& [pair, mp] : c.assigned)
      for (const auto& p : mp.paths) expected.insert(p.links.begin(), p.links.end());
    const auto have = c.monitored.to_vector();
    if (std::set<int>(have.begin(), have.end()) != expected) {
      a.consistent = false;
      note("monitored set mismatch at controller " + std::to_string(c.id));
    }
  }

  if (config.mapping.size() != pairs.size()) {
    a.routable = false;
    note("mapping size");
  }
  for (const auto& pair : pairs) {
    const auto it = config.mapping.find(pair);
    if (it == config.mapping.end()) {
      a.routable = false;
      note("unmapped pair");
      continue;
    }
    const auto& owners = it->second;
    if (static_cast<int>(std::set<int>(owners.begin(), owners.end()).size()) != r ||
        static_cast<int>(owners.size()) != r) {
      a.routable = false;
      note("owner count");
    }
    for (auto id : owners) {
      if (id < 0 || id >= q) {
        a.routable = false;
        continue;
      }
      const auto& held = config.controllers[static_cast<std::size_t>(id)].assigned;
      const auto mp = held.find(pair);
      if (mp == held.end() || static_cast<int>(mp->second.paths.size()) != config.params.k) {
        a.routable = false;
        note("owner lacks multipath");
        continue;
      }
      for (const auto& p : mp->second.paths) {
        ++a.paths_walked;
        if (!walk_ok(topo.links(), p, pair.s, pair.t)) {
          ++a.paths_failed;
          note("bad path");
        }
      }
    }
  }

  a.node_cover.assign(static_cast<std::size_t>(n), 0);
  bool full = false;
  for (const auto& c : config.controllers) {
    std::set<int> nodes;
    for (auto l : c.monitored.to_vector()) {
      nodes.insert(topo.link(l).u);
      nodes.insert(topo.link(l).v);
    }
    for (int v : nodes) ++a.node_cover[static_cast<std::size_t>(v)];
    full = full || static_cast<int>(nodes.size()) == n;
  }
  a.dichotomy = full || std::all_of(a.node_cover.begin(), a.node_cover.end(), [](int c) { return c >= 2; });
  if (!a.dichotomy) note("node covered once");
  return a;
}

}  // namespace oracle
