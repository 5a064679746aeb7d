#include "devolve/multipath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

namespace devolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

void check_pair(const Topology& topo, OrderedPair pair) {
  const auto n = topo.node_count();
  if (pair.s < 0 || pair.s >= n || pair.t < 0 || pair.t >= n)
    throw std::out_of_range("pair endpoint out of range");
  if (pair.s == pair.t) throw std::invalid_argument("pair endpoints must differ");
}

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

void check_omega(double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
}

// Dijkstra toward `target`; undirected, so distance-to equals distance-from.
std::vector<double> distances_to(const Topology& topo, NodeId target, const LinkWeights& w) {
  std::vector<double> dist(static_cast<std::size_t>(topo.node_count()), kInf);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[static_cast<std::size_t>(target)] = 0.0;
  heap.push({0.0, target});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& adj : topo.neighbors(u)) {
      const double nd = d + w[adj.link];
      auto& slot = dist[static_cast<std::size_t>(adj.neighbor)];
      if (nd < slot) {
        slot = nd;
        heap.push({nd, adj.neighbor});
      }
    }
  }
  return dist;
}

double path_weight(const Path& p, const LinkWeights& w) {
  double total = 0.0;
  for (const auto l : p.links) total += w[l];
  return total;
}

}  // namespace

std::vector<LinkId> Multipath::unique_links() const {
  std::vector<LinkId> out;
  for (const auto& p : paths) out.insert(out.end(), p.links.begin(), p.links.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LinkWeights::LinkWeights(std::size_t link_count, double initial) : weights_(link_count, initial) {
  if (!(initial >= 1.0)) throw std::invalid_argument("link weights must be >= 1");
}

void LinkWeights::set(LinkId id, double w) {
  if (!(w >= 1.0)) throw std::invalid_argument("link weights must be >= 1");
  weights_.at(static_cast<std::size_t>(id)) = w;
}

void LinkWeights::add(LinkId id, double delta) {
  set(id, weights_.at(static_cast<std::size_t>(id)) + delta);
}

Path shortest_path(const Topology& topo, NodeId s, NodeId t, const LinkWeights& weights) {
  check_pair(topo, {s, t});
  if (weights.size() != static_cast<std::size_t>(topo.link_count()))
    throw std::invalid_argument("weight vector does not match link count");

  const auto dist = distances_to(topo, t, weights);
  if (dist[static_cast<std::size_t>(s)] == kInf)
    throw std::logic_error("no path between connected nodes");

  // Greedy descent: the smallest neighbor that stays on some shortest path
  // yields the lexicographically smallest node sequence.
  Path path;
  path.nodes.push_back(s);
  NodeId u = s;
  while (u != t) {
    const double here = dist[static_cast<std::size_t>(u)];
    bool advanced = false;
    for (const auto& adj : topo.neighbors(u)) {
      const double there = dist[static_cast<std::size_t>(adj.neighbor)];
      if (there < here && nearly_equal(here, weights[adj.link] + there)) {
        path.nodes.push_back(adj.neighbor);
        path.links.push_back(adj.link);
        u = adj.neighbor;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw std::logic_error("shortest-path descent stalled");
  }
  return path;
}

std::vector<int> hop_distances(const Topology& topo, NodeId from) {
  std::vector<int> dist(static_cast<std::size_t>(topo.node_count()), -1);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(from)] = 0;
  frontier.push(from);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (const auto& adj : topo.neighbors(u)) {
      auto& d = dist[static_cast<std::size_t>(adj.neighbor)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(adj.neighbor);
      }
    }
  }
  return dist;
}

Multipath enumerate_multipath(const Topology& topo, OrderedPair pair, int k, double omega,
                              const LinkWeights& initial) {
  check_pair(topo, pair);
  check_k(k);
  check_omega(omega);
  LinkWeights weights = initial;
  Multipath mp{pair, {}};
  mp.paths.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    Path p = shortest_path(topo, pair.s, pair.t, weights);
    for (const auto l : p.links) weights.add(l, omega);
    mp.paths.push_back(std::move(p));
  }
  return mp;
}

Multipath enumerate_fixed_length_multipath(const Topology& topo, OrderedPair pair, int k, double omega,
                                           const LinkWeights& initial, std::size_t candidate_limit) {
  check_pair(topo, pair);
  check_k(k);
  check_omega(omega);
  if (initial.size() != static_cast<std::size_t>(topo.link_count()))
    throw std::invalid_argument("weight vector does not match link count");

  // Every hop must close the remaining distance by one, so the search only
  // walks the shortest-path DAG and emits candidates in lexicographic order.
  const auto to_target = hop_distances(topo, pair.t);
  std::vector<Path> candidates;
  Path current;
  current.nodes.push_back(pair.s);
  std::function<void(NodeId)> extend = [&](NodeId u) {
    if (u == pair.t) {
      if (candidates.size() == candidate_limit)
        throw CandidateLimitExceeded(
            "more than " + std::to_string(candidate_limit) +
            " equal-length candidate paths; use the general multipath enumerator for this topology");
      candidates.push_back(current);
      return;
    }
    const int remaining = to_target[static_cast<std::size_t>(u)];
    for (const auto& adj : topo.neighbors(u)) {
      if (to_target[static_cast<std::size_t>(adj.neighbor)] != remaining - 1) continue;
      current.nodes.push_back(adj.neighbor);
      current.links.push_back(adj.link);
      extend(adj.neighbor);
      current.nodes.pop_back();
      current.links.pop_back();
    }
  };
  extend(pair.s);

  LinkWeights weights = initial;
  Multipath mp{pair, {}};
  mp.paths.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::size_t best = 0;
    double best_weight = path_weight(candidates[0], weights);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      const double w = path_weight(candidates[c], weights);
      if (w < best_weight && !nearly_equal(w, best_weight)) {
        best = c;
        best_weight = w;
      }
    }
    for (const auto l : candidates[best].links) weights.add(l, omega);
    mp.paths.push_back(candidates[best]);
  }
  return mp;
}

Multipath find_multipath(const Topology& topo, OrderedPair pair, const MultipathOptions& options,
                         const LinkWeights& initial) {
  if (options.fixed_length)
    return enumerate_fixed_length_multipath(topo, pair, options.k, options.omega, initial,
                                            options.candidate_limit);
  return enumerate_multipath(topo, pair, options.k, options.omega, initial);
}

}  // namespace devolve
