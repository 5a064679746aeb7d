#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "devolve/topology.hpp"

namespace devolve {

/// A simple walk: links[i] joins nodes[i] and nodes[i + 1].
struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;

  std::size_t hops() const { return links.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// k paths for one ordered pair, in discovery order. Paths may repeat when
/// the graph offers fewer than k alternatives.
struct Multipath {
  OrderedPair pair;
  std::vector<Path> paths;

  /// Distinct links over all paths, ascending.
  std::vector<LinkId> unique_links() const;
  friend bool operator==(const Multipath&, const Multipath&) = default;
};

/// Per-link path-finding weight; every weight stays >= 1.
class LinkWeights {
 public:
  LinkWeights(std::size_t link_count, double initial = 1.0);

  double operator[](LinkId id) const { return weights_[static_cast<std::size_t>(id)]; }
  void set(LinkId id, double w);
  void add(LinkId id, double delta);
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// The enumerator bailed out; see enumerate_fixed_length_multipath.
class CandidateLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCandidateLimit = 10'000;

struct MultipathOptions {
  int k = 4;
  double omega = 1.0;
  bool fixed_length = false;
  std::size_t candidate_limit = kDefaultCandidateLimit;
};

/// Minimum-weight s-t path. Among equal-weight paths the lexicographically
/// smallest node sequence wins.
Path shortest_path(const Topology& topo, NodeId s, NodeId t, const LinkWeights& weights);

/// Unweighted hop distance from `from` to every node.
std::vector<int> hop_distances(const Topology& topo, NodeId from);

/// Runs shortest_path k times on a private copy of `initial`, adding `omega`
/// to every link of each path found before the next search.
Multipath enumerate_multipath(const Topology& topo, OrderedPair pair, int k, double omega,
                              const LinkWeights& initial);

/// Same penalty loop, restricted to paths whose hop count equals the
/// unweighted s-t distance. Candidates are enumerated exhaustively, so the
/// call throws CandidateLimitExceeded when there are more than
/// `candidate_limit` of them; use enumerate_multipath for such graphs.
Multipath enumerate_fixed_length_multipath(const Topology& topo, OrderedPair pair, int k, double omega,
                                           const LinkWeights& initial,
                                           std::size_t candidate_limit = kDefaultCandidateLimit);

/// Dispatches on options.fixed_length.
Multipath find_multipath(const Topology& topo, OrderedPair pair, const MultipathOptions& options,
                         const LinkWeights& initial);

}  // namespace devolve
