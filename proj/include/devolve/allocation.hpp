#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "devolve/multipath.hpp"
#include "devolve/topology.hpp"

namespace devolve {

using ControllerId = std::int32_t;

/// Fixed-universe set of link ids with O(1) membership and size.
class LinkSet {
 public:
  LinkSet() = default;
  explicit LinkSet(std::size_t universe) : members_(universe, false) {}

  bool contains(LinkId id) const { return members_[static_cast<std::size_t>(id)]; }
  /// Returns true when the link was not already present.
  bool insert(LinkId id);
  std::size_t size() const { return size_; }
  std::size_t universe() const { return members_.size(); }
  std::vector<LinkId> to_vector() const;

  friend bool operator==(const LinkSet&, const LinkSet&) = default;

 private:
  std::vector<bool> members_;
  std::size_t size_ = 0;
};

/// Every tunable consumed by the allocators.
struct AllocParams {
  int q = 4;
  int k = 4;
  double alpha = 4.0;
  double omega = 1.0;
  /// Weight of non-preferred links in partition-path; unset means ceil(sqrt(|E|)).
  std::optional<double> psi;
  int r = 1;
  std::uint64_t seed = 1;
  bool fixed_length = false;
  bool partition_tiers_only = false;
  /// Fat trees only: restrict flows to edge-switch pairs.
  bool edge_endpoints_only = false;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
  double psi_or_default(const Topology& topo) const;
  MultipathOptions multipath_options() const { return {k, omega, fixed_length, kDefaultCandidateLimit}; }
};

struct ControllerState {
  ControllerId id = 0;
  /// Union of links over `assigned`; the controller's monitoring duty.
  LinkSet monitored;
  /// Partition-path preferred links; empty under path-partition.
  LinkSet preferred;
  std::map<OrderedPair, Multipath> assigned;

  void assign(Multipath m);
  const Multipath* find(OrderedPair pair) const;
};

struct ControllerConfig {
  std::string algorithm;
  AllocParams params;
  std::int32_t node_count = 0;
  std::vector<Link> links;
  std::vector<ControllerState> controllers;
  /// Owning controllers per pair, cheapest first.
  std::map<OrderedPair, std::vector<ControllerId>> mapping;
};

/// alpha * (links of m not yet monitored) + (links already monitored).
double allocation_cost(const ControllerState& controller, const Multipath& m, double alpha);

/// Indices of the r smallest costs; ties go to the lower index.
std::vector<ControllerId> lowest_cost_controllers(std::span<const double> costs, int r);

/// Flow pairs the allocators route, honoring edge_endpoints_only.
std::vector<OrderedPair> routed_pairs(const Topology& topo, const AllocParams& params);

/// One multipath per routed pair (in routed_pairs order) found on unit weights.
std::vector<Multipath> enumerate_all_multipaths(const Topology& topo, const AllocParams& params);

/// Empty controllers and topology snapshot for a fresh config.
ControllerConfig empty_config(const Topology& topo, const AllocParams& params, std::string algorithm);

/// Path-partition: enumerate on the raw graph, then assign each multipath to
/// the r cheapest controllers, visiting pairs in seeded random order.
ControllerConfig path_partition(const Topology& topo, const AllocParams& params);

/// Path-partition over a precomputed multipath set (one per routed pair).
ControllerConfig path_partition(const Topology& topo, const AllocParams& params,
                                std::span<const Multipath> multipaths);

/// Partition-path: seed each controller with a random preferred link share,
/// then find one candidate multipath per controller biased toward its
/// preferred links and keep the cheapest.
ControllerConfig partition_path(const Topology& topo, const AllocParams& params);

}  // namespace devolve
