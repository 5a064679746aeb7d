#include "devolve/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "devolve/random.hpp"

namespace devolve {

bool LinkSet::insert(LinkId id) {
  const auto i = static_cast<std::size_t>(id);
  if (members_.at(i)) return false;
  members_[i] = true;
  ++size_;
  return true;
}

std::vector<LinkId> LinkSet::to_vector() const {
  std::vector<LinkId> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(static_cast<LinkId>(i));
  return out;
}

void AllocParams::validate() const {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (psi && !(*psi >= 1.0)) throw std::invalid_argument("psi must be >= 1");
  if (r < 1 || r > q) throw std::invalid_argument("r must lie in [1, q]");
}

double AllocParams::psi_or_default(const Topology& topo) const {
  return psi.value_or(std::ceil(std::sqrt(static_cast<double>(topo.link_count()))));
}

void ControllerState::assign(Multipath m) {
  for (const auto& p : m.paths)
    for (const auto l : p.links) monitored.insert(l);
  const auto pair = m.pair;
  assigned.insert_or_assign(pair, std::move(m));
}

const Multipath* ControllerState::find(OrderedPair pair) const {
  const auto it = assigned.find(pair);
  return it == assigned.end() ? nullptr : &it->second;
}

double allocation_cost(const ControllerState& controller, const Multipath& m, double alpha) {
  std::size_t fresh = 0;
  for (const auto l : m.unique_links())
    if (!controller.monitored.contains(l)) ++fresh;
  return alpha * static_cast<double>(fresh) + static_cast<double>(controller.monitored.size());
}

std::vector<ControllerId> lowest_cost_controllers(std::span<const double> costs, int r) {
  std::vector<ControllerId> order(costs.size());
  std::iota(order.begin(), order.end(), ControllerId{0});
  std::stable_sort(order.begin(), order.end(), [&](ControllerId a, ControllerId b) {
    return costs[static_cast<std::size_t>(a)] < costs[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(r), order.size())));
  return order;
}

std::vector<OrderedPair> routed_pairs(const Topology& topo, const AllocParams& params) {
  return params.edge_endpoints_only ? edge_switch_pairs(topo) : all_ordered_pairs(topo);
}

std::vector<Multipath> enumerate_all_multipaths(const Topology& topo, const AllocParams& params) {
  params.validate();
  const LinkWeights unit(static_cast<std::size_t>(topo.link_count()));
  const auto options = params.multipath_options();
  std::vector<Multipath> out;
  for (const auto& pair : routed_pairs(topo, params)) out.push_back(find_multipath(topo, pair, options, unit));
  return out;
}

ControllerConfig empty_config(const Topology& topo, const AllocParams& params, std::string algorithm) {
  ControllerConfig config;
  config.algorithm = std::move(algorithm);
  config.params = params;
  config.node_count = topo.node_count();
  config.links.assign(topo.links().begin(), topo.links().end());
  const auto m = static_cast<std::size_t>(topo.link_count());
  for (ControllerId i = 0; i < params.q; ++i)
    config.controllers.push_back({i, LinkSet(m), LinkSet(m), {}});
  return config;
}

ControllerConfig path_partition(const Topology& topo, const AllocParams& params) {
  return path_partition(topo, params, enumerate_all_multipaths(topo, params));
}

ControllerConfig path_partition(const Topology& topo, const AllocParams& params,
                                std::span<const Multipath> multipaths) {
  params.validate();
  const auto pairs = routed_pairs(topo, params);
  if (multipaths.size() != pairs.size())
    throw std::invalid_argument("multipath set does not cover the routed pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (multipaths[i].pair != pairs[i]) throw std::invalid_argument("multipath set is out of pair order");

  Rng rng(params.seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(std::span(order), rng);

  auto config = empty_config(topo, params, "path-partition");
  std::vector<double> costs(static_cast<std::size_t>(params.q));
  for (const auto idx : order) {
    const auto& m = multipaths[idx];
    for (auto& c : config.controllers)
      costs[static_cast<std::size_t>(c.id)] = allocation_cost(c, m, params.alpha);
    const auto owners = lowest_cost_controllers(costs, params.r);
    for (const auto j : owners) config.controllers[static_cast<std::size_t>(j)].assign(m);
    config.mapping[m.pair] = owners;
  }
  return config;
}

ControllerConfig partition_path(const Topology& topo, const AllocParams& params) {
  params.validate();
  if (params.partition_tiers_only && !topo.has_tiers())
    throw std::invalid_argument("tier-restricted partitioning needs a topology with link tiers");

  const auto pairs = routed_pairs(topo, params);
  const auto m = static_cast<std::size_t>(topo.link_count());
  const double psi = params.psi_or_default(topo);
  const auto options = params.multipath_options();

  // Generator order: pair permutation first, then the link partition.
  Rng rng(params.seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(std::span(order), rng);

  auto config = empty_config(topo, params, "partition-path");
  const auto q = static_cast<std::uint64_t>(params.q);
  for (LinkId e = 0; e < topo.link_count(); ++e) {
    if (params.partition_tiers_only && topo.tier(e) != LinkTier::CoreAggregation) continue;
    config.controllers[uniform_below(rng, q)].preferred.insert(e);
  }

  std::vector<Multipath> candidates(static_cast<std::size_t>(params.q));
  std::vector<double> costs(static_cast<std::size_t>(params.q));
  for (const auto idx : order) {
    const auto pair = pairs[idx];
    for (auto& c : config.controllers) {
      LinkWeights weights(m, psi);
      for (LinkId e = 0; e < topo.link_count(); ++e)
        if (c.preferred.contains(e)) weights.set(e, 1.0);
      const auto i = static_cast<std::size_t>(c.id);
      candidates[i] = find_multipath(topo, pair, options, weights);
      costs[i] = allocation_cost(c, candidates[i], params.alpha);
    }
    const auto owners = lowest_cost_controllers(costs, params.r);
    for (const auto j : owners) {
      auto& c = config.controllers[static_cast<std::size_t>(j)];
      for (const auto l : candidates[static_cast<std::size_t>(j)].unique_links()) c.preferred.insert(l);
      c.assign(candidates[static_cast<std::size_t>(j)]);
    }
    config.mapping[pair] = owners;
  }
  return config;
}

}  // namespace devolve
