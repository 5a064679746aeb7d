#include "devolve/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "devolve/random.hpp"

namespace devolve {

namespace {

// Returns true when the set covers exactly the edge-switch pairs, false when
// it covers all ordered pairs; throws otherwise.
bool check_complete(const Topology& topo, std::span<const Multipath> multipaths) {
  std::vector<OrderedPair> pairs;
  pairs.reserve(multipaths.size());
  for (const auto& m : multipaths) pairs.push_back(m.pair);
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
    throw std::invalid_argument("multipath set lists a pair twice");
  if (pairs == all_ordered_pairs(topo)) return false;
  if (topo.has_roles() && pairs == edge_switch_pairs(topo)) return true;
  throw std::invalid_argument("incomplete multipath set: every routed pair needs exactly one multipath");
}

class CoverageState {
 public:
  CoverageState(std::size_t links, int q, std::span<const std::vector<LinkId>> footprints)
      : footprints_(footprints),
        counts_(static_cast<std::size_t>(q), std::vector<std::int32_t>(links, 0)),
        sizes_(static_cast<std::size_t>(q), 0) {}

  void add(std::size_t item, ControllerId c) {
    auto& row = counts_[static_cast<std::size_t>(c)];
    for (const auto l : footprints_[item])
      if (row[static_cast<std::size_t>(l)]++ == 0) ++sizes_[static_cast<std::size_t>(c)];
  }

  void remove(std::size_t item, ControllerId c) {
    auto& row = counts_[static_cast<std::size_t>(c)];
    for (const auto l : footprints_[item])
      if (--row[static_cast<std::size_t>(l)] == 0) --sizes_[static_cast<std::size_t>(c)];
  }

  std::int64_t objective() const { return *std::max_element(sizes_.begin(), sizes_.end()); }

  /// Objective after moving `item` from `from` to `to`, without applying it.
  std::int64_t objective_after_move(std::size_t item, ControllerId from, ControllerId to) const {
    const auto& from_row = counts_[static_cast<std::size_t>(from)];
    const auto& to_row = counts_[static_cast<std::size_t>(to)];
    std::int64_t from_size = sizes_[static_cast<std::size_t>(from)];
    std::int64_t to_size = sizes_[static_cast<std::size_t>(to)];
    for (const auto l : footprints_[item]) {
      if (from_row[static_cast<std::size_t>(l)] == 1) --from_size;
      if (to_row[static_cast<std::size_t>(l)] == 0) ++to_size;
    }
    std::int64_t best = std::max(from_size, to_size);
    for (std::size_t c = 0; c < sizes_.size(); ++c)
      if (static_cast<ControllerId>(c) != from && static_cast<ControllerId>(c) != to)
        best = std::max(best, sizes_[c]);
    return best;
  }

 private:
  std::span<const std::vector<LinkId>> footprints_;
  std::vector<std::vector<std::int32_t>> counts_;
  std::vector<std::int64_t> sizes_;
};

}  // namespace

void AnnealParams::validate() const {
  if (initial_temperature && !(*initial_temperature >= 0.0))
    throw std::invalid_argument("initial temperature must be >= 0");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw std::invalid_argument("cooling factor must lie in (0, 1)");
  if (iterations < 1) throw std::invalid_argument("iterations must be positive");
}

std::int64_t max_coverage(const Topology& topo, std::span<const Multipath> multipaths,
                          std::span<const ControllerId> assignment, int q) {
  if (assignment.size() != multipaths.size()) throw std::invalid_argument("assignment size mismatch");
  std::vector<std::vector<LinkId>> footprints;
  footprints.reserve(multipaths.size());
  for (const auto& m : multipaths) footprints.push_back(m.unique_links());
  CoverageState state(static_cast<std::size_t>(topo.link_count()), q, footprints);
  for (std::size_t i = 0; i < assignment.size(); ++i) state.add(i, assignment[i]);
  return state.objective();
}

AnnealOutcome anneal_assignment(const Topology& topo, std::span<const Multipath> multipaths, int q,
                                const AnnealParams& params,
                                std::optional<std::span<const ControllerId>> initial) {
  params.validate();
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  check_complete(topo, multipaths);

  std::vector<std::vector<LinkId>> footprints;
  footprints.reserve(multipaths.size());
  for (const auto& m : multipaths) footprints.push_back(m.unique_links());

  AnnealOutcome out;
  if (initial) {
    if (initial->size() != multipaths.size()) throw std::invalid_argument("initial assignment size mismatch");
    for (const auto c : *initial)
      if (c < 0 || c >= q) throw std::invalid_argument("initial assignment names an unknown controller");
    out.assignment.assign(initial->begin(), initial->end());
  } else {
    out.assignment.assign(multipaths.size(), 0);
  }

  CoverageState state(static_cast<std::size_t>(topo.link_count()), q, footprints);
  for (std::size_t i = 0; i < out.assignment.size(); ++i) state.add(i, out.assignment[i]);
  out.initial_objective = state.objective();
  out.best_objective = out.initial_objective;
  if (q == 1 || multipaths.empty()) return out;

  Rng rng(params.seed);
  auto current = out.assignment;
  std::int64_t objective = out.initial_objective;
  double temperature = params.initial_temperature.value_or(static_cast<double>(topo.link_count()));
  const auto item_count = static_cast<std::uint64_t>(multipaths.size());
  const auto other_count = static_cast<std::uint64_t>(q - 1);

  for (std::int64_t it = 0; it < params.iterations; ++it) {
    const auto item = static_cast<std::size_t>(uniform_below(rng, item_count));
    const ControllerId from = current[item];
    auto to = static_cast<ControllerId>(uniform_below(rng, other_count));
    if (to >= from) ++to;

    const std::int64_t candidate = state.objective_after_move(item, from, to);
    const auto delta = static_cast<double>(candidate - objective);
    bool accept = delta <= 0.0;
    if (!accept && temperature > 0.0) accept = uniform_unit(rng) < std::exp(-delta / temperature);

    if (accept) {
      state.remove(item, from);
      state.add(item, to);
      current[item] = to;
      objective = candidate;
      ++out.accepted_moves;
      if (delta > 0.0) ++out.worsening_moves_accepted;
      if (objective < out.best_objective) {
        out.best_objective = objective;
        out.assignment = current;
      }
    }
    temperature *= params.cooling_factor;
  }
  return out;
}

ControllerConfig config_from_assignment(const Topology& topo, std::span<const Multipath> multipaths,
                                        std::span<const ControllerId> assignment, int q,
                                        std::string algorithm, std::uint64_t seed) {
  if (assignment.size() != multipaths.size()) throw std::invalid_argument("assignment size mismatch");
  AllocParams params;
  params.q = q;
  params.k = multipaths.empty() ? 1 : static_cast<int>(multipaths.front().paths.size());
  params.r = 1;
  params.seed = seed;
  params.edge_endpoints_only = check_complete(topo, multipaths);

  auto config = empty_config(topo, params, std::move(algorithm));
  for (std::size_t i = 0; i < multipaths.size(); ++i) {
    const auto c = assignment[i];
    if (c < 0 || c >= q) throw std::invalid_argument("assignment names an unknown controller");
    config.controllers[static_cast<std::size_t>(c)].assign(multipaths[i]);
    config.mapping[multipaths[i].pair] = {c};
  }
  return config;
}

ControllerConfig anneal_allocation(const Topology& topo, std::span<const Multipath> multipaths, int q,
                                   const AnnealParams& params) {
  const auto outcome = anneal_assignment(topo, multipaths, q, params);
  return config_from_assignment(topo, multipaths, outcome.assignment, q, "anneal", params.seed);
}

}  // namespace devolve
