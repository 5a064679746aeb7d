#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "devolve/allocation.hpp"

namespace devolve {

struct AnnealParams {
  /// Unset means |E| of the topology being annealed. Zero gives pure descent.
  std::optional<double> initial_temperature;
  double cooling_factor = 0.999;
  std::int64_t iterations = 200'000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AnnealOutcome {
  /// Controller of each multipath, indexed like the input list; best state seen.
  std::vector<ControllerId> assignment;
  std::int64_t initial_objective = 0;
  std::int64_t best_objective = 0;
  std::int64_t accepted_moves = 0;
  std::int64_t worsening_moves_accepted = 0;
};

/// Largest monitored-set size over q controllers for an assignment.
std::int64_t max_coverage(const Topology& topo, std::span<const Multipath> multipaths,
                          std::span<const ControllerId> assignment, int q);

/// Simulated annealing over multipath-to-controller assignments minimising
/// the largest monitored-set size. Starts from `initial` when given,
/// otherwise from everything on controller 0.
AnnealOutcome anneal_assignment(const Topology& topo, std::span<const Multipath> multipaths, int q,
                                const AnnealParams& params,
                                std::optional<std::span<const ControllerId>> initial = std::nullopt);

/// Builds the config (monitored sets, mapping) for a fixed assignment.
ControllerConfig config_from_assignment(const Topology& topo, std::span<const Multipath> multipaths,
                                        std::span<const ControllerId> assignment, int q,
                                        std::string algorithm, std::uint64_t seed);

/// anneal_assignment followed by config_from_assignment on the best state.
ControllerConfig anneal_allocation(const Topology& topo, std::span<const Multipath> multipaths, int q,
                                   const AnnealParams& params);

}  // namespace devolve
