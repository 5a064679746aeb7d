#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "devolve/allocation.hpp"

namespace devolve {

/// The mapping table has no entry for a well-formed pair.
class UnknownPair : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-link utilization observed by the controllers; one value per link.
class LinkLoadSnapshot {
 public:
  explicit LinkLoadSnapshot(std::vector<double> utilization);

  /// Reads "link_id,utilization" rows; an optional header row and '#'
  /// comments are skipped. Every link in [0, link_count) must appear once.
  static LinkLoadSnapshot from_csv(std::istream& in, std::size_t link_count);

  double operator[](LinkId id) const { return utilization_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return utilization_.size(); }

 private:
  std::vector<double> utilization_;
};

enum class CongestionMetric { Bottleneck, Sum };

/// Owning controller ids, cheapest first.
std::vector<ControllerId> resolve(const ControllerConfig& config, OrderedPair pair);

/// Congestion of one path under `metric`.
double path_congestion(const Path& path, const LinkLoadSnapshot& load, CongestionMetric metric);

/// Least-congested stored path at the pair's first owning controller. Ties go
/// to fewer hops, then the lexicographically smaller node sequence.
Path select_route(const ControllerConfig& config, OrderedPair pair, const LinkLoadSnapshot& load,
                  CongestionMetric metric = CongestionMetric::Bottleneck);

}  // namespace devolve
