#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "devolve/allocation.hpp"
#include "devolve/json.hpp"

namespace devolve {

/// The config was produced for a different topology.
class ConfigMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricsReport {
  std::vector<std::int64_t> per_controller_links;
  std::int64_t max_links = 0;
  std::int64_t min_links = 0;
  /// Mean hop count over the k paths of every routed pair's primary multipath.
  double avg_hop_count = 0.0;
  /// Sum over links of the controllers monitoring it, divided by |E|.
  double avg_controllers_per_link = 0.0;
  std::vector<std::int32_t> node_cover_counts;
  /// Some controller covers every node, or every node has >= 2 controllers.
  bool theorem1_ok = false;
  /// Every routed pair maps to r distinct controllers holding a valid multipath.
  bool routable = false;
  /// Every monitored set equals the union of its controller's multipath links.
  bool consistent = false;
  /// Human-readable reasons for any false flag.
  std::vector<std::string> problems;

  bool verified() const { return routable && theorem1_ok && consistent; }
};

/// True when `p` walks existing links from s to t without revisiting a node.
bool is_valid_path(const Topology& topo, const Path& p, OrderedPair pair);

MetricsReport measure(const Topology& topo, const ControllerConfig& config);

/// Ways to split `items` labelled items into `q` nonempty unlabelled blocks
/// (Stirling number of the second kind), via the alternating binomial sum.
boost::multiprecision::cpp_int solution_space_size(std::int64_t items, std::int64_t q);

ordered_json to_json(const MetricsReport& report);

/// Column names for to_csv_row, comma separated, no trailing newline.
std::string metrics_csv_header();
std::string to_csv_row(const MetricsReport& report);

}  // namespace devolve
