#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace devolve {

using NodeId = std::int32_t;
using LinkId = std::int32_t;

/// Raised when edge-list text cannot be tokenized.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a graph violates a structural invariant (self-loop, duplicate,
/// disconnected, bad generator arguments).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LinkTier : std::uint8_t { Untagged, CoreAggregation, AggregationEdge };
enum class NodeRole : std::uint8_t { Unspecified, Core, Aggregation, Edge };

/// Undirected link, endpoints stored with u < v.
struct Link {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

struct Adjacent {
  NodeId neighbor = 0;
  LinkId link = 0;
};

/// A flow is identified by its ordered source/destination pair.
struct OrderedPair {
  NodeId s = 0;
  NodeId t = 0;

  friend bool operator==(const OrderedPair&, const OrderedPair&) = default;
  friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
};

/// Immutable, connected, simple undirected graph with dense node and link ids.
///
/// Links keep the order they were given in; per-node adjacency lists are
/// sorted by neighbor id so that every traversal is deterministic.
class Topology {
 public:
  /// Validates and builds. `tiers` and `roles` are either empty or sized to
  /// the link and node count respectively; `labels` defaults to 0..n-1.
  Topology(std::int32_t node_count, std::vector<Link> links,
           std::vector<LinkTier> tiers = {}, std::vector<NodeRole> roles = {},
           std::vector<std::int64_t> labels = {});

  std::int32_t node_count() const { return node_count_; }
  std::int32_t link_count() const { return static_cast<std::int32_t>(links_.size()); }

  const Link& link(LinkId id) const { return links_.at(static_cast<std::size_t>(id)); }
  std::span<const Link> links() const { return links_; }
  std::span<const Adjacent> neighbors(NodeId v) const;
  std::optional<LinkId> find_link(NodeId a, NodeId b) const;

  bool has_tiers() const { return !tiers_.empty(); }
  LinkTier tier(LinkId id) const;
  bool has_roles() const { return !roles_.empty(); }
  NodeRole role(NodeId v) const;

  /// Original label of a node as it appeared in the source file.
  std::int64_t label(NodeId v) const { return labels_.at(static_cast<std::size_t>(v)); }

 private:
  std::int32_t node_count_;
  std::vector<Link> links_;
  std::vector<LinkTier> tiers_;
  std::vector<NodeRole> roles_;
  std::vector<std::int64_t> labels_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<Adjacent> adjacency_;
};

/// Parses "u v" lines ('#' comments and blank lines skipped). Labels are
/// compacted to dense ids in ascending label order.
Topology load_edge_list(std::istream& in);
Topology load_edge_list_file(const std::string& path);

/// Writes sorted "u v" lines using dense ids.
void serialize_edge_list(const Topology& topo, std::ostream& out);

/// Three-layer switch-only fat tree built from `ports`-port switches.
Topology generate_fat_tree(int ports);

/// Resolves either a "fat-tree:P" URI or an edge-list file path.
Topology topology_from_source(const std::string& source);

std::vector<OrderedPair> all_ordered_pairs(const Topology& topo);

/// Ordered pairs restricted to nodes carrying the Edge role.
std::vector<OrderedPair> edge_switch_pairs(const Topology& topo);

}  // namespace devolve
