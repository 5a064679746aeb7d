#include "devolve/topology.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace devolve {

namespace {

constexpr std::string_view kFatTreePrefix = "fat-tree:";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> parse_int(std::string_view token) {
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Topology::Topology(std::int32_t node_count, std::vector<Link> links,
                   std::vector<LinkTier> tiers, std::vector<NodeRole> roles,
                   std::vector<std::int64_t> labels)
    : node_count_(node_count),
      links_(std::move(links)),
      tiers_(std::move(tiers)),
      roles_(std::move(roles)),
      labels_(std::move(labels)) {
  if (node_count_ < 1) throw ValidationError("topology must have at least one node");
  if (!tiers_.empty() && tiers_.size() != links_.size())
    throw ValidationError("link tier list does not match link count");
  if (!roles_.empty() && roles_.size() != static_cast<std::size_t>(node_count_))
    throw ValidationError("node role list does not match node count");
  if (labels_.empty()) {
    labels_.resize(static_cast<std::size_t>(node_count_));
    std::iota(labels_.begin(), labels_.end(), std::int64_t{0});
  } else if (labels_.size() != static_cast<std::size_t>(node_count_)) {
    throw ValidationError("node label list does not match node count");
  }

  std::set<Link> seen;
  for (auto& l : links_) {
    if (l.u < 0 || l.v < 0 || l.u >= node_count_ || l.v >= node_count_)
      throw ValidationError("link endpoint out of range");
    if (l.u == l.v)
      throw ValidationError("self-loop at node " + std::to_string(labels_[static_cast<std::size_t>(l.u)]));
    if (l.u > l.v) std::swap(l.u, l.v);
    if (!seen.insert(l).second)
      throw ValidationError("duplicate link " + std::to_string(labels_[static_cast<std::size_t>(l.u)]) + " " +
                            std::to_string(labels_[static_cast<std::size_t>(l.v)]));
  }

  // CSR adjacency, each list sorted by neighbor id.
  std::vector<std::vector<Adjacent>> lists(static_cast<std::size_t>(node_count_));
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto id = static_cast<LinkId>(i);
    lists[static_cast<std::size_t>(links_[i].u)].push_back({links_[i].v, id});
    lists[static_cast<std::size_t>(links_[i].v)].push_back({links_[i].u, id});
  }
  adjacency_offsets_.reserve(lists.size() + 1);
  adjacency_offsets_.push_back(0);
  for (auto& list : lists) {
    std::sort(list.begin(), list.end(),
              [](const Adjacent& a, const Adjacent& b) { return a.neighbor < b.neighbor; });
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
    adjacency_offsets_.push_back(adjacency_.size());
  }

  std::vector<bool> visited(static_cast<std::size_t>(node_count_), false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  visited[0] = true;
  std::int32_t reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (const auto& adj : neighbors(v)) {
      if (!visited[static_cast<std::size_t>(adj.neighbor)]) {
        visited[static_cast<std::size_t>(adj.neighbor)] = true;
        ++reached;
        frontier.push(adj.neighbor);
      }
    }
  }
  if (reached != node_count_)
    throw ValidationError("graph is disconnected (" + std::to_string(reached) + " of " +
                          std::to_string(node_count_) + " nodes reachable)");
}

std::span<const Adjacent> Topology::neighbors(NodeId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const Adjacent>(adjacency_).subspan(adjacency_offsets_.at(i),
                                                        adjacency_offsets_.at(i + 1) - adjacency_offsets_[i]);
}

std::optional<LinkId> Topology::find_link(NodeId a, NodeId b) const {
  if (a < 0 || a >= node_count_ || b < 0 || b >= node_count_) return std::nullopt;
  const auto adj = neighbors(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Adjacent& x, NodeId id) { return x.neighbor < id; });
  if (it == adj.end() || it->neighbor != b) return std::nullopt;
  return it->link;
}

LinkTier Topology::tier(LinkId id) const {
  return tiers_.empty() ? LinkTier::Untagged : tiers_.at(static_cast<std::size_t>(id));
}

NodeRole Topology::role(NodeId v) const {
  return roles_.empty() ? NodeRole::Unspecified : roles_.at(static_cast<std::size_t>(v));
}

Topology load_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::istringstream tokens{std::string(body)};
    std::string a, b, extra;
    tokens >> a >> b;
    const auto u = parse_int(a);
    const auto v = parse_int(b);
    if (!u || !v || (tokens >> extra))
      throw ParseError("line " + std::to_string(line_no) + ": expected \"u v\", got \"" +
                       std::string(body) + "\"");
    raw.emplace_back(*u, *v);
  }
  if (raw.empty()) throw ValidationError("edge list contains no links");

  std::map<std::int64_t, NodeId> dense;
  for (const auto& [u, v] : raw) {
    dense.emplace(u, 0);
    dense.emplace(v, 0);
  }
  std::vector<std::int64_t> labels;
  labels.reserve(dense.size());
  for (auto& [label, id] : dense) {
    id = static_cast<NodeId>(labels.size());
    labels.push_back(label);
  }

  std::vector<Link> links;
  links.reserve(raw.size());
  for (const auto& [u, v] : raw) links.push_back({dense[u], dense[v]});
  const auto n = static_cast<std::int32_t>(labels.size());
  return Topology(n, std::move(links), {}, {}, std::move(labels));
}

Topology load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open topology file: " + path);
  return load_edge_list(in);
}

void serialize_edge_list(const Topology& topo, std::ostream& out) {
  std::vector<Link> sorted(topo.links().begin(), topo.links().end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& l : sorted) out << l.u << ' ' << l.v << '\n';
}

Topology generate_fat_tree(int ports) {
  if (ports < 2 || ports % 2 != 0)
    throw ValidationError("fat tree needs an even port count >= 2, got " + std::to_string(ports));

  const int half = ports / 2;
  const int cores = half * half;
  const int per_pod = half;  // aggregation (and edge) switches per pod
  const int pods = ports;
  const int aggs = pods * per_pod;

  // Ids: cores first, then aggregation switches pod by pod, then edge switches.
  auto agg_id = [&](int pod, int j) { return cores + pod * per_pod + j; };
  auto edge_id = [&](int pod, int j) { return cores + aggs + pod * per_pod + j; };
  const int n = cores + 2 * aggs;

  std::vector<Link> links;
  std::vector<LinkTier> tiers;
  for (int pod = 0; pod < pods; ++pod) {
    for (int j = 0; j < per_pod; ++j) {
      for (int c = j * half; c < (j + 1) * half; ++c) {
        links.push_back({c, agg_id(pod, j)});
        tiers.push_back(LinkTier::CoreAggregation);
      }
    }
  }
  for (int pod = 0; pod < pods; ++pod) {
    for (int j = 0; j < per_pod; ++j) {
      for (int e = 0; e < per_pod; ++e) {
        links.push_back({agg_id(pod, j), edge_id(pod, e)});
        tiers.push_back(LinkTier::AggregationEdge);
      }
    }
  }

  std::vector<NodeRole> roles(static_cast<std::size_t>(n), NodeRole::Edge);
  std::fill_n(roles.begin(), cores, NodeRole::Core);
  std::fill_n(roles.begin() + cores, aggs, NodeRole::Aggregation);
  return Topology(n, std::move(links), std::move(tiers), std::move(roles));
}

Topology topology_from_source(const std::string& source) {
  if (source.starts_with(kFatTreePrefix)) {
    const auto ports = parse_int(std::string_view(source).substr(kFatTreePrefix.size()));
    if (!ports) throw ParseError("bad fat-tree port count in \"" + source + "\"");
    return generate_fat_tree(static_cast<int>(*ports));
  }
  return load_edge_list_file(source);
}

std::vector<OrderedPair> all_ordered_pairs(const Topology& topo) {
  const auto n = topo.node_count();
  std::vector<OrderedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (NodeId s = 0; s < n; ++s)
    for (NodeId t = 0; t < n; ++t)
      if (s != t) pairs.push_back({s, t});
  return pairs;
}

std::vector<OrderedPair> edge_switch_pairs(const Topology& topo) {
  if (!topo.has_roles()) throw ValidationError("topology carries no switch roles");
  std::vector<OrderedPair> pairs;
  for (const auto& p : all_ordered_pairs(topo))
    if (topo.role(p.s) == NodeRole::Edge && topo.role(p.t) == NodeRole::Edge) pairs.push_back(p);
  return pairs;
}

}  // namespace devolve
