#include "devolve/dispatch.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>

namespace devolve {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void check_pair(const ControllerConfig& config, OrderedPair pair) {
  if (pair.s < 0 || pair.t < 0 || pair.s >= config.node_count || pair.t >= config.node_count)
    throw std::out_of_range("pair endpoint out of range");
  if (pair.s == pair.t) throw std::invalid_argument("pair endpoints must differ");
}

}  // namespace

LinkLoadSnapshot::LinkLoadSnapshot(std::vector<double> utilization) : utilization_(std::move(utilization)) {
  for (const auto u : utilization_)
    if (!(u >= 0.0) || !std::isfinite(u)) throw std::invalid_argument("utilization must be finite and >= 0");
}

LinkLoadSnapshot LinkLoadSnapshot::from_csv(std::istream& in, std::size_t link_count) {
  std::vector<double> values(link_count, 0.0);
  std::vector<bool> seen(link_count, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    const auto id_text = trim(body.substr(0, comma));
    if (line_no == 1 && id_text == "link_id") continue;
    if (comma == std::string_view::npos)
      throw std::invalid_argument("load line " + std::to_string(line_no) + ": expected link_id,utilization");

    long long id = 0;
    auto [p, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc{} || p != id_text.data() + id_text.size())
      throw std::invalid_argument("load line " + std::to_string(line_no) + ": bad link id");
    double value = 0.0;
    try {
      std::size_t used = 0;
      const std::string value_text(trim(body.substr(comma + 1)));
      value = std::stod(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw std::invalid_argument("load line " + std::to_string(line_no) + ": bad utilization");
    }
    if (id < 0 || static_cast<std::size_t>(id) >= link_count)
      throw std::invalid_argument("load line " + std::to_string(line_no) + ": link id out of range");
    if (seen[static_cast<std::size_t>(id)])
      throw std::invalid_argument("load line " + std::to_string(line_no) + ": link listed twice");
    seen[static_cast<std::size_t>(id)] = true;
    values[static_cast<std::size_t>(id)] = value;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("load snapshot does not cover every link");
  return LinkLoadSnapshot(std::move(values));
}

std::vector<ControllerId> resolve(const ControllerConfig& config, OrderedPair pair) {
  check_pair(config, pair);
  const auto it = config.mapping.find(pair);
  if (it == config.mapping.end())
    throw UnknownPair("no controller registered for (" + std::to_string(pair.s) + "," + std::to_string(pair.t) +
                      "); the config is corrupt or was built for other endpoints");
  return it->second;
}

double path_congestion(const Path& path, const LinkLoadSnapshot& load, CongestionMetric metric) {
  double acc = 0.0;
  for (const auto l : path.links) acc = metric == CongestionMetric::Bottleneck ? std::max(acc, load[l]) : acc + load[l];
  return acc;
}

Path select_route(const ControllerConfig& config, OrderedPair pair, const LinkLoadSnapshot& load,
                  CongestionMetric metric) {
  const auto owners = resolve(config, pair);
  if (owners.empty()) throw UnknownPair("pair has an empty owner list");
  if (load.size() != config.links.size()) throw std::invalid_argument("load snapshot does not match the topology");
  const auto owner = owners.front();
  if (owner < 0 || static_cast<std::size_t>(owner) >= config.controllers.size())
    throw UnknownPair("mapping names an unknown controller");
  const auto* mp = config.controllers[static_cast<std::size_t>(owner)].find(pair);
  if (mp == nullptr || mp->paths.empty()) throw UnknownPair("owning controller holds no multipath for the pair");

  const Path* best = &mp->paths.front();
  double best_cost = path_congestion(*best, load, metric);
  for (const auto& p : mp->paths) {
    const double cost = path_congestion(p, load, metric);
    if (cost < best_cost || (cost == best_cost && (p.hops() < best->hops() ||
                                                   (p.hops() == best->hops() && p.nodes < best->nodes)))) {
      best = &p;
      best_cost = cost;
    }
  }
  return *best;
}

}  // namespace devolve
