#include "devolve/config_io.hpp"

#include <fstream>

namespace devolve {

namespace {

template <typename T>
T field(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

const ordered_json& array_field(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array())
    throw SchemaError(std::string("missing array \"") + key + "\"");
  return obj.at(key);
}

ordered_json params_to_json(const AllocParams& p) {
  ordered_json j;
  j["q"] = p.q;
  j["k"] = p.k;
  j["alpha"] = p.alpha;
  j["omega"] = p.omega;
  j["psi"] = p.psi ? ordered_json(*p.psi) : ordered_json(nullptr);
  j["r"] = p.r;
  j["seed"] = p.seed;
  j["fixed_length"] = p.fixed_length;
  j["partition_tiers_only"] = p.partition_tiers_only;
  j["edge_endpoints_only"] = p.edge_endpoints_only;
  return j;
}

AllocParams params_from_json(const ordered_json& j) {
  AllocParams p;
  p.q = field<int>(j, "q");
  p.k = field<int>(j, "k");
  p.alpha = field<double>(j, "alpha");
  p.omega = field<double>(j, "omega");
  if (j.contains("psi") && !j.at("psi").is_null()) p.psi = field<double>(j, "psi");
  p.r = field<int>(j, "r");
  p.seed = field<std::uint64_t>(j, "seed");
  p.fixed_length = field<bool>(j, "fixed_length");
  p.partition_tiers_only = field<bool>(j, "partition_tiers_only");
  p.edge_endpoints_only = field<bool>(j, "edge_endpoints_only");
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("invalid params: ") + e.what());
  }
  return p;
}

LinkSet link_set_from_json(const ordered_json& arr, std::size_t universe, const char* what) {
  LinkSet set(universe);
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw SchemaError(std::string(what) + ": link ids must be integers");
    const auto id = v.get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= universe)
      throw SchemaError(std::string(what) + ": link id " + std::to_string(id) + " out of range");
    set.insert(static_cast<LinkId>(id));
  }
  return set;
}

ControllerConfig parse_config(const ordered_json& doc) {
  if (field<std::string>(doc, "format") != kConfigFormat) throw SchemaError("unsupported config format");
  ControllerConfig config;
  config.algorithm = field<std::string>(doc, "algorithm");
  config.params = params_from_json(doc.contains("params") ? doc.at("params") : ordered_json{});

  const auto& topo = doc.contains("topology") ? doc.at("topology") : ordered_json{};
  config.node_count = field<std::int32_t>(topo, "nodes");
  for (const auto& l : array_field(topo, "links")) {
    if (!l.is_array() || l.size() != 2) throw SchemaError("topology links must be [u, v] pairs");
    config.links.push_back({l[0].get<NodeId>(), l[1].get<NodeId>()});
  }
  const auto m = config.links.size();

  for (const auto& cj : array_field(doc, "controllers")) {
    ControllerState c;
    c.id = field<ControllerId>(cj, "id");
    if (c.id != static_cast<ControllerId>(config.controllers.size()))
      throw SchemaError("controllers must be listed in id order");
    c.monitored = link_set_from_json(array_field(cj, "monitored"), m, "monitored");
    c.preferred = link_set_from_json(array_field(cj, "preferred"), m, "preferred");
    for (const auto& mj : array_field(cj, "multipaths")) {
      Multipath mp{{field<NodeId>(mj, "s"), field<NodeId>(mj, "t")}, {}};
      for (const auto& pj : array_field(mj, "paths"))
        mp.paths.push_back({field<std::vector<NodeId>>(pj, "nodes"), field<std::vector<LinkId>>(pj, "links")});
      c.assigned.insert_or_assign(mp.pair, std::move(mp));
    }
    config.controllers.push_back(std::move(c));
  }

  for (const auto& ej : array_field(doc, "mapping"))
    config.mapping[{field<NodeId>(ej, "s"), field<NodeId>(ej, "t")}] =
        field<std::vector<ControllerId>>(ej, "controllers");
  return config;
}

}  // namespace

ordered_json config_to_json(const ControllerConfig& config) {
  ordered_json doc;
  doc["format"] = kConfigFormat;
  doc["algorithm"] = config.algorithm;
  doc["params"] = params_to_json(config.params);

  ordered_json links = ordered_json::array();
  for (const auto& l : config.links) links.push_back({l.u, l.v});
  doc["topology"] = {{"nodes", config.node_count}, {"links", std::move(links)}};

  ordered_json controllers = ordered_json::array();
  for (const auto& c : config.controllers) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["monitored"] = c.monitored.to_vector();
    cj["preferred"] = c.preferred.to_vector();
    ordered_json mps = ordered_json::array();
    for (const auto& [pair, mp] : c.assigned) {
      ordered_json paths = ordered_json::array();
      for (const auto& p : mp.paths) paths.push_back({{"nodes", p.nodes}, {"links", p.links}});
      mps.push_back({{"s", pair.s}, {"t", pair.t}, {"paths", std::move(paths)}});
    }
    cj["multipaths"] = std::move(mps);
    controllers.push_back(std::move(cj));
  }
  doc["controllers"] = std::move(controllers);

  ordered_json mapping = ordered_json::array();
  for (const auto& [pair, owners] : config.mapping)
    mapping.push_back({{"s", pair.s}, {"t", pair.t}, {"controllers", owners}});
  doc["mapping"] = std::move(mapping);
  return doc;
}

ControllerConfig config_from_json(const ordered_json& doc) {
  try {
    return parse_config(doc);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed config: ") + e.what());
  }
}

void write_config_file(const ControllerConfig& config, const std::string& path, const ordered_json& extra) {
  auto doc = config_to_json(config);
  if (extra.is_object())
    for (const auto& [key, value] : extra.items()) doc[key] = value;
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write config file: " + path);
  out << doc.dump(1) << '\n';
}

ControllerConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

}  // namespace devolve
