#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "devolve/dispatch.hpp"
#include "oracles.hpp"

using namespace devolve;

namespace {

const Topology& ebone() {
  static const Topology topo = load_edge_list_file(std::string(DEVOLVE_DATA_DIR) + "/ebone.edges");
  return topo;
}

const ControllerConfig& ebone_config() {
  static const ControllerConfig config = path_partition(ebone(), AllocParams{});
  return config;
}

// Two stored paths for (0,1) on a square: A = 0-1 direct, B = 0-3-2-1.
ControllerConfig square_config() {
  std::istringstream in("0 1\n1 2\n2 3\n3 0\n");
  const auto topo = load_edge_list(in);
  AllocParams p;
  p.q = 1;
  p.k = 2;
  auto config = empty_config(topo, p, "manual");
  const auto mp = enumerate_multipath(topo, {0, 1}, 2, 10.0, LinkWeights(4));
  config.controllers[0].assign(mp);
  config.mapping[{0, 1}] = {0};
  return config;
}

}  // namespace

TEST(Resolve, MappingEntries) {
  const auto& config = ebone_config();
  for (const auto& pair : all_ordered_pairs(ebone())) {
    const auto ids = resolve(config, pair);
    ASSERT_EQ(ids.size(), 1u);
    EXPECT_GE(ids[0], 0);
    EXPECT_LT(ids[0], 4);
  }
  EXPECT_THROW(resolve(config, {3, 3}), std::invalid_argument);
  EXPECT_THROW(resolve(config, {0, 99}), std::out_of_range);
  auto broken = config;
  broken.mapping.erase({0, 1});
  EXPECT_THROW(resolve(broken, {0, 1}), UnknownPair);
}

TEST(Resolve, SingleControllerAlwaysZero) {
  AllocParams p;
  p.q = 1;
  const auto config = path_partition(ebone(), p);
  for (const auto& pair : all_ordered_pairs(ebone())) EXPECT_EQ(resolve(config, pair), (std::vector<ControllerId>{0}));
}

TEST(SelectRoute, ZeroLoadPicksShortest) {
  const auto config = square_config();
  const auto route = select_route(config, {0, 1}, LinkLoadSnapshot(std::vector<double>(4, 0.0)));
  EXPECT_EQ(route.nodes, (std::vector<NodeId>{0, 1}));
}

TEST(SelectRoute, LowerBottleneckWins) {
  const auto config = square_config();
  // Link 0 is 0-1 (path A, bottleneck 0.9); path B has bottleneck 0.35 but
  // a larger utilization sum.
  std::vector<double> load(4, 0.35);
  load[0] = 0.9;
  const auto route = select_route(config, {0, 1}, LinkLoadSnapshot(load));
  EXPECT_EQ(route.nodes, (std::vector<NodeId>{0, 3, 2, 1}));
  EXPECT_EQ(select_route(config, {0, 1}, LinkLoadSnapshot(load), CongestionMetric::Sum).nodes,
            (std::vector<NodeId>{0, 1}));
}

TEST(SelectRoute, MatchesBruteForceAndScaleInvariant) {
  const auto& config = ebone_config();
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> util(0.0, 1.0);
  const auto pairs = all_ordered_pairs(ebone());
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> load(66);
    for (auto& u : load) u = std::round(util(gen) * 20.0) / 20.0;  // coarse grid forces ties
    std::vector<double> scaled(load);
    for (auto& u : scaled) u *= 7.0;
    const auto pair = pairs[gen() % pairs.size()];
    const auto owner = resolve(config, pair)[0];
    const auto& paths = config.controllers[static_cast<std::size_t>(owner)].find(pair)->paths;
    const auto expected = paths[oracle::least_congested(paths, load)];
    const auto got = select_route(config, pair, LinkLoadSnapshot(load));
    EXPECT_EQ(got, expected);
    EXPECT_EQ(select_route(config, pair, LinkLoadSnapshot(scaled)), got);
    EXPECT_TRUE(oracle::walk_ok(ebone().links(), got, pair.s, pair.t));
    for (const auto& p : paths) EXPECT_LE(oracle::bottleneck(got, load), oracle::bottleneck(p, load));
  }
}

TEST(SelectRoute, SnapshotSizeMustMatch) {
  EXPECT_THROW(select_route(ebone_config(), {0, 1}, LinkLoadSnapshot(std::vector<double>(5, 0.0))),
               std::invalid_argument);
}

TEST(LoadSnapshot, Validation) {
  EXPECT_THROW(LinkLoadSnapshot(std::vector<double>{0.1, -0.5}), std::invalid_argument);
  EXPECT_THROW(LinkLoadSnapshot(std::vector<double>{std::nan("")}), std::invalid_argument);
}

TEST(LoadSnapshot, FromCsv) {
  std::istringstream ok("link_id,utilization\n# comment\n1,0.5\n0, 0.25\n2,1\n");
  const auto snap = LinkLoadSnapshot::from_csv(ok, 3);
  EXPECT_EQ(snap.size(), 3u);
  EXPECT_DOUBLE_EQ(snap[0], 0.25);
  EXPECT_DOUBLE_EQ(snap[1], 0.5);
  EXPECT_DOUBLE_EQ(snap[2], 1.0);

  const char* bad[] = {"0,0.1\n1,0.2\n", "0,0.1\n1,0.2\n2,x\n", "0,0.1\n0,0.2\n1,0.3\n2,0\n",
                       "0,0.1\n1,0.2\n5,0.3\n", "0 0.1\n", "0,0.1\n1,0.2\n2,-1\n", "a,0.1\n"};
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(LinkLoadSnapshot::from_csv(in, 3), std::invalid_argument) << text;
  }
}
