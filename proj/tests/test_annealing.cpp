#include <gtest/gtest.h>

#include <sstream>

#include "devolve/allocation.hpp"
#include "devolve/annealing.hpp"
#include "devolve/metrics.hpp"
#include "invariants.hpp"

using namespace devolve;

namespace {

Topology parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

const Topology& ebone() {
  static const Topology topo = load_edge_list_file(std::string(DEVOLVE_DATA_DIR) + "/ebone.edges");
  return topo;
}

std::vector<std::vector<int>> footprints(const std::vector<Multipath>& mps) {
  std::vector<std::vector<int>> out;
  for (const auto& mp : mps) {
    const auto u = mp.unique_links();
    out.emplace_back(u.begin(), u.end());
  }
  return out;
}

AllocParams params_k(int k) {
  AllocParams p;
  p.k = k;
  return p;
}

}  // namespace

TEST(AnnealParams, Validation) {
  AnnealParams p;
  EXPECT_NO_THROW(p.validate());
  p.initial_temperature = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.cooling_factor = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.iterations = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Anneal, SingleControllerIsFixed) {
  const auto mps = enumerate_all_multipaths(ebone(), params_k(2));
  const auto out = anneal_assignment(ebone(), mps, 1, {});
  EXPECT_EQ(out.best_objective, out.initial_objective);
  for (auto c : out.assignment) EXPECT_EQ(c, 0);
}

TEST(Anneal, FourCycleReachesBruteForceOptimum) {
  const auto topo = parse("0 1\n1 2\n2 3\n3 0");
  const auto mps = enumerate_all_multipaths(topo, params_k(1));
  const auto best = oracle::min_max_union(footprints(mps), 2, topo.link_count());
  AnnealParams p;
  p.iterations = 20'000;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    p.seed = seed;
    const auto out = anneal_assignment(topo, mps, 2, p);
    EXPECT_EQ(out.best_objective, best.objective) << "seed " << seed;
    EXPECT_EQ(max_coverage(topo, mps, out.assignment, 2), out.best_objective);
  }
}

TEST(Anneal, BestNeverWorseThanStart) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  AnnealParams p;
  p.iterations = 5'000;
  const auto out = anneal_assignment(ebone(), mps, 4, p);
  EXPECT_LE(out.best_objective, out.initial_objective);
  EXPECT_EQ(out.initial_objective, max_coverage(ebone(), mps, std::vector<ControllerId>(mps.size(), 0), 4));
}

TEST(Anneal, ZeroTemperatureIsDescent) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  AnnealParams p;
  p.iterations = 5'000;
  p.initial_temperature = 0.0;
  const auto out = anneal_assignment(ebone(), mps, 4, p);
  EXPECT_EQ(out.worsening_moves_accepted, 0);
  EXPECT_GT(out.accepted_moves, 0);
}

TEST(Anneal, HotStartAcceptsWorseningMoves) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  // From all-on-one (or any spread where every controller already sees all
  // links) no move can raise the maximum, so start from a heuristic result.
  const auto seeded = path_partition(ebone(), AllocParams{}, mps);
  std::vector<ControllerId> spread;
  for (const auto& mp : mps) spread.push_back(seeded.mapping.at(mp.pair)[0]);
  AnnealParams p;
  p.iterations = 5'000;
  const auto out = anneal_assignment(ebone(), mps, 4, p, std::span<const ControllerId>(spread));
  EXPECT_GT(out.worsening_moves_accepted, 0);
  EXPECT_LE(out.best_objective, out.initial_objective);
}

TEST(Anneal, ZeroTemperatureKeepsOptimalStart) {
  const auto topo = parse("0 1\n1 2\n2 0\n2 3");
  const auto mps = enumerate_all_multipaths(topo, params_k(2));
  const auto best = oracle::min_max_union(footprints(mps), 2, topo.link_count());
  AnnealParams p;
  p.iterations = 2'000;
  p.initial_temperature = 0.0;
  const auto out = anneal_assignment(topo, mps, 2, p, std::span<const ControllerId>(best.assignment));
  EXPECT_EQ(out.initial_objective, best.objective);
  EXPECT_EQ(out.best_objective, best.objective);
}

TEST(Anneal, Deterministic) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  AnnealParams p;
  p.iterations = 3'000;
  p.seed = 17;
  EXPECT_EQ(anneal_assignment(ebone(), mps, 4, p).assignment, anneal_assignment(ebone(), mps, 4, p).assignment);
}

TEST(Anneal, IncompleteSetRejected) {
  auto mps = enumerate_all_multipaths(ebone(), {});
  mps.pop_back();
  EXPECT_THROW(anneal_assignment(ebone(), mps, 4, {}), std::invalid_argument);
  mps.push_back(mps.front());
  EXPECT_THROW(anneal_assignment(ebone(), mps, 4, {}), std::invalid_argument);
}

TEST(Anneal, BadInitialAssignment) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  std::vector<ControllerId> init(mps.size(), 7);
  EXPECT_THROW(anneal_assignment(ebone(), mps, 4, {}, std::span<const ControllerId>(init)), std::invalid_argument);
  init.pop_back();
  EXPECT_THROW(anneal_assignment(ebone(), mps, 4, {}, std::span<const ControllerId>(init)), std::invalid_argument);
}

TEST(Anneal, AllocationSatisfiesInvariants) {
  const auto mps = enumerate_all_multipaths(ebone(), {});
  AnnealParams p;
  p.iterations = 10'000;
  const auto config = anneal_allocation(ebone(), mps, 4, p);
  const auto a = oracle::audit(ebone(), config, all_ordered_pairs(ebone()));
  EXPECT_TRUE(a.ok()) << a.first_problem;
  const auto report = measure(ebone(), config);
  EXPECT_TRUE(report.verified());
  EXPECT_EQ(report.max_links, anneal_assignment(ebone(), mps, 4, p).best_objective);
}

TEST(Anneal, EdgeSwitchMultipathSetAccepted) {
  const auto topo = generate_fat_tree(4);
  AllocParams ap;
  ap.edge_endpoints_only = true;
  ap.fixed_length = true;
  const auto mps = enumerate_all_multipaths(topo, ap);
  AnnealParams p;
  p.iterations = 2'000;
  const auto config = anneal_allocation(topo, mps, 2, p);
  EXPECT_TRUE(config.params.edge_endpoints_only);
  EXPECT_TRUE(measure(topo, config).verified());
}
