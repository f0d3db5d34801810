#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "mgraph/json.hpp"
#include "mgraph/sweep.hpp"

using namespace mgraph;

namespace {

std::vector<std::string> quantities(const SweepResult& r, const std::string& group) {
  std::vector<std::string> out;
  for (const auto& c : r.rows) {
    if (c.group == group) out.push_back(c.quantity);
  }
  return out;
}

}  // namespace

TEST(Sweep, RowStructure) {
  const auto r = run_sweep(cyclic_configs(4, 2));
  EXPECT_EQ(r.config_count, 3u);
  EXPECT_EQ(r.connected_count, 2u);
  EXPECT_EQ(quantities(r, "Z3"), (std::vector<std::string>{"connected"}));
  EXPECT_EQ(quantities(r, "Z4"), (std::vector<std::string>{"connected", "edge_count", "tree", "bipartite", "degree",
                                                           "census", "diameter", "diameter_qk", "distance_to_zero"}));
  EXPECT_EQ(r.discrepancy_count(), 0u);
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[1].group, "Z4");
  EXPECT_EQ(r.classes[1].diameter, 2);
  EXPECT_EQ(r.classes[1].d, (std::vector<Int>{2}));
}

TEST(Sweep, DisconnectedRowMatches) {
  const auto r = run_sweep({{GroupSpec::cyclic(6), 2}});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].predicted, "false");
  EXPECT_EQ(r.rows[0].oracle, "false");
  EXPECT_TRUE(r.rows[0].match);
}

TEST(Sweep, Z72Classes) {
  const auto r = run_sweep(cyclic_variant_configs(72));
  std::map<Int, Int> z72;
  for (const auto& c : r.classes) {
    if (c.group == "Z72") z72[c.k] = c.diameter.value();
  }
  EXPECT_EQ(z72, (std::map<Int, Int>{{6, 5}, {12, 4}, {18, 4}, {24, 4}, {36, 3}, {72, 2}}));
}

TEST(Sweep, Z72DiscrepancyIsDiameterOnly) {
  const auto r = run_sweep({{GroupSpec::cyclic(72), 18}});
  const auto bad = r.discrepancies();
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].quantity, "diameter");
  EXPECT_EQ(bad[0].predicted, "5");
  EXPECT_EQ(bad[0].oracle, "4");
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  SweepOptions one;
  one.workers = 1;
  SweepOptions three;
  three.workers = 3;
  const auto configs = product_configs(32, 8);
  const auto a = run_sweep(configs, one);
  const auto b = run_sweep(configs, three);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) ASSERT_EQ(sweep_csv_row(a.rows[i]), sweep_csv_row(b.rows[i]));
}

TEST(Sweep, ConfigBuilders) {
  EXPECT_EQ(cyclic_configs(10, 5).size(), 9u * 4u);
  EXPECT_EQ(cyclic_variant_configs(12).size(), 16u);
  const auto groups = product_groups(8);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0].moduli(), (std::vector<Int>{2, 2}));
  for (const auto& cfg : product_configs(64, 40, true, true)) EXPECT_TRUE(predict_connected(cfg.spec, cfg.m));
  const auto distinct = product_configs(4, 10, false, true);
  ASSERT_EQ(distinct.size(), 2u);
  EXPECT_EQ(distinct[1].m, 3);
}

TEST(Sweep, ResourceLimit) {
  SweepOptions o;
  o.build.vertex_limit = 10;
  try {
    run_sweep(cyclic_configs(20, 2), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
}

TEST(SweepFormat, CensusAndCsv) {
  EXPECT_EQ(format_census(std::map<std::size_t, std::size_t>{{1, 18}, {9, 1}, {11, 1}}), "1:18;9:1;11:1");
  EXPECT_EQ(format_distance(std::nullopt), "inf");
  EXPECT_EQ(sweep_csv_header(), "group,m,k,quantity,predicted,oracle,match\n");
  const Comparison c{"Z4 x Z8", 6, 2, "diameter", "3", "3", true, "NCDIM_CASE1"};
  EXPECT_EQ(sweep_csv_row(c), "Z4 x Z8,6,2,diameter,3,3,true\n");
}
