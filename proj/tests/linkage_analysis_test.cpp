#include <gtest/gtest.h>

#include <random>

#include "histograph/linkage_analysis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace histograph;

namespace {

std::vector<NodeId> intersect(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void expect_pairs_match(const std::vector<LinkPair>& got, const std::vector<oracle::Pair>& want) {
  ASSERT_EQ(got.size(), want.size());
  std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> index;
  for (const auto& p : want) index[{p.a, p.b}] = p.witnesses;
  for (const auto& p : got) {
    ASSERT_LT(p.a, p.b);
    auto it = index.find({p.a, p.b});
    ASSERT_NE(it, index.end());
    EXPECT_EQ(p.witnesses, it->second);
    EXPECT_EQ(p.strength, p.witnesses.size());
  }
  for (std::size_t i = 1; i < got.size(); ++i) {
    const auto& x = got[i - 1];
    const auto& y = got[i];
    EXPECT_TRUE(x.strength > y.strength || (x.strength == y.strength && std::tie(x.a, x.b) < std::tie(y.a, y.b)));
  }
}

std::set<std::set<NodeId>> as_sets(const std::vector<std::vector<NodeId>>& groups) {
  std::set<std::set<NodeId>> out;
  for (const auto& g : groups) out.insert({g.begin(), g.end()});
  return out;
}

}  // namespace

TEST(CoCitation, FrancisPairWitnesses) {
  auto net = build_network(fixtures::matrix_corpus());
  auto pairs = cocitations(net);
  auto it = std::find_if(pairs.begin(), pairs.end(), [](const LinkPair& p) { return p.a == 4306 && p.b == 4307; });
  ASSERT_NE(it, pairs.end());
  EXPECT_EQ(it->witnesses, intersect(net.node(4306).citing_nodes, net.node(4307).citing_nodes));
  EXPECT_EQ(it->strength, 18u);
  for (NodeId w : {4717, 4903, 5380}) EXPECT_TRUE(std::binary_search(it->witnesses.begin(), it->witnesses.end(), w));
  EXPECT_EQ(pairs.front().a, 4306);  // strongest pair in the fixture
}

TEST(CoCitation, MatchesOracle) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = build_network(fixtures::random_corpus(rng, {.max_records = 30}));
    for (std::size_t min : {1u, 2u, 3u}) {
      expect_pairs_match(cocitations(net, min), oracle::all_pairs(net, true, min));
      expect_pairs_match(bibliographic_couplings(net, min), oracle::all_pairs(net, false, min));
    }
  }
}

TEST(CoCitation, RejectsZeroStrength) {
  CitationNetwork net;
  EXPECT_THROW(cocitations(net, 0), std::invalid_argument);
}

TEST(Clusters, MatchOracleComponents) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = build_network(fixtures::random_corpus(rng, {.max_records = 30}));
    for (auto mode : {LinkMode::Cited, LinkMode::Citing}) {
      for (std::size_t min : {1u, 2u}) {
        auto got = cluster(net, mode, min);
        auto want = oracle::components(net.size(), oracle::all_pairs(net, mode == LinkMode::Cited, min));
        EXPECT_EQ(as_sets(got), want);
        for (std::size_t i = 1; i < got.size(); ++i) EXPECT_GE(got[i - 1].size(), got[i].size());
      }
    }
  }
}

TEST(Levels, ReadingPathExample) {
  auto net = build_network(fixtures::reading_path_corpus());
  auto ls = reference_levels(net, 4555, 3);
  ASSERT_GE(ls.levels.size(), 1u);
  EXPECT_EQ(ls.levels[0], (std::vector<NodeId>{1246, 3281, 3342, 4167}));
  EXPECT_EQ(ls.levels.size(), 1u);  // everything deeper is already on level 0

  auto paths = citation_paths(net, 4555, 2);
  auto has = [&](std::vector<NodeId> p) { return std::find(paths.begin(), paths.end(), p) != paths.end(); };
  EXPECT_TRUE(has({4555, 4167, 3342}));
  EXPECT_TRUE(has({4555, 4167, 3342, 3281}));
  EXPECT_TRUE(has({4555, 3342, 3281}));
  EXPECT_FALSE(has({4555, 4167, 3281}));
  EXPECT_NE(render_chains(paths).find("4555 -> 4167 -> 3342 -> 3281"), std::string::npos);
  EXPECT_EQ(render_paths(4555, citation_paths(net, 4555, 0)),
            "4555\n  1246\n  3281\n  3342\n  4167\n");
}

TEST(Levels, CumulativeIsUnionOfLevels) {
  auto net = build_network(fixtures::reading_path_corpus());
  auto a = reference_levels(net, 4167, 3);
  auto b = reference_levels(net, 4167, 3, true);
  EXPECT_EQ(a.levels, (std::vector<std::vector<NodeId>>{{3342}, {3281}}));
  EXPECT_EQ(b.levels, (std::vector<std::vector<NodeId>>{{3342}, {3281, 3342}}));
  EXPECT_THROW(reference_levels(net, 0, 1), std::out_of_range);
  EXPECT_THROW(citation_paths(net, 999999, 1), std::out_of_range);
}

TEST(Levels, MatchShortestDistances) {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = build_network(fixtures::random_corpus(rng, {.max_records = 30}));
    for (const auto& n : net.nodes) {
      auto got = reference_levels(net, n.id, 4);
      EXPECT_EQ(got.levels, oracle::levels(net, n.id, 4)) << "origin " << n.id;
    }
  }
}

TEST(Paths, AreSimpleChainsAlongEdges) {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    auto net = build_network(fixtures::random_corpus(rng, {.max_records = 30}));
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : net.edges) edges.insert({e.citing, e.cited});
    for (const auto& n : net.nodes) {
      auto paths = citation_paths(net, n.id, 2, 500);
      EXPECT_LE(paths.size(), 500u);
      for (const auto& p : paths) {
        EXPECT_EQ(p.front(), n.id);
        EXPECT_LE(p.size(), 4u);
        EXPECT_EQ(std::set<NodeId>(p.begin(), p.end()).size(), p.size());
        for (std::size_t i = 1; i < p.size(); ++i) EXPECT_TRUE(edges.contains({p[i - 1], p[i]}));
      }
    }
  }
}

TEST(Serialization, CsvAndJson) {
  std::vector<LinkPair> pairs{{1, 2, 2, {3, 4}}};
  EXPECT_EQ(pairs_csv(pairs), "a,b,strength,witnesses\n1,2,2,3 4\n");
  EXPECT_EQ(pairs_to_json(pairs).dump(), R"([{"a":1,"b":2,"strength":2,"witnesses":[3,4]}])");
  EXPECT_EQ(clusters_csv({{1, 2, 5}}), "cluster,size,members\n1,3,1 2 5\n");
}
