#include <gtest/gtest.h>

#include "coraltda/graph.hpp"
#include "coraltda/verify.hpp"
#include "support/graphs.hpp"

using namespace coraltda;

TEST(Graph, BuilderNormalizesInput) {
  NormalizationStats stats;
  const std::vector<Edge> edges{{1, 1}, {1, 2}, {2, 1}, {2, 3}, {2, 3}};
  const auto g = Graph::from_edges({}, edges, &stats);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(stats.self_loops, 1u);
  EXPECT_EQ(stats.duplicate_edges, 2u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(1, 3));
}

TEST(Graph, IdsArePreservedNotRenumbered) {
  const auto g = fixtures::make({}, {{1000, 7}, {7, 42}});
  ASSERT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.id_at(0), 7u);
  EXPECT_EQ(g.id_at(2), 1000u);
  EXPECT_EQ(g.neighbors(7), (std::vector<VertexId>{42, 1000}));
}

TEST(Graph, Degree) {
  EXPECT_EQ(degree(fixtures::complete(4), 2), 3u);
  EXPECT_EQ(degree(fixtures::make({9}, {}), 9), 0u);
  EXPECT_EQ(degree(fixtures::cycle(5), 4), 2u);
  EXPECT_THROW(degree(fixtures::cycle(5), 99), InvalidInput);
}

TEST(Graph, ClosedNeighborhood) {
  EXPECT_EQ(closed_neighborhood(fixtures::path(3), 2), (VertexSet{1, 2, 3}));
  EXPECT_EQ(closed_neighborhood(fixtures::make({5}, {}), 5), (VertexSet{5}));
  EXPECT_EQ(closed_neighborhood(fixtures::cycle(4), 1), (VertexSet{1, 2, 4}));
  EXPECT_THROW(closed_neighborhood(fixtures::cycle(4), 0), InvalidInput);
}

TEST(Graph, InducedSubgraph) {
  EXPECT_EQ(induced_subgraph(fixtures::complete(4), {1, 2, 3}), fixtures::complete(3));
  EXPECT_TRUE(induced_subgraph(fixtures::complete(4), {}).empty());
  EXPECT_EQ(induced_subgraph(fixtures::cycle(4), {1, 2, 3}), fixtures::path(3));
  EXPECT_THROW(induced_subgraph(fixtures::cycle(4), {1, 9}), InvalidInput);
}

TEST(Graph, ConnectedComponents) {
  EXPECT_EQ(connected_components(fixtures::cycle(5)).size(), 1u);
  const auto two = connected_components(fixtures::make({10}, {{1, 2}, {2, 3}, {3, 1}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].size(), 3u);
  EXPECT_EQ(two[1], (VertexSet{10}));
  EXPECT_TRUE(connected_components(Graph{}).empty());
}

TEST(Graph, Power) {
  EXPECT_EQ(graph_power(fixtures::cycle(6), 3), fixtures::complete(6));
  EXPECT_EQ(graph_power(fixtures::cycle(7), 1), fixtures::cycle(7));
  EXPECT_EQ(graph_power(fixtures::path(4), 2), fixtures::make({}, {{1, 2}, {2, 3}, {3, 4}, {1, 3}, {2, 4}}));
  EXPECT_THROW(graph_power(fixtures::path(4), 0), InvalidInput);
  // Unreachable pairs never join.
  EXPECT_EQ(graph_power(fixtures::make({}, {{1, 2}, {3, 4}}), 5).num_edges(), 2u);
}

TEST(Graph, ClusteringCoefficient) {
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::cycle(5)), 0.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::star(4)), 0.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(Graph{}), 0.0);
  // Triangle with a pendant on vertex 1: locals 1/3, 1, 1, 0.
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::make({}, {{1, 2}, {2, 3}, {3, 1}, {1, 4}})),
                   (1.0 / 3.0 + 1.0 + 1.0) / 4.0);
}

class GraphProperties : public ::testing::TestWithParam<int> {};

TEST_P(GraphProperties, Invariants) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto g = random_graph(6 + seed % 15, 0.1 + 0.05 * static_cast<double>(seed % 8), seed);

  // Symmetric, simple, sorted adjacency.
  for (std::size_t a = 0; a < g.num_vertices(); ++a) {
    auto adj = g.adjacent(a);
    EXPECT_TRUE(std::is_sorted(adj.begin(), adj.end()));
    EXPECT_EQ(std::adjacent_find(adj.begin(), adj.end()), adj.end());
    for (auto b : adj) {
      EXPECT_NE(a, b);
      EXPECT_TRUE(g.has_edge_at(b, a));
    }
  }

  const VertexSet all(g.vertex_ids().begin(), g.vertex_ids().end());
  EXPECT_EQ(induced_subgraph(g, all), g);

  for (VertexId v : g.vertex_ids()) {
    const auto n = closed_neighborhood(g, v);
    EXPECT_TRUE(std::binary_search(n.begin(), n.end(), v));
    EXPECT_EQ(n.size(), degree(g, v) + 1);
  }

  // Powers are monotone; the diameter power of each component is complete.
  for (std::size_t n = 1; n < 5; ++n) {
    const auto lo = graph_power(g, n);
    const auto hi = graph_power(g, n + 1);
    for (const auto& e : lo.edges()) EXPECT_TRUE(hi.has_edge(e.u, e.v));
  }
  for (const auto& cell : connected_components(g)) {
    const auto h = induced_subgraph(g, cell);
    if (h.num_vertices() < 2) continue;
    const auto full = graph_power(h, diameter(h));
    EXPECT_EQ(full.num_edges(), h.num_vertices() * (h.num_vertices() - 1) / 2);
  }

  // Triangle-free graphs have clustering coefficient exactly 0.
  bool has_triangle = false;
  for (const auto& e : g.edges())
    for (auto w : g.neighbors(e.u))
      if (g.has_edge(w, e.v)) has_triangle = true;
  if (!has_triangle) {
    EXPECT_EQ(clustering_coefficient(g), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GraphProperties, ::testing::Range(1, 41));
