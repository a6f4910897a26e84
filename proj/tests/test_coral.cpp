#include <gtest/gtest.h>

#include "coraltda/coral.hpp"
#include "coraltda/verify.hpp"
#include "support/graphs.hpp"

using namespace coraltda;

TEST(KCore, Examples) {
  EXPECT_EQ(kcore(fixtures::complete(4), 3), fixtures::complete(4));
  EXPECT_TRUE(kcore(fixtures::cycle(5), 3).empty());

  const auto g = fixtures::core_example();
  const auto one = kcore(g, 1);
  EXPECT_FALSE(one.contains(1));
  EXPECT_EQ(one.num_vertices(), g.num_vertices() - 1);
  EXPECT_EQ(one.num_edges(), g.num_edges());

  EXPECT_EQ(kcore(g, 0), g);
  EXPECT_TRUE(kcore(Graph{}, 2).empty());
}

TEST(KCore, CoreNumbers) {
  const auto k4 = core_numbers(fixtures::complete(4));
  for (auto c : k4.coreness) EXPECT_EQ(c, 3u);
  EXPECT_EQ(k4.degeneracy(), 3u);

  const auto s5 = core_numbers(fixtures::star(5));
  for (auto c : s5.coreness) EXPECT_EQ(c, 1u);

  // C_5 with a pendant 6 on vertex 1.
  auto g = fixtures::make({}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 6}});
  const auto cm = core_numbers(g);
  EXPECT_EQ(cm.at(6), 1u);
  for (VertexId v = 1; v <= 5; ++v) EXPECT_EQ(cm.at(v), 2u);
  EXPECT_THROW(cm.at(77), InvalidInput);

  const auto fig = core_numbers(fixtures::core_example());
  EXPECT_EQ(fig.at(1), 0u);
  EXPECT_EQ(fig.degeneracy(), 2u);
}

TEST(CoralReduce, KeepsOriginalFilterValues) {
  // C_4 on a, b, c, d = 1..4 with pendant p = 5 on a.
  const auto g = fixtures::make({}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}});
  const auto f = degree_filter(g);
  const auto r = coral_reduce(g, f, 1);
  EXPECT_EQ(r.graph, fixtures::cycle(4));
  EXPECT_EQ(r.filter.at(1), 3.0);  // degree in the original graph, not in C_4
  EXPECT_EQ(degree(r.graph, 1), 2u);
  EXPECT_FALSE(r.filter.contains(5));
}

TEST(CoralReduce, IndexZeroRemovesOnlyIsolatedVertices) {
  const auto g = fixtures::core_example();
  const auto r = coral_reduce(g, degree_filter(g), 0);
  EXPECT_EQ(r.graph, induced_subgraph(g, {2, 3, 4, 5, 6}));
}

TEST(CoralReduce, MissingFilterValueIsAnError) {
  const auto g = fixtures::cycle(4);
  VertexFilter f;
  f.set(1, 0.0);
  EXPECT_THROW(coral_reduce(g, f, 1), InvalidInput);
}

namespace {

// Exhaustive maximality: no vertex set strictly containing the core has
// minimum degree >= k. Checked by adding back every non-empty subset of the
// removed vertices.
bool is_maximal_core(const Graph& g, const Graph& core, std::size_t k) {
  VertexSet removed;
  for (auto v : g.vertex_ids())
    if (!core.contains(v)) removed.push_back(v);
  if (removed.size() > 10) return true;
  for (std::uint32_t mask = 1; mask < (1U << removed.size()); ++mask) {
    VertexSet s(core.vertex_ids().begin(), core.vertex_ids().end());
    for (std::size_t i = 0; i < removed.size(); ++i)
      if (mask & (1U << i)) s.push_back(removed[i]);
    const auto h = induced_subgraph(g, make_vertex_set(s));
    bool ok = true;
    for (std::size_t i = 0; i < h.num_vertices(); ++i)
      if (h.degree_at(i) < k) ok = false;
    if (ok) return false;
  }
  return true;
}

}  // namespace

class KCoreProperties : public ::testing::TestWithParam<int> {};

TEST_P(KCoreProperties, BucketAndNaivePeelersAgree) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto g = random_graph(8 + seed % 23, 0.1 * static_cast<double>(1 + seed % 5), seed);
  const auto cores = core_numbers(g);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) EXPECT_LE(cores.coreness[i], g.degree_at(i));

  for (std::size_t k = 0; k <= cores.degeneracy() + 1; ++k) {
    const auto fast = kcore(g, k);
    EXPECT_EQ(fast, kcore_naive(g, k)) << "k=" << k;
    for (std::size_t i = 0; i < fast.num_vertices(); ++i) EXPECT_GE(fast.degree_at(i), k);
    EXPECT_EQ(kcore(fast, k), fast);
    const auto inner = kcore(g, k + 1);
    for (auto v : inner.vertex_ids()) EXPECT_TRUE(fast.contains(v));
    EXPECT_TRUE(is_maximal_core(g, fast, k)) << "k=" << k;
    // Coreness thresholding matches membership.
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
      EXPECT_EQ(fast.contains(g.id_at(i)), cores.coreness[i] >= k);
  }
  EXPECT_FALSE(kcore(g, cores.degeneracy()).empty());
  EXPECT_TRUE(kcore(g, cores.degeneracy() + 1).empty());
}

INSTANTIATE_TEST_SUITE_P(Seeds, KCoreProperties, ::testing::Range(1, 61));
