#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "coraltda/prunit.hpp"
#include "coraltda/verify.hpp"
#include "support/graphs.hpp"

using namespace coraltda;

namespace {
bool contains_pair(const std::vector<std::pair<VertexId, VertexId>>& pairs, VertexId u, VertexId v) {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(u, v)) != pairs.end();
}
}  // namespace

TEST(Domination, Examples) {
  const auto g = fixtures::domination_example();
  EXPECT_TRUE(dominated_by(g, 1, 3));
  EXPECT_TRUE(dominated_by(g, 2, 3));
  EXPECT_FALSE(dominated_by(g, 4, 3));
  EXPECT_FALSE(dominated_by(g, 3, 1));

  const auto c4 = fixtures::cycle(4);
  EXPECT_FALSE(dominated_by(c4, 1, 3));
  EXPECT_FALSE(dominated_by(c4, 1, 2));

  const auto k5 = fixtures::complete(5);
  for (VertexId u = 1; u <= 5; ++u)
    for (VertexId v = 1; v <= 5; ++v)
      if (u != v) {
        EXPECT_TRUE(dominated_by(k5, u, v));
      }

  EXPECT_THROW(dominated_by(g, 2, 2), InvalidInput);
  EXPECT_THROW(dominated_by(g, 2, 99), InvalidInput);
}

TEST(Domination, OnlyTheCaptionedVerticesAreDominatedByThree) {
  const auto g = fixtures::domination_example();
  const auto pairs = find_prunable(g, nullptr, PruneMode::power);
  EXPECT_TRUE(contains_pair(pairs, 1, 3));
  EXPECT_TRUE(contains_pair(pairs, 2, 3));
  std::set<VertexId> dominated;
  for (auto [u, v] : pairs) dominated.insert(u);
  EXPECT_EQ(dominated, (std::set<VertexId>{1, 2}));
}

TEST(FindPrunable, FilterConditions) {
  const auto p = fixtures::path(3);  // a=1, b=2, c=3
  VertexFilter f;
  f.set(1, 1);
  f.set(2, 2);
  f.set(3, 5);
  const auto sub = find_prunable(p, &f, PruneMode::sublevel);
  EXPECT_FALSE(contains_pair(sub, 1, 2));
  EXPECT_TRUE(contains_pair(sub, 3, 2));

  const auto deg = degree_filter(p);
  const auto super = find_prunable(p, &deg, PruneMode::superlevel);
  EXPECT_TRUE(contains_pair(super, 1, 2));
  EXPECT_TRUE(contains_pair(super, 3, 2));

  EXPECT_THROW(find_prunable(p, nullptr, PruneMode::sublevel), InvalidInput);
  EXPECT_THROW(find_prunable(p, nullptr, PruneMode::superlevel), InvalidInput);
}

TEST(Prunit, CompleteGraphCollapsesToAPoint) {
  const auto r = prunit(fixtures::complete(5), nullptr, PruneMode::power);
  EXPECT_EQ(r.graph.num_vertices(), 1u);
  EXPECT_EQ(r.graph.id_at(0), 1u);
  EXPECT_EQ(r.trace.steps.size(), 4u);
  EXPECT_FALSE(r.filter.has_value());
}

TEST(Prunit, StrictModeLeavesTwinsAlone) {
  PruneOptions strict;
  strict.strict_mutual_skip = true;
  const auto r = prunit(fixtures::complete(5), nullptr, PruneMode::power, strict);
  EXPECT_EQ(r.graph, fixtures::complete(5));
  EXPECT_TRUE(r.trace.steps.empty());
}

TEST(Prunit, ConstantFilterSublevelOnCompleteGraph) {
  const auto k6 = fixtures::complete(6);
  const auto f = constant_filter(k6, 0.0);
  const auto r = prunit(k6, &f, PruneMode::sublevel);
  EXPECT_EQ(r.graph.num_vertices(), 1u);
  ASSERT_TRUE(r.filter.has_value());
  EXPECT_EQ(r.filter->size(), 1u);
}

TEST(Prunit, CycleHasNothingToPrune) {
  const auto c = fixtures::cycle(6);
  const auto r = prunit(c, nullptr, PruneMode::power);
  EXPECT_EQ(r.graph, c);
  EXPECT_EQ(r.trace.passes, 1u);
}

TEST(Prunit, TraceCsv) {
  const auto r = prunit(fixtures::complete(3), nullptr, PruneMode::power);
  std::ostringstream os;
  write_trace_csv(os, r.trace);
  EXPECT_EQ(os.str(), "pruned_id,dominator_id,pass\n2,1,1\n3,1,1\n");
}

namespace {

// Replays a trace step by step, checking each removal was legal on the graph
// as it stood at that moment.
void replay(const Graph& g, const VertexFilter* f, PruneMode mode, const PruneTrace& trace) {
  Graph current = g;
  std::set<VertexId> pruned;
  for (const auto& step : trace.steps) {
    EXPECT_TRUE(pruned.insert(step.pruned).second) << "vertex pruned twice";
    ASSERT_TRUE(current.contains(step.dominator)) << "dominator already gone";
    EXPECT_TRUE(dominated_by(current, step.pruned, step.dominator));
    if (f) {
      const double fu = f->at(step.pruned), fv = f->at(step.dominator);
      if (mode == PruneMode::sublevel) {
        EXPECT_GE(fu, fv);
      }
      if (mode == PruneMode::superlevel) {
        EXPECT_LE(fu, fv);
      }
    }
    current = remove_vertex(current, step.pruned);
  }
}

}  // namespace

class PrunitProperties : public ::testing::TestWithParam<int> {};

TEST_P(PrunitProperties, FixpointSafetyDeterminism) {
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto g = random_graph(8 + seed % 23, 0.1 * static_cast<double>(1 + seed % 5), seed);
  const auto f = degree_filter(g);
  for (auto mode : {PruneMode::sublevel, PruneMode::superlevel, PruneMode::power}) {
    const VertexFilter* fp = mode == PruneMode::power ? nullptr : &f;
    const auto r = prunit(g, fp, mode);
    const VertexFilter* rf = r.filter ? &*r.filter : nullptr;
    EXPECT_TRUE(find_prunable(r.graph, rf, mode).empty()) << to_string(mode);
    replay(g, fp, mode, r.trace);
    EXPECT_EQ(r.graph.num_vertices() + r.trace.steps.size(), g.num_vertices());
    if (rf) {
      for (auto v : r.graph.vertex_ids()) EXPECT_EQ(rf->at(v), f.at(v));
    }
    const auto again = prunit(g, fp, mode);
    EXPECT_EQ(again.trace, r.trace);
    EXPECT_EQ(again.graph, r.graph);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PrunitProperties, ::testing::Range(1, 61));
