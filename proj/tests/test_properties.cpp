#include <gtest/gtest.h>

#include "confront/extract.hpp"
#include "confront/normalize.hpp"
#include "invariants.hpp"
#include "synthetic.hpp"

using namespace confront;

namespace {

std::string joined(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

class PipelineInvariants : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PipelineInvariants, HoldForEveryMethod) {
  const std::uint64_t seed = GetParam();
  synth::Options options;
  options.properties = 40 + seed % 7 * 20;
  options.streets = 6 + seed % 5 * 3;
  options.additional = seed % 12;
  options.egal_pairs = seed % 4;
  const Database db = synth::random_database(seed, options);
  const auto violations = invariants::check_database(db, seed * 31 + 1);
  EXPECT_TRUE(violations.empty()) << joined(violations);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PipelineInvariants, ::testing::Range<std::uint64_t>(1000, 1020));

TEST(PipelineInvariants, MergeIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Database merged = merge_equal_objects(synth::random_database(seed, {.egal_pairs = 5}));
    EXPECT_EQ(merge_equal_objects(merged), merged);
  }
}

TEST(PipelineInvariants, FullGraphIsUnfilteredRhwAtThresholdOne) {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const Database db = synth::random_database(seed);
    auto m = *parse_method_code("RHW_all");
    m.component_threshold = 1;
    const auto g = extract(db, m);
    const auto full = full_graph(db);
    EXPECT_EQ(g.vertices(), full.vertices());
    EXPECT_EQ(g.edges(), full.edges());
    EXPECT_EQ(full.property_count(), db.property_baseline());
  }
}

TEST(PipelineInvariants, CheckerFlagsBrokenGraphs) {
  std::vector<Vertex> vertices(2);
  vertices[0].id = vertices[0].object_id = "a";
  vertices[1].id = vertices[1].object_id = "b";
  const ConfrontGraph g(vertices, {Edge{0, 1, NormalizedType::InsideOf, EdgeOrigin::Additional, {"r1"}}});
  auto m = *parse_method_code("RFW_all");
  m.component_threshold = 3;
  EXPECT_EQ(invariants::check_graph(g, m).size(), 3u);
}
