#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ioselect/errors.hpp"
#include "ioselect/graph_core.hpp"
#include "ioselect/system_model.hpp"
#include "oracles.hpp"

using namespace ioselect;
using namespace ioselect::fixture;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r.violations) {
    if (v.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Validate, Fig1IsValid) { EXPECT_TRUE(validate(fig1()).ok()); }

TEST(Validate, NegativeCost) {
  auto s = fig1();
  s.cost_u = costs({"-1", "1", "1"});
  const auto r = validate(s);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "negative cost at input 1"));
}

TEST(Validate, StarOutOfRange) {
  auto s = fig1();
  s.b.add(4, 0);  // (5,1)
  const auto r = validate(s);
  EXPECT_TRUE(mentions(r, "row out of range"));
  EXPECT_THROW(require_valid(s), InvalidArgument);
}

TEST(Validate, DimensionMismatchAndDuplicates) {
  auto s = fig1();
  s.cost_y = costs({"1"});
  s.a.add(0, 0);
  const auto r = validate(s);
  EXPECT_GE(r.violations.size(), 2u);
  EXPECT_TRUE(mentions(r, "duplicate star"));
}

TEST(Validate, ExplicitFeedbackShape) {
  auto s = fig1();
  s.k = SparsityPattern(2, 3);
  EXPECT_FALSE(validate(s).ok());
  s.k = stars(3, 2, {{1, 1}, {3, 2}});
  EXPECT_TRUE(validate(s).ok());
}

TEST(Restrict, SingleInputOutput) {
  const auto r = restrict_to(fig1(), sel({3}, {1}));
  EXPECT_EQ(r.system.b, stars(4, 1, {{1, 1}, {2, 1}, {4, 1}}));
  EXPECT_EQ(r.system.c, stars(1, 4, {{1, 3}}));
  EXPECT_EQ(r.input_map, std::vector<int>{2});
  EXPECT_EQ(r.output_map, std::vector<int>{0});
  EXPECT_EQ(r.system.cost_u, costs({"1"}));
}

TEST(Restrict, FullSelectionIsIdentity) {
  const auto s = fig1();
  EXPECT_EQ(restrict_to(s, Selection::all(s)).system, s);
}

TEST(Restrict, EmptySelection) {
  const auto r = restrict_to(fig1(), Selection{});
  EXPECT_EQ(r.system.m(), 0);
  EXPECT_EQ(r.system.p(), 0);
  EXPECT_EQ(r.system.n(), 4);
  EXPECT_TRUE(validate(r.system).ok());
}

TEST(Restrict, RejectsOutOfRange) {
  EXPECT_THROW(restrict_to(fig1(), sel({4}, {})), InvalidArgument);
  EXPECT_THROW(restrict_to(fig1(), sel({}, {3})), InvalidArgument);
}

TEST(Restrict, ExplicitFeedbackBlock) {
  auto s = fig1();
  s.k = stars(3, 2, {{1, 2}, {3, 1}, {2, 2}});
  const auto r = restrict_to(s, sel({2, 3}, {1}));
  EXPECT_EQ(std::get<SparsityPattern>(r.system.k), stars(2, 1, {{2, 1}}));
}

TEST(SelectionCost, Examples) {
  EXPECT_EQ(selection_cost(fig1(), sel({1, 3}, {1})), cost("3"));
  EXPECT_EQ(selection_cost(fig1(), Selection{}), cost("0"));
  auto s = fig1();
  s.cost_u = costs({"2", "5", "7"});
  s.cost_y = costs({"3", "11"});
  EXPECT_EQ(selection_cost(s, sel({2}, {2})), cost("16"));
}

TEST(SelectionCost, MonotoneAndRestrictionConsistent) {
  auto s = fig1();
  s.cost_u = costs({"0.5", "2", "3.25"});
  s.cost_y = costs({"1.125", "0"});
  const auto all = oracle::all_selections(s);
  for (const auto& a : all) {
    for (const auto& b : all) {
      const bool subset = std::includes(b.inputs.begin(), b.inputs.end(), a.inputs.begin(), a.inputs.end()) &&
                          std::includes(b.outputs.begin(), b.outputs.end(), a.outputs.begin(), a.outputs.end());
      if (subset) EXPECT_LE(selection_cost(s, a), selection_cost(s, b));
    }
    const auto r = restrict_to(s, a);
    EXPECT_EQ(selection_cost(r.system, Selection::all(r.system)), selection_cost(s, a));
  }
}

TEST(TransposeDual, InputPatternIsCTransposed) {
  const auto d = transpose_dual(fig1());
  EXPECT_EQ(d.b, stars(4, 2, {{3, 1}, {1, 2}}));
  EXPECT_EQ(d.cost_u, fig1().cost_y);
  EXPECT_EQ(d.p(), 0);
  EXPECT_EQ(d.a, fig1().a.transposed());
}

TEST(TransposeDual, InvolutionOnStatePattern) {
  const auto s = fig1();
  EXPECT_EQ(transpose_dual(transpose_dual(s)).a, s.a);
}

TEST(TransposeDual, NonBottomBecomesNonTop) {
  const auto scc = decompose_sccs(build_state_digraph(fig1()));
  const auto dual = decompose_sccs(build_state_digraph(transpose_dual(fig1())));
  ASSERT_EQ(dual.q(), 1);
  EXPECT_EQ(dual.components[static_cast<std::size_t>(dual.non_top[0])].states, std::vector<int>{2});
  ASSERT_EQ(scc.k(), 1);
  EXPECT_EQ(scc.components[static_cast<std::size_t>(scc.non_bottom[0])].states, std::vector<int>{2});
}

TEST(TransposeDual, RandomInstancesSwapClasses) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = generate(small_config(seed, 1 + static_cast<int>(seed % 7), 2, 2, false));
    const auto a = decompose_sccs(build_state_digraph(s));
    const auto b = decompose_sccs(build_state_digraph(transpose_dual(s)));
    auto classes = [](const SccDecomposition& d, const std::vector<int>& ids) {
      std::vector<std::vector<int>> out;
      for (int c : ids) out.push_back(d.components[static_cast<std::size_t>(c)].states);
      std::sort(out.begin(), out.end());
      return out;
    };
    EXPECT_EQ(classes(a, a.non_bottom), classes(b, b.non_top)) << seed;
    EXPECT_EQ(classes(a, a.non_top), classes(b, b.non_bottom)) << seed;
  }
}

TEST(SelectionType, CanonicalizeAndOrder) {
  Selection s{{3, 1, 3}, {2, 0, 0}};
  s.canonicalize();
  EXPECT_EQ(s.inputs, (std::vector<int>{1, 3}));
  EXPECT_EQ(s.outputs, (std::vector<int>{0, 2}));
  EXPECT_LT(sel({1}, {2}), sel({2}, {1}));
  EXPECT_LT(sel({1}, {1}), sel({1}, {2}));
  EXPECT_LT(sel({1}, {}), sel({1, 2}, {}));
}
