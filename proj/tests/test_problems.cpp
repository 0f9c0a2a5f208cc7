#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "gpsizing/errors.hpp"
#include "gpsizing/init.hpp"
#include "gpsizing/problems.hpp"

using namespace gpsizing;

namespace {

std::vector<OrderLiteral> lits(std::initializer_list<std::pair<int, bool>> xs) {
  std::vector<OrderLiteral> out;
  for (auto [i, c] : xs) out.push_back({i, c});
  return out;
}

// First-occurrence semantics over the materialized leaf sequence.
std::vector<OrderLiteral> reference_expression(const ProgramTree& t, int m) {
  std::vector<int> state(m + 1, -1);
  for (const Node& n : t.nodes()) {
    if (n.is_function) continue;
    const int index = n.symbol / 2 + 1;
    if (state[index] < 0) state[index] = n.symbol % 2;
  }
  std::vector<OrderLiteral> out;
  for (int i = 1; i <= m; ++i) {
    if (state[i] >= 0) out.push_back({i, state[i] == 1});
  }
  return out;
}

std::size_t count_leaves(const ProgramTree& t, Symbol s) {
  return std::count_if(t.nodes().begin(), t.nodes().end(),
                       [&](const Node& n) { return !n.is_function && n.symbol == s; });
}

}  // namespace

TEST(Order, FourPrimitiveExample) {
  const OrderProblem p(4);
  const ProgramTree t =
      parse_sexpr("(JOIN (JOIN X1 ~X1) (JOIN (JOIN ~X1 X4) (JOIN X1 ~X2)))", p.primitives());
  EXPECT_EQ(express_order(t, p), lits({{1, false}, {2, true}, {4, false}}));
  const Evaluation e = fitness_order(t, p);
  EXPECT_EQ(e.fitness, 2.0);
  EXPECT_EQ(e.correct_bb_count, 2);
  EXPECT_FALSE(e.is_optimal);
  EXPECT_EQ(e.direction, Direction::kMaximize);
}

TEST(Order, FirstOccurrenceAndUniqueness) {
  const OrderProblem p(3);
  EXPECT_EQ(express_order(parse_sexpr("(JOIN X1 ~X1)", p.primitives()), p),
            lits({{1, false}}));
  EXPECT_EQ(express_order(parse_sexpr("(JOIN (JOIN ~X3 ~X3) ~X3)", p.primitives()), p),
            lits({{3, true}}));
}

TEST(Order, AllComplementedAndOptimal) {
  const OrderProblem p(3);
  const auto none = parse_sexpr("(JOIN (JOIN ~X1 ~X2) ~X3)", p.primitives());
  EXPECT_EQ(fitness_order(none, p).fitness, 0.0);
  const auto all = parse_sexpr("(JOIN (JOIN X3 X2) (JOIN X1 ~X1))", p.primitives());
  const Evaluation e = fitness_order(all, p);
  EXPECT_EQ(e.fitness, 3.0);
  EXPECT_TRUE(e.is_optimal);
  EXPECT_EQ(e.correct_bb_count, 3);
}

TEST(Order, ForeignSymbolRejected) {
  const OrderProblem big(5);
  const OrderProblem small(2);
  const auto t = parse_sexpr("(JOIN X1 X5)", big.primitives());
  EXPECT_THROW(express_order(t, small), std::invalid_argument);
  EXPECT_THROW(OrderProblem(0), ConfigError);
  EXPECT_THROW(big.terminal(6, false), std::out_of_range);
}

TEST(Order, MatchesReferenceOnRandomTrees) {
  const int m = 6;
  const OrderProblem p(m);
  InitConfig cfg;
  cfg.q = 0.3;
  cfg.height_lo = 1;
  cfg.height_hi = 7;
  cfg.max_height = 7;
  SeededRng rng(21, 0);
  const auto trees = create_ramped_population(p.primitives(), cfg, 10000, rng);
  for (const ProgramTree& t : trees) {
    const auto got = express_order(t, p);
    ASSERT_EQ(got, reference_expression(t, m));
    ASSERT_LE(got.size(), static_cast<std::size_t>(m));
    const Evaluation e = fitness_order(t, p);
    ASSERT_LE(e.fitness, m);
    ASSERT_EQ(e.is_optimal, e.correct_bb_count == m);
  }
}

TEST(Order, LaterLeavesOfExpressedIndexIrrelevant) {
  const OrderProblem p(4);
  InitConfig cfg;
  cfg.q = 0.2;
  SeededRng rng(22, 0);
  const auto trees = create_ramped_population(p.primitives(), cfg, 2000, rng);
  for (const ProgramTree& t : trees) {
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    std::set<int> seen;
    for (Node& n : nodes) {
      if (n.is_function) continue;
      const int index = n.symbol / 2;
      if (!seen.insert(index).second) n.symbol = static_cast<Symbol>(n.symbol ^ 1);
    }
    ASSERT_EQ(express_order(ProgramTree(nodes), p), express_order(t, p));
  }
}

TEST(Loud, Examples) {
  const LoudProblem p11(1, 1);
  const Evaluation e = fitness_loud(parse_sexpr("(add (add 4 1) 0)", p11.primitives()), p11);
  EXPECT_EQ(e.fitness, 0.0);
  EXPECT_TRUE(e.is_optimal);
  EXPECT_EQ(e.direction, Direction::kMinimize);

  const LoudProblem p12(1, 2);
  EXPECT_EQ(fitness_loud(parse_sexpr("(add 4 4)", p12.primitives()), p12).fitness, 3.0);

  const LoudProblem p23(2, 3);
  const Evaluation zeros =
      fitness_loud(parse_sexpr("(add (add 0 0) (add 0 0))", p23.primitives()), p23);
  EXPECT_EQ(zeros.fitness, 5.0);
  EXPECT_EQ(zeros.correct_bb_count, 0);
}

TEST(Loud, CorrectCountIsDeviationComplement) {
  const LoudProblem p(3, 3);
  const auto t = parse_sexpr("(add (add 4 4) (add 1 (add 4 0)))", p.primitives());
  const Evaluation e = fitness_loud(t, p);
  EXPECT_EQ(e.fitness, 2.0);
  EXPECT_EQ(e.correct_bb_count, 4);
}

TEST(Loud, InvariantUnderSubtreeSwaps) {
  const LoudProblem p(4, 4);
  InitConfig cfg;
  cfg.q = 0.3;
  SeededRng rng(23, 0);
  const auto trees = create_ramped_population(p.primitives(), cfg, 2000, rng);
  for (const ProgramTree& t : trees) {
    // swap the two children of a random internal node
    std::vector<std::size_t> internal;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].is_function) internal.push_back(i);
    }
    const std::size_t at = internal[rng.below(internal.size())];
    const std::size_t left = at + 1;
    const std::size_t right = t.subtree_end(left);
    const std::size_t end = t.subtree_end(at);
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    std::vector<Node> swapped(nodes.begin(), nodes.begin() + static_cast<long>(left));
    swapped.insert(swapped.end(), nodes.begin() + static_cast<long>(right),
                   nodes.begin() + static_cast<long>(end));
    swapped.insert(swapped.end(), nodes.begin() + static_cast<long>(left),
                   nodes.begin() + static_cast<long>(right));
    swapped.insert(swapped.end(), nodes.begin() + static_cast<long>(end), nodes.end());
    ASSERT_EQ(fitness_loud(ProgramTree(swapped), p).fitness, fitness_loud(t, p).fitness);
  }
}

TEST(OnOff, SixLeafExample) {
  const OnOffProblem p(2, 2, 0.5);
  const auto t =
      parse_sexpr("(EXP (EXP X1 X1) (EXP (EXP X1 X2) (~EXP X2 X1)))", p.primitives());
  const std::vector<Symbol> want{OnOffProblem::kX1, OnOffProblem::kX1, OnOffProblem::kX1,
                                 OnOffProblem::kX2};
  EXPECT_EQ(express_onoff(t, p), want);
  EXPECT_EQ(fitness_onoff(t, p).fitness, 1.0 + 1.0);
}

TEST(OnOff, SuppressedRootAndAllExpressed) {
  const OnOffProblem p(3, 2, 0.5);
  const auto off = parse_sexpr("(~EXP (EXP X1 X1) X2)", p.primitives());
  EXPECT_TRUE(express_onoff(off, p).empty());
  EXPECT_EQ(fitness_onoff(off, p).fitness, 5.0);

  const OnOffProblem q(2, 2, 1.0);
  const auto on = parse_sexpr("(EXP (EXP X1 X1) (EXP X2 X2))", q.primitives());
  EXPECT_EQ(express_onoff(on, q).size(), 4u);
  EXPECT_TRUE(fitness_onoff(on, q).is_optimal);
}

TEST(OnOff, FullExpressionProbabilityExpressesEveryLeaf) {
  const OnOffProblem p(8, 8, 1.0);
  InitConfig cfg;
  cfg.q = 0.3;
  cfg.height_lo = 1;
  cfg.height_hi = 6;
  SeededRng rng(24, 0);
  const auto trees = create_ramped_population(p.primitives(), cfg, 1000, rng);
  for (const ProgramTree& t : trees) {
    ASSERT_EQ(express_onoff(t, p).size(), t.leaf_count());
    ASSERT_EQ(count_leaves(t, OnOffProblem::kX1) + count_leaves(t, OnOffProblem::kX2),
              t.leaf_count());
  }
}

TEST(OnOff, RejectsBadProbability) {
  EXPECT_THROW(OnOffProblem(1, 1, 1.5), ConfigError);
}

TEST(ProblemSpec, DispatchAndKolmogorovSize) {
  const ProblemSpec order = OrderProblem(4);
  const ProblemSpec loud = LoudProblem(4, 4);
  const ProblemSpec onoff = OnOffProblem(8, 8, 0.9);
  EXPECT_EQ(kolmogorov_size(order), 7);
  EXPECT_EQ(kolmogorov_size(loud), 15);
  EXPECT_EQ(kolmogorov_size(onoff), 31);
  EXPECT_EQ(problem_name(order), "order");
  EXPECT_EQ(problem_name(loud), "loud");
  EXPECT_EQ(problem_name(onoff), "onoff");
  EXPECT_EQ(problem_size(onoff), 16);
  EXPECT_EQ(primitives(loud).chi_t(), 3u);
  const auto t = parse_sexpr("(add 4 1)", primitives(loud));
  EXPECT_EQ(evaluate(loud, t).fitness, 6.0);
}

TEST(ProblemSpec, OptimalIffProvenOptimum) {
  const LoudProblem p(2, 1);
  for (const char* text : {"(add 4 (add 4 1))", "(add 4 1)", "(add (add 4 1) (add 4 0))"}) {
    const Evaluation e = fitness_loud(parse_sexpr(text, p.primitives()), p);
    EXPECT_EQ(e.is_optimal, e.fitness == 0.0);
    EXPECT_EQ(e.is_optimal, e.correct_bb_count == p.m());
  }
}
