#include "gpsizing/problems.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gpsizing/errors.hpp"

namespace gpsizing {
namespace {

PrimitiveSet order_primitives(int m) {
  if (m < 1) throw ConfigError("ORDER needs m >= 1");
  std::vector<std::string> terminals;
  terminals.reserve(2 * static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    terminals.push_back("X" + std::to_string(i));
    terminals.push_back("~X" + std::to_string(i));
  }
  return PrimitiveSet({"JOIN"}, std::move(terminals));
}

PrimitiveSet onoff_primitives(double p_exp) {
  if (!(p_exp >= 0.0 && p_exp <= 1.0)) throw ConfigError("p_exp must lie in [0, 1]");
  PrimitiveSet prims({"EXP", "~EXP"}, {"X1", "X2"});
  prims.set_function_weights({p_exp, 1.0 - p_exp});
  return prims;
}

void check_symbol(const Node& node, const PrimitiveSet& prims) {
  const std::size_t limit = node.is_function ? prims.chi_f() : prims.chi_t();
  if (node.symbol >= limit) {
    throw std::invalid_argument("tree contains a symbol outside the problem's primitive set");
  }
}

Evaluation deviation_evaluation(int deviation, int m) {
  Evaluation e;
  e.fitness = deviation;
  e.direction = Direction::kMinimize;
  e.correct_bb_count = m - std::min(deviation, m);
  e.is_optimal = deviation == 0;
  return e;
}

}  // namespace

OrderProblem::OrderProblem(int m) : m_(m), prims_(order_primitives(m)) {}

Symbol OrderProblem::terminal(int index, bool complemented) const {
  if (index < 1 || index > m_) throw std::out_of_range("ORDER index out of range");
  return static_cast<Symbol>(2 * (index - 1) + (complemented ? 1 : 0));
}

LoudProblem::LoudProblem(int m4, int m1)
    : m4_(m4), m1_(m1), prims_({"add"}, {"0", "1", "4"}) {
  if (m4 < 0 || m1 < 0 || m4 + m1 < 1) throw ConfigError("LOUD needs m4, m1 >= 0 and m >= 1");
}

OnOffProblem::OnOffProblem(int m_x1, int m_x2, double p_exp)
    : m_x1_(m_x1), m_x2_(m_x2), p_exp_(p_exp), prims_(onoff_primitives(p_exp)) {
  if (m_x1 < 0 || m_x2 < 0 || m_x1 + m_x2 < 1) {
    throw ConfigError("ON-OFF needs m_x1, m_x2 >= 0 and m >= 1");
  }
}

namespace {

// state[i]: 0 unseen, 1 X_i expressed, 2 ~X_i expressed.
int scan_order(const ProgramTree& tree, const OrderProblem& p,
               std::vector<unsigned char>& state) {
  state.assign(static_cast<std::size_t>(p.m()), 0);
  int positive = 0;
  for (const Node& node : tree.nodes()) {
    check_symbol(node, p.primitives());
    if (node.is_function) continue;
    auto& slot = state[node.symbol >> 1];
    if (slot != 0) continue;
    slot = (node.symbol & 1) ? 2 : 1;
    positive += slot == 1;
  }
  return positive;
}

}  // namespace

std::vector<OrderLiteral> express_order(const ProgramTree& tree, const OrderProblem& p) {
  std::vector<unsigned char> state;
  scan_order(tree, p, state);
  std::vector<OrderLiteral> out;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] != 0) out.push_back({static_cast<int>(i) + 1, state[i] == 2});
  }
  return out;
}

Evaluation fitness_order(const ProgramTree& tree, const OrderProblem& p) {
  thread_local std::vector<unsigned char> state;
  const int positive = scan_order(tree, p, state);
  Evaluation e;
  e.fitness = positive;
  e.direction = Direction::kMaximize;
  e.correct_bb_count = positive;
  e.is_optimal = positive == p.m();
  return e;
}

Evaluation fitness_loud(const ProgramTree& tree, const LoudProblem& p) {
  int fours = 0;
  int ones = 0;
  for (const Node& node : tree.nodes()) {
    check_symbol(node, p.primitives());
    if (node.is_function) continue;
    // Terminals are 0, 1, 4 in that order.
    ones += node.symbol == 1;
    fours += node.symbol == 2;
  }
  return deviation_evaluation(std::abs(fours - p.m4()) + std::abs(ones - p.m1()), p.m());
}

namespace {

template <typename Visit>
void scan_onoff(const ProgramTree& tree, const OnOffProblem& p, Visit&& visit) {
  thread_local std::vector<bool> pending;
  pending.clear();
  pending.push_back(true);
  for (const Node& node : tree.nodes()) {
    check_symbol(node, p.primitives());
    const bool live = pending.back();
    pending.pop_back();
    if (node.is_function) {
      const bool child_live = live && node.symbol == OnOffProblem::kExp;
      pending.push_back(child_live);
      pending.push_back(child_live);
    } else if (live) {
      visit(node.symbol);
    }
  }
}

}  // namespace

std::vector<Symbol> express_onoff(const ProgramTree& tree, const OnOffProblem& p) {
  std::vector<Symbol> out;
  scan_onoff(tree, p, [&](Symbol s) { out.push_back(s); });
  return out;
}

Evaluation fitness_onoff(const ProgramTree& tree, const OnOffProblem& p) {
  int x1 = 0;
  int x2 = 0;
  scan_onoff(tree, p, [&](Symbol s) {
    x1 += s == OnOffProblem::kX1;
    x2 += s == OnOffProblem::kX2;
  });
  return deviation_evaluation(std::abs(x1 - p.m_x1()) + std::abs(x2 - p.m_x2()), p.m());
}

std::string_view problem_name(const ProblemSpec& problem) {
  struct {
    std::string_view operator()(const OrderProblem&) const { return "order"; }
    std::string_view operator()(const LoudProblem&) const { return "loud"; }
    std::string_view operator()(const OnOffProblem&) const { return "onoff"; }
  } visitor;
  return std::visit(visitor, problem);
}

int problem_size(const ProblemSpec& problem) {
  return std::visit([](const auto& p) { return p.m(); }, problem);
}

const PrimitiveSet& primitives(const ProblemSpec& problem) {
  return std::visit([](const auto& p) -> const PrimitiveSet& { return p.primitives(); },
                    problem);
}

int kolmogorov_size(const ProblemSpec& problem) { return 2 * problem_size(problem) - 1; }

Evaluation evaluate(const ProblemSpec& problem, const ProgramTree& tree) {
  struct {
    const ProgramTree& tree;
    Evaluation operator()(const OrderProblem& p) const { return fitness_order(tree, p); }
    Evaluation operator()(const LoudProblem& p) const { return fitness_loud(tree, p); }
    Evaluation operator()(const OnOffProblem& p) const { return fitness_onoff(tree, p); }
  } visitor{tree};
  return std::visit(visitor, problem);
}

}  // namespace gpsizing
