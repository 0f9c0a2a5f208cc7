#pragma once

#include <compare>
#include <string_view>
#include <variant>
#include <vector>

#include "gpsizing/tree.hpp"

namespace gpsizing {

enum class Direction { kMaximize, kMinimize };

/// Fitness together with the convention it is read under.
struct Evaluation {
  double fitness = 0.0;
  Direction direction = Direction::kMaximize;
  int correct_bb_count = 0;
  bool is_optimal = false;

  bool better_than(const Evaluation& other) const {
    return direction == Direction::kMaximize ? fitness > other.fitness
                                             : fitness < other.fitness;
  }
};

/// ORDER: JOIN over the terminals X1, ~X1, ..., Xm, ~Xm. Terminal symbol
/// 2(i-1) is X_i and 2(i-1)+1 is its complement.
class OrderProblem {
 public:
  explicit OrderProblem(int m);

  int m() const { return m_; }
  const PrimitiveSet& primitives() const { return prims_; }
  Symbol terminal(int index, bool complemented) const;

 private:
  int m_;
  PrimitiveSet prims_;
};

struct OrderLiteral {
  int index = 0;  // 1-based
  bool complemented = false;

  friend auto operator<=>(const OrderLiteral&, const OrderLiteral&) = default;
};

/// LOUD: `add` over the constants 0, 1, 4. The goal is m4 fours and m1 ones.
class LoudProblem {
 public:
  LoudProblem(int m4, int m1);

  int m4() const { return m4_; }
  int m1() const { return m1_; }
  int m() const { return m4_ + m1_; }
  const PrimitiveSet& primitives() const { return prims_; }

 private:
  int m4_;
  int m1_;
  PrimitiveSet prims_;
};

/// ON-OFF: functions EXP and ~EXP over terminals X1, X2. A leaf counts only
/// when every ancestor is EXP. Initialization draws EXP with probability
/// p_exp at each internal node.
class OnOffProblem {
 public:
  OnOffProblem(int m_x1, int m_x2, double p_exp);

  int m_x1() const { return m_x1_; }
  int m_x2() const { return m_x2_; }
  int m() const { return m_x1_ + m_x2_; }
  double p_exp() const { return p_exp_; }
  const PrimitiveSet& primitives() const { return prims_; }

  static constexpr Symbol kExp = 0;
  static constexpr Symbol kSuppress = 1;
  static constexpr Symbol kX1 = 0;
  static constexpr Symbol kX2 = 1;

 private:
  int m_x1_;
  int m_x2_;
  double p_exp_;
  PrimitiveSet prims_;
};

/// Left-to-right leaf scan; the first X_i or ~X_i seen fixes index i.
/// Sorted by index. Throws std::invalid_argument on a foreign symbol.
std::vector<OrderLiteral> express_order(const ProgramTree& tree, const OrderProblem& p);
/// Count of expressed uncomplemented X_i; maximized.
Evaluation fitness_order(const ProgramTree& tree, const OrderProblem& p);

/// |#4 - m4| + |#1 - m1| over every leaf; minimized.
Evaluation fitness_loud(const ProgramTree& tree, const LoudProblem& p);

/// Expressed leaves in left-to-right order.
std::vector<Symbol> express_onoff(const ProgramTree& tree, const OnOffProblem& p);
/// |#X1 - m_x1| + |#X2 - m_x2| over expressed leaves; minimized.
Evaluation fitness_onoff(const ProgramTree& tree, const OnOffProblem& p);

using ProblemSpec = std::variant<OrderProblem, LoudProblem, OnOffProblem>;

std::string_view problem_name(const ProblemSpec& problem);
int problem_size(const ProblemSpec& problem);
const PrimitiveSet& primitives(const ProblemSpec& problem);
/// Size of the shortest perfect program, 2m - 1.
int kolmogorov_size(const ProblemSpec& problem);
Evaluation evaluate(const ProblemSpec& problem, const ProgramTree& tree);

}  // namespace gpsizing
