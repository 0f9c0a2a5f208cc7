#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpsizing/rng.hpp"

namespace gpsizing {

using Symbol = std::uint16_t;

/// Function and terminal symbols of a binary GP. Every function has arity 2.
///
/// Symbols are drawn uniformly unless weights are installed; ON-OFF uses
/// function weights to bias EXP over its complement.
class PrimitiveSet {
 public:
  PrimitiveSet(std::vector<std::string> functions,
               std::vector<std::string> terminals);

  std::size_t chi_f() const { return functions_.size(); }
  std::size_t chi_t() const { return terminals_.size(); }

  const std::string& function_name(Symbol s) const { return functions_.at(s); }
  const std::string& terminal_name(Symbol s) const { return terminals_.at(s); }
  std::optional<Symbol> find_function(std::string_view name) const;
  std::optional<Symbol> find_terminal(std::string_view name) const;

  /// chi_t / (chi_f + chi_t): terminal frequency in the primitive set.
  double default_terminal_probability() const;

  /// Relative draw weights; must match the symbol count and sum to > 0.
  void set_function_weights(std::vector<double> weights);
  void set_terminal_weights(std::vector<double> weights);

  Symbol draw_function(SeededRng& rng) const;
  Symbol draw_terminal(SeededRng& rng) const;

 private:
  std::vector<std::string> functions_;
  std::vector<std::string> terminals_;
  std::vector<double> function_cdf_;
  std::vector<double> terminal_cdf_;
};

struct Node {
  Symbol symbol = 0;
  bool is_function = false;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Binary parse tree stored in prefix (preorder) order.
///
/// Every subtree occupies a contiguous range, and leaves appear in the same
/// left-to-right order as an inorder traversal. Height counts edges, so a
/// function with two terminal children has height 1.
class ProgramTree {
 public:
  ProgramTree() = default;
  /// Throws std::invalid_argument unless `prefix` encodes one binary tree.
  explicit ProgramTree(std::vector<Node> prefix);

  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const { return (nodes_.size() + 1) / 2; }
  std::size_t function_count() const { return nodes_.size() / 2; }
  int height() const;
  bool empty() const { return nodes_.empty(); }

  std::span<const Node> nodes() const { return nodes_; }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }

  /// One past the last node of the subtree rooted at `root`.
  std::size_t subtree_end(std::size_t root) const;

  /// Copy of this tree with the subtree at `at` replaced by the subtree of
  /// `donor` rooted at `donor_root`.
  ProgramTree with_subtree(std::size_t at, const ProgramTree& donor,
                           std::size_t donor_root) const;

  /// Leaves that are all at the same depth.
  bool is_full() const;

  friend bool operator==(const ProgramTree&, const ProgramTree&) = default;

 private:
  struct Unchecked {};
  ProgramTree(Unchecked, std::vector<Node> prefix)
      : nodes_(std::move(prefix)) {}

  std::vector<Node> nodes_;
};

/// Renders `(F a b)` s-expressions; terminals print by name.
std::string to_sexpr(const ProgramTree& tree, const PrimitiveSet& prims);

/// Parses the s-expression form produced by to_sexpr.
ProgramTree parse_sexpr(std::string_view text, const PrimitiveSet& prims);

}  // namespace gpsizing
