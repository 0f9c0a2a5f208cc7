#include "gpsizing/tree.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "gpsizing/errors.hpp"

namespace gpsizing {
namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isspace(c) || c == '(' || c == ')';
  });
}

std::vector<double> cumulative(const std::vector<double>& weights,
                               std::size_t expected, const char* what) {
  if (weights.size() != expected) {
    throw ConfigError(std::string(what) + " weights: expected " +
                      std::to_string(expected) + " entries");
  }
  std::vector<double> cdf(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw ConfigError(std::string(what) + " weights must be non-negative");
    }
    total += weights[i];
    cdf[i] = total;
  }
  if (!(total > 0.0)) {
    throw ConfigError(std::string(what) + " weights must sum to > 0");
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return cdf;
}

Symbol draw(const std::vector<double>& cdf, std::size_t count,
            SeededRng& rng) {
  if (cdf.empty()) return static_cast<Symbol>(rng.below(count));
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<Symbol>(
      std::min<std::size_t>(it - cdf.begin(), count - 1));
}

}  // namespace

PrimitiveSet::PrimitiveSet(std::vector<std::string> functions,
                           std::vector<std::string> terminals)
    : functions_(std::move(functions)), terminals_(std::move(terminals)) {
  if (functions_.empty() || terminals_.empty()) {
    throw ConfigError("primitive set needs at least one function and one terminal");
  }
  if (functions_.size() > 0xffff || terminals_.size() > 0xffff) {
    throw ConfigError("primitive set too large");
  }
  std::set<std::string> seen;
  for (const auto* list : {&functions_, &terminals_}) {
    for (const auto& name : *list) {
      if (!valid_name(name)) throw ConfigError("invalid symbol name '" + name + "'");
      if (!seen.insert(name).second) {
        throw ConfigError("duplicate symbol '" + name + "'");
      }
    }
  }
}

std::optional<Symbol> PrimitiveSet::find_function(std::string_view name) const {
  const auto it = std::find(functions_.begin(), functions_.end(), name);
  if (it == functions_.end()) return std::nullopt;
  return static_cast<Symbol>(it - functions_.begin());
}

std::optional<Symbol> PrimitiveSet::find_terminal(std::string_view name) const {
  const auto it = std::find(terminals_.begin(), terminals_.end(), name);
  if (it == terminals_.end()) return std::nullopt;
  return static_cast<Symbol>(it - terminals_.begin());
}

double PrimitiveSet::default_terminal_probability() const {
  return static_cast<double>(chi_t()) / static_cast<double>(chi_f() + chi_t());
}

void PrimitiveSet::set_function_weights(std::vector<double> weights) {
  function_cdf_ = cumulative(weights, chi_f(), "function");
}

void PrimitiveSet::set_terminal_weights(std::vector<double> weights) {
  terminal_cdf_ = cumulative(weights, chi_t(), "terminal");
}

Symbol PrimitiveSet::draw_function(SeededRng& rng) const {
  return draw(function_cdf_, chi_f(), rng);
}

Symbol PrimitiveSet::draw_terminal(SeededRng& rng) const {
  return draw(terminal_cdf_, chi_t(), rng);
}

ProgramTree::ProgramTree(std::vector<Node> prefix) : nodes_(std::move(prefix)) {
  if (nodes_.empty()) throw std::invalid_argument("empty program tree");
  std::size_t open = 1;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (open == 0) throw std::invalid_argument("trailing nodes after complete tree");
    open = nodes_[i].is_function ? open + 1 : open - 1;
  }
  if (open != 0) throw std::invalid_argument("incomplete program tree");
}

int ProgramTree::height() const {
  // Stack of depths for pending child slots.
  int best = 0;
  std::vector<int> pending;
  pending.reserve(32);
  pending.push_back(0);
  for (const Node& node : nodes_) {
    const int depth = pending.back();
    pending.pop_back();
    best = std::max(best, depth);
    if (node.is_function) {
      pending.push_back(depth + 1);
      pending.push_back(depth + 1);
    }
  }
  return best;
}

bool ProgramTree::is_full() const {
  if (nodes_.empty()) return false;
  const int h = height();
  std::vector<int> pending{0};
  for (const Node& node : nodes_) {
    const int depth = pending.back();
    pending.pop_back();
    if (node.is_function) {
      pending.push_back(depth + 1);
      pending.push_back(depth + 1);
    } else if (depth != h) {
      return false;
    }
  }
  return true;
}

std::size_t ProgramTree::subtree_end(std::size_t root) const {
  std::size_t open = 1;
  std::size_t i = root;
  while (open > 0) {
    open = nodes_[i].is_function ? open + 1 : open - 1;
    ++i;
  }
  return i;
}

ProgramTree ProgramTree::with_subtree(std::size_t at, const ProgramTree& donor,
                                      std::size_t donor_root) const {
  const std::size_t end = subtree_end(at);
  const std::size_t donor_end = donor.subtree_end(donor_root);
  std::vector<Node> out;
  out.reserve(size() - (end - at) + (donor_end - donor_root));
  out.insert(out.end(), nodes_.begin(), nodes_.begin() + at);
  out.insert(out.end(), donor.nodes_.begin() + donor_root,
             donor.nodes_.begin() + donor_end);
  out.insert(out.end(), nodes_.begin() + end, nodes_.end());
  return ProgramTree(Unchecked{}, std::move(out));
}

namespace {

void render(const ProgramTree& tree, const PrimitiveSet& prims, std::size_t& i,
            std::string& out) {
  const Node& node = tree[i++];
  if (!node.is_function) {
    out += prims.terminal_name(node.symbol);
    return;
  }
  out += '(';
  out += prims.function_name(node.symbol);
  out += ' ';
  render(tree, prims, i, out);
  out += ' ';
  render(tree, prims, i, out);
  out += ')';
}

}  // namespace

std::string to_sexpr(const ProgramTree& tree, const PrimitiveSet& prims) {
  std::string out;
  if (tree.empty()) return out;
  std::size_t i = 0;
  render(tree, prims, i, out);
  return out;
}

ProgramTree parse_sexpr(std::string_view text, const PrimitiveSet& prims) {
  std::vector<Node> nodes;
  std::vector<int> remaining;  // children still expected per open function
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_token = [&] {
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '(' && text[i] != ')') {
      ++i;
    }
    return text.substr(start, i - start);
  };
  auto child_done = [&] {
    if (!remaining.empty()) --remaining.back();
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] == '(') {
      if (!remaining.empty() && remaining.back() == 0) {
        throw std::invalid_argument("too many arguments in s-expression");
      }
      ++i;
      skip_space();
      const auto name = read_token();
      const auto f = prims.find_function(name);
      if (!f) throw std::invalid_argument("unknown function '" + std::string(name) + "'");
      nodes.push_back({*f, true});
      remaining.push_back(2);
    } else if (text[i] == ')') {
      if (remaining.empty() || remaining.back() != 0) {
        throw std::invalid_argument("function must have exactly two arguments");
      }
      ++i;
      remaining.pop_back();
      child_done();
    } else {
      if (!remaining.empty() && remaining.back() == 0) {
        throw std::invalid_argument("too many arguments in s-expression");
      }
      const auto name = read_token();
      const auto t = prims.find_terminal(name);
      if (!t) throw std::invalid_argument("unknown terminal '" + std::string(name) + "'");
      nodes.push_back({*t, false});
      child_done();
    }
    skip_space();
    if (remaining.empty() && i < text.size()) {
      throw std::invalid_argument("trailing text after s-expression");
    }
  }
  if (!remaining.empty()) throw std::invalid_argument("unbalanced s-expression");
  return ProgramTree(std::move(nodes));
}

}  // namespace gpsizing
