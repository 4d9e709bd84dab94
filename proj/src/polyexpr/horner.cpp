#include "lagsg/horner.hpp"

#include <map>

#include "lagsg/error.hpp"
#include "lagsg/poly.hpp"

namespace lagsg {

HornerPoly::HornerPoly(const Poly& p) : arity_(p.arity()) {
  std::vector<std::pair<std::vector<unsigned>, double>> terms;
  terms.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) terms.emplace_back(std::vector<unsigned>(e.begin(), e.end()), c.to_double());
  root_ = terms.empty() ? -1 : build(terms, 0);
}

int HornerPoly::build(const std::vector<std::pair<std::vector<unsigned>, double>>& terms, unsigned var) {
  Node node;
  node.var = var;
  if (var == arity_) {
    for (const auto& t : terms) node.value += t.second;
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size() - 1);
  }
  std::map<unsigned, std::vector<std::pair<std::vector<unsigned>, double>>> groups;
  for (const auto& t : terms) groups[t.first[var]].push_back(t);
  node.degree = groups.rbegin()->first;

  std::vector<int> kids(node.degree + 1, -1);
  for (const auto& [k, group] : groups) kids[k] = build(group, var + 1);
  node.first_child = static_cast<int>(children_.size());
  children_.insert(children_.end(), kids.begin(), kids.end());
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size() - 1);
}

double HornerPoly::eval_node(int index, std::span<const double> point) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  if (node.var == arity_) return node.value;
  const double x = point[node.var];
  double acc = 0.0;
  for (unsigned k = node.degree + 1; k-- > 0;) {
    acc *= x;
    const int child = children_[static_cast<std::size_t>(node.first_child) + k];
    if (child >= 0) acc += eval_node(child, point);
  }
  return acc;
}

double HornerPoly::operator()(std::span<const double> point) const {
  if (point.size() != arity_)
    throw InvalidArgument("arity mismatch: expected " + std::to_string(arity_) + " values, got " +
                          std::to_string(point.size()));
  return root_ < 0 ? 0.0 : eval_node(root_, point);
}

}  // namespace lagsg
