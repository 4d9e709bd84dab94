#pragma once

#include <span>
#include <vector>

namespace lagsg {

class Poly;

// Double-precision evaluator compiled from a Poly: nested Horner form, one
// variable per level. Build once and reuse inside hot loops.
class HornerPoly {
 public:
  HornerPoly() = default;
  explicit HornerPoly(const Poly& p);

  double operator()(std::span<const double> point) const;
  std::size_t arity() const { return arity_; }

 private:
  struct Node {
    unsigned var = 0;        // level; == arity for leaves
    double value = 0.0;      // leaf constant
    int first_child = -1;    // children[k] for x_var^k at nodes_[first_child + k]
    unsigned degree = 0;
  };

  int build(const std::vector<std::pair<std::vector<unsigned>, double>>& terms, unsigned var);
  double eval_node(int node, std::span<const double> point) const;

  std::size_t arity_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> children_;
  int root_ = -1;
};

}  // namespace lagsg
