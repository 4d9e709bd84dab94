#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

namespace lagsg {

// n equally spaced nodes from min to max inclusive (n == 1 gives just min).
struct Grid1D {
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 1;

  // Node i is computed as min + (max - min) * i / (n - 1) so that symmetric
  // ranges hit 0 exactly when it is a node.
  double at(std::size_t i) const {
    if (n <= 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

// Throws InvalidArgument unless n >= 1 and min <= max (both finite).
void validate(const Grid1D& g, const std::string& what);
// {"min": a, "max": b, "n": k}
Grid1D grid_from_json(const nlohmann::json& j, const std::string& what);

}  // namespace lagsg
