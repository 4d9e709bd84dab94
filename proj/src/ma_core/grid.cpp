#include "lagsg/grid.hpp"

#include <cmath>

#include "lagsg/error.hpp"

namespace lagsg {

void validate(const Grid1D& g, const std::string& what) {
  if (!std::isfinite(g.min) || !std::isfinite(g.max)) throw InvalidArgument(what + ": grid bounds must be finite");
  if (g.n < 1) throw InvalidArgument(what + ": grid needs at least one node");
  if (g.min > g.max) throw InvalidArgument(what + ": grid bounds are not ordered (min > max)");
}

Grid1D grid_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) throw InvalidArgument(what + ": grid must be an object {min, max, n}");
  for (const auto& [key, value] : j.items())
    if (key != "min" && key != "max" && key != "n") throw InvalidArgument(what + ": unknown grid key '" + key + "'");
  Grid1D g;
  try {
    g.min = j.at("min").get<double>();
    g.max = j.at("max").get<double>();
    g.n = j.at("n").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(what + ": " + e.what());
  }
  validate(g, what);
  return g;
}

}  // namespace lagsg
