#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lagsg/poly.hpp"
#include "lagsg/rational.hpp"

namespace lagsg {

// Coordinate chart on a Lagrangian submanifold of T*R^3 with coordinates
// (x, y, z, X, Y, Z). Each chart fixes which three of them are independent.
enum class ChartKind {
  ClassicalP,  // (x, y, z): graph of dP
  DualR,       // (X, Y, Z)
  DualS,       // (X, Y, z)
  DualT,       // (x, y, Z)
};

// Ambient coordinate slots, in this order everywhere.
enum AmbientIndex : std::size_t { kX = 0, kY = 1, kZ = 2, kMomX = 3, kMomY = 4, kMomZ = 5 };

using ChartPoint = std::array<double, 3>;

const std::vector<std::string>& chart_variables(ChartKind chart);
// Short names used in serialized records: "P", "R", "S", "T".
std::string_view chart_name(ChartKind chart);
ChartKind chart_from_name(std::string_view name);
// Ambient slot (0..5) of chart variable i.
std::size_t chart_slot(ChartKind chart, std::size_t i);

// A chart plus a polynomial potential plus the positive constant eps*q_g.
class GeneratingFunction {
 public:
  // Re-expresses `potential` over the chart's variables; throws InvalidArgument
  // if it uses other variables and DomainError unless eps_q > 0.
  GeneratingFunction(ChartKind chart, const Poly& potential, Rational eps_q);
  GeneratingFunction(ChartKind chart, std::string_view potential_text, Rational eps_q);

  ChartKind chart() const { return chart_; }
  const Poly& potential() const { return potential_; }
  const Rational& eps_q() const { return eps_q_; }
  const std::vector<std::string>& variables() const { return chart_variables(chart_); }

 private:
  ChartKind chart_;
  Poly potential_;
  Rational eps_q_;
};

// {"chart": "T", "potential": "...", "eps_q": "1"}
nlohmann::json to_json(const GeneratingFunction& gf);
GeneratingFunction generating_function_from_json(const nlohmann::json& j);

// T = y^2/2 - x^2*Z/2 + Z^3/6 on the (x, y, Z) chart with eps*q_g = 1:
// the deformed fold used throughout the tests and the verification suite.
GeneratingFunction fold_example();

}  // namespace lagsg
