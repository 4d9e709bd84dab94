#include "lagsg/chart.hpp"

#include "lagsg/error.hpp"

namespace lagsg {

const std::vector<std::string>& chart_variables(ChartKind chart) {
  static const std::vector<std::string> p{"x", "y", "z"};
  static const std::vector<std::string> r{"X", "Y", "Z"};
  static const std::vector<std::string> s{"X", "Y", "z"};
  static const std::vector<std::string> t{"x", "y", "Z"};
  switch (chart) {
    case ChartKind::ClassicalP: return p;
    case ChartKind::DualR: return r;
    case ChartKind::DualS: return s;
    case ChartKind::DualT: return t;
  }
  throw InvalidArgument("unknown chart");
}

std::string_view chart_name(ChartKind chart) {
  switch (chart) {
    case ChartKind::ClassicalP: return "P";
    case ChartKind::DualR: return "R";
    case ChartKind::DualS: return "S";
    case ChartKind::DualT: return "T";
  }
  throw InvalidArgument("unknown chart");
}

ChartKind chart_from_name(std::string_view name) {
  if (name == "P") return ChartKind::ClassicalP;
  if (name == "R") return ChartKind::DualR;
  if (name == "S") return ChartKind::DualS;
  if (name == "T") return ChartKind::DualT;
  throw InvalidArgument("unknown chart name '" + std::string(name) + "' (expected P, R, S or T)");
}

std::size_t chart_slot(ChartKind chart, std::size_t i) {
  static constexpr std::size_t p[] = {kX, kY, kZ};
  static constexpr std::size_t r[] = {kMomX, kMomY, kMomZ};
  static constexpr std::size_t s[] = {kMomX, kMomY, kZ};
  static constexpr std::size_t t[] = {kX, kY, kMomZ};
  if (i >= 3) throw InvalidArgument("chart variable index out of range");
  switch (chart) {
    case ChartKind::ClassicalP: return p[i];
    case ChartKind::DualR: return r[i];
    case ChartKind::DualS: return s[i];
    case ChartKind::DualT: return t[i];
  }
  throw InvalidArgument("unknown chart");
}

GeneratingFunction::GeneratingFunction(ChartKind chart, const Poly& potential, Rational eps_q)
    : chart_(chart), potential_(potential.with_variables(chart_variables(chart))), eps_q_(std::move(eps_q)) {
  if (eps_q_.sign() <= 0) throw DomainError("eps_q must be positive, got " + eps_q_.str());
}

GeneratingFunction::GeneratingFunction(ChartKind chart, std::string_view potential_text, Rational eps_q)
    : GeneratingFunction(chart, parse_poly(potential_text, chart_variables(chart)), std::move(eps_q)) {}

nlohmann::json to_json(const GeneratingFunction& gf) {
  return {{"chart", std::string(chart_name(gf.chart()))},
          {"potential", gf.potential().str()},
          {"eps_q", gf.eps_q().str()}};
}

GeneratingFunction generating_function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("generating function record must be an object");
  for (const auto& [key, value] : j.items())
    if (key != "chart" && key != "potential" && key != "eps_q")
      throw InvalidArgument("unknown key '" + key + "' in generating function record");
  if (!j.contains("chart") || !j.contains("potential"))
    throw InvalidArgument("generating function record needs 'chart' and 'potential'");
  const ChartKind chart = chart_from_name(j.at("chart").get<std::string>());
  Rational eps_q(1);
  if (j.contains("eps_q")) {
    const auto& e = j.at("eps_q");
    if (e.is_string()) {
      eps_q = Rational::parse(e.get<std::string>());
    } else if (e.is_number_integer()) {
      eps_q = Rational(e.get<long>());
    } else {
      throw InvalidArgument("eps_q must be an integer or a string \"a/b\"");
    }
  }
  return GeneratingFunction(chart, j.at("potential").get<std::string>(), eps_q);
}

GeneratingFunction fold_example() {
  return GeneratingFunction(ChartKind::DualT, "y^2/2 - x^2*Z/2 + Z^3/6", Rational(1));
}

}  // namespace lagsg
