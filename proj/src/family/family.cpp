#include "lagsg/family.hpp"

#include <map>
#include <random>

#include "lagsg/error.hpp"
#include "lagsg/ma_core.hpp"

namespace lagsg {

namespace {

const std::vector<std::string> kZVars{"Z"};
const std::vector<std::string> kXYZ{"x", "y", "Z"};

std::vector<std::string> coefficient_names() {
  std::vector<std::string> n{"T0"};
  for (const char* k : kT1Keys) n.push_back(std::string("T1_") + k);
  for (const char* k : kT2Keys) n.push_back(std::string("T2_") + k);
  for (const char* k : kT3Keys) n.push_back(std::string("T3_") + k);
  return n;
}

const std::vector<std::string>& ring() {
  static const std::vector<std::string> r = [] {
    std::vector<std::string> v{"x", "y"};
    for (const auto& s : recursion_symbols()) v.push_back(s);
    return v;
  }();
  return r;
}

// Target second derivative for each monomial, in identity order.
struct Slot {
  unsigned ex, ey;
  const char* name;
};
constexpr std::array<Slot, 10> kSlots{{{0, 0, "T0"},
                                       {1, 0, "T1_1"},
                                       {0, 1, "T1_2"},
                                       {2, 0, "T2_11"},
                                       {1, 1, "T2_12"},
                                       {0, 2, "T2_22"},
                                       {3, 0, "T3_111"},
                                       {2, 1, "T3_112"},
                                       {1, 2, "T3_122"},
                                       {0, 3, "T3_222"}}};

// Expansion with each coefficient replaced by prefix + name.
Poly expansion(const std::vector<std::string>& vars, const std::string& prefix) {
  auto c = [&](const std::string& n) { return Poly::variable(vars, prefix + n); };
  const Poly x = Poly::variable(vars, "x");
  const Poly y = Poly::variable(vars, "y");
  const Rational h(1, 2), s(1, 6);
  return c("T0") + c("T1_1") * x + c("T1_2") * y + h * c("T2_11") * x * x + c("T2_12") * x * y +
         h * c("T2_22") * y * y + s * c("T3_111") * x.pow(3) + h * c("T3_112") * x * x * y +
         h * c("T3_122") * x * y * y + s * c("T3_222") * y.pow(3);
}

Poly normalize(const Poly& id, const std::string& dd) {
  const Poly d = id.diff(dd);
  if (!d.is_constant() || d.is_zero()) throw InternalError("identity is not linear in " + dd);
  Poly out = id;
  Rational inv(1);
  inv /= d.constant_term();
  out *= inv;
  return out;
}

// Poly over the recursion symbols, with each symbol replaced by a Z-polynomial.
Poly evaluate(const Poly& p, const std::map<std::string, Poly>& known) {
  Poly out(kZVars);
  const auto& vars = p.variables();
  for (const auto& [e, coef] : p.terms()) {
    Poly term = Poly::constant(kZVars, coef);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      const auto it = known.find(vars[k]);
      if (it == known.end()) throw InternalError("recursion uses undetermined coefficient " + vars[k]);
      term *= it->second.pow(e[k]);
    }
    out += term;
  }
  return out;
}

Poly affine(const IntegrationConstants& c) {
  return Poly::constant(kZVars, c[0]) + Poly::monomial(kZVars, {1}, c[1]);
}

std::optional<unsigned> level_degree(std::initializer_list<const Poly*> entries) {
  std::optional<unsigned> d;
  for (const Poly* p : entries)
    if (!p->is_zero()) d = std::max(d.value_or(0), p->degree_in(0));
  return d;
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvalidArgument("expected a rational (string \"a/b\" or integer)");
}

IntegrationConstants constants_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument(where + ": expected [c0, c1]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

template <std::size_t N>
void read_block(const nlohmann::json& j, const char* level, const std::array<const char*, N>& keys,
                std::array<IntegrationConstants, N>& dst) {
  if (!j.is_object()) throw InvalidArgument(std::string(level) + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    std::size_t idx = N;
    for (std::size_t i = 0; i < N; ++i)
      if (k == keys[i]) idx = i;
    if (idx == N) throw InvalidArgument(std::string(level) + ": unknown entry '" + k + "'");
    dst[idx] = constants_from_json(v, std::string(level) + "." + k);
  }
}

}  // namespace

FamilySpec::FamilySpec() {
  for (auto& p : T3) p = Poly(kZVars);
}

void FamilySpec::validate() const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (T3[i].variables() != kZVars) throw InvalidArgument(std::string("T3_") + kT3Keys[i] + " must be a polynomial in Z");
    if (T3[i].degree_in(0) > 1) throw InvalidArgument(std::string("T3_") + kT3Keys[i] + " must have Z-degree <= 1");
  }
}

const std::vector<std::string>& recursion_symbols() {
  static const std::vector<std::string> s = [] {
    std::vector<std::string> v = coefficient_names();
    for (const auto& n : coefficient_names()) v.push_back("dd" + n);
    return v;
  }();
  return s;
}

std::vector<RecursionIdentity> derive_recursions() {
  const auto& r = ring();
  const Poly T = expansion(r, "");
  const Poly Tzz = expansion(r, "dd");
  const Poly Txx = T.diff("x").diff("x");
  const Poly Tyy = T.diff("y").diff("y");
  const Poly Txy = T.diff("x").diff("y");
  const Poly eq = Txx * Tyy - Txy * Txy + Tzz;

  std::vector<RecursionIdentity> out;
  for (const Slot& s : kSlots) {
    Poly id(r);
    for (const auto& [e, c] : eq.terms()) {
      if (e[0] != s.ex || e[1] != s.ey) continue;
      Exponents rest = e;
      rest[0] = rest[1] = 0;
      id += Poly::monomial(r, rest, c);
    }
    out.push_back({s.ex, s.ey, normalize(id.with_variables(recursion_symbols()), std::string("dd") + s.name)});
  }
  // Nothing of degree above three in (x, y) may survive.
  for (const auto& [e, c] : eq.terms())
    if (e[0] + e[1] > 3) throw InternalError("unexpected high-order monomial in the expansion");
  return out;
}

std::vector<RecursionIdentity> transcribed_recursions() {
  const auto& v = recursion_symbols();
  auto P = [&](const char* text) { return parse_poly(text, v); };
  return {
      {0, 0, P("ddT0 + T2_11*T2_22 - T2_12^2")},
      {1, 0, P("ddT1_1 + T2_22*T3_111 - 2*T2_12*T3_112 + T2_11*T3_222")},
      {0, 1, P("ddT1_2 + T2_22*T3_112 - 2*T2_12*T3_122 + T2_11*T3_222")},
      {2, 0, P("ddT2_11 + 2*(T3_111*T3_122 - T3_112^2)")},
      {1, 1, P("ddT2_12 + T3_111*T3_222 - T3_112*T3_122")},
      {0, 2, P("ddT2_22 + 2*(T3_112*T3_222 - T3_122^2)")},
      {3, 0, P("ddT3_111")},
      {2, 1, P("ddT3_112")},
      {1, 2, P("ddT3_122")},
      {0, 3, P("ddT3_222")},
  };
}

std::vector<RecursionMismatch> compare_with_transcribed() {
  const auto d = derive_recursions();
  const auto t = transcribed_recursions();
  std::vector<RecursionMismatch> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i].identity == t[i].identity)) out.push_back({d[i].ex, d[i].ey, d[i].identity, t[i].identity});
  return out;
}

FamilySolution build_family(const FamilySpec& spec) {
  spec.validate();
  static const std::vector<RecursionIdentity> ids = derive_recursions();

  std::map<std::string, Poly> known;
  for (std::size_t i = 0; i < 4; ++i) {
    known[std::string("T3_") + kT3Keys[i]] = spec.T3[i];
    known[std::string("ddT3_") + kT3Keys[i]] = spec.T3[i].diff(0).diff(0);
  }

  const std::map<std::string, const IntegrationConstants*> constants{
      {"T2_11", &spec.T2[0]}, {"T2_12", &spec.T2[1]}, {"T2_22", &spec.T2[2]},
      {"T1_1", &spec.T1[0]},  {"T1_2", &spec.T1[1]},  {"T0", &spec.T0}};

  // Cubic identities are consistency checks; then levels 2, 1, 0.
  for (std::size_t i = 6; i < 10; ++i)
    if (!evaluate(ids[i].identity, known).is_zero()) throw InternalError("T3 entries are not affine in Z");
  for (std::size_t i : {3, 4, 5, 1, 2, 0}) {
    const std::string name = kSlots[i].name;
    const std::string dd = "dd" + name;
    const Poly rest = ids[i].identity - Poly::variable(recursion_symbols(), dd);
    const Poly second = -evaluate(rest, known);
    known[dd] = second;
    known[name] = second.antiderivative(0).antiderivative(0) + affine(*constants.at(name));
  }

  FamilySolution sol{GeneratingFunction(ChartKind::DualT, Poly(kXYZ), Rational(1)), spec.T3, {}, {}, Poly(kZVars), {}};
  for (std::size_t i = 0; i < 3; ++i) sol.T2[i] = known.at(std::string("T2_") + kT2Keys[i]);
  for (std::size_t i = 0; i < 2; ++i) sol.T1[i] = known.at(std::string("T1_") + kT1Keys[i]);
  sol.T0 = known.at("T0");

  const Poly x = Poly::variable(kXYZ, "x");
  const Poly y = Poly::variable(kXYZ, "y");
  auto lift = [](const Poly& p) { return p.with_variables(kXYZ); };
  const Rational h(1, 2), s(1, 6);
  const Poly T = lift(sol.T0) + lift(sol.T1[0]) * x + lift(sol.T1[1]) * y + h * lift(sol.T2[0]) * x * x +
                 lift(sol.T2[1]) * x * y + h * lift(sol.T2[2]) * y * y + s * lift(sol.T3[0]) * x.pow(3) +
                 h * lift(sol.T3[1]) * x * x * y + h * lift(sol.T3[2]) * x * y * y + s * lift(sol.T3[3]) * y.pow(3);
  sol.gf = GeneratingFunction(ChartKind::DualT, T, Rational(1));
  const Poly res = ma_residual_poly(sol.gf);
  if (!res.is_zero()) throw InternalError("family member has nonzero residual: " + res.str());
  sol.degrees = degree_report(sol);
  return sol;
}

DegreeReport degree_report(const FamilySolution& sol) {
  return {level_degree({&sol.T3[0], &sol.T3[1], &sol.T3[2], &sol.T3[3]}),
          level_degree({&sol.T2[0], &sol.T2[1], &sol.T2[2]}), level_degree({&sol.T1[0], &sol.T1[1]}),
          level_degree({&sol.T0})};
}

FamilySpec fold_family_spec() {
  FamilySpec s;
  s.T2[0] = {Rational(0), Rational(-1)};  // T2_11 = -Z
  s.T2[2] = {Rational(1), Rational(0)};   // T2_22 = 1
  return s;
}

FamilySpec random_family_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto r = [&](bool nonzero) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    long n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return Rational(n, den(rng));
  };
  FamilySpec s;
  for (auto& p : s.T3) p = Poly::constant(kZVars, r(false)) + Poly::monomial(kZVars, {1}, r(true));
  for (auto& c : s.T2) c = {r(false), r(false)};
  for (auto& c : s.T1) c = {r(false), r(false)};
  s.T0 = {r(false), r(false)};
  return s;
}

nlohmann::json to_json(const FamilySpec& spec) {
  nlohmann::json j;
  for (std::size_t i = 0; i < 4; ++i) j["T3"][kT3Keys[i]] = spec.T3[i].str();
  auto pair = [](const IntegrationConstants& c) { return nlohmann::json::array({c[0].str(), c[1].str()}); };
  for (std::size_t i = 0; i < 3; ++i) j["T2"][kT2Keys[i]] = pair(spec.T2[i]);
  for (std::size_t i = 0; i < 2; ++i) j["T1"][kT1Keys[i]] = pair(spec.T1[i]);
  j["T0"] = pair(spec.T0);
  return j;
}

FamilySpec family_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("family spec: expected an object");
  FamilySpec s;
  for (const auto& [k, v] : j.items()) {
    if (k == "T3") {
      if (!v.is_object()) throw InvalidArgument("T3: expected an object");
      for (const auto& [kk, vv] : v.items()) {
        std::size_t idx = 4;
        for (std::size_t i = 0; i < 4; ++i)
          if (kk == kT3Keys[i]) idx = i;
        if (idx == 4) throw InvalidArgument("T3: unknown entry '" + kk + "'");
        if (!vv.is_string()) throw InvalidArgument("T3." + kk + ": expected a polynomial string in Z");
        s.T3[idx] = parse_poly(vv.get<std::string>(), kZVars);
      }
    } else if (k == "T2") {
      read_block(v, "T2", kT2Keys, s.T2);
    } else if (k == "T1") {
      read_block(v, "T1", kT1Keys, s.T1);
    } else if (k == "T0") {
      s.T0 = constants_from_json(v, "T0");
    } else {
      throw InvalidArgument("family spec: unknown key '" + k + "'");
    }
  }
  s.validate();
  return s;
}

}  // namespace lagsg
