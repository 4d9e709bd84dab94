#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagsg/chart.hpp"
#include "lagsg/poly.hpp"
#include "lagsg/rational.hpp"

namespace lagsg {

// Cubic truncation of a T-chart potential in the horizontal variables:
//   T = T0 + T1_a x^a + 1/2 T2_ab x^a x^b + 1/6 T3_abc x^a x^b x^c,   (x^1, x^2) = (x, y)
// with every coefficient a polynomial in Z.

// Independent entries, in this order everywhere.
inline constexpr std::array<const char*, 4> kT3Keys{"111", "112", "122", "222"};
inline constexpr std::array<const char*, 3> kT2Keys{"11", "12", "22"};
inline constexpr std::array<const char*, 2> kT1Keys{"1", "2"};

// c0 + c1 Z, added after the zero-constant double antiderivative.
using IntegrationConstants = std::array<Rational, 2>;

struct FamilySpec {
  std::array<Poly, 4> T3;  // over {"Z"}, degree <= 1
  std::array<IntegrationConstants, 3> T2{};
  std::array<IntegrationConstants, 2> T1{};
  IntegrationConstants T0{};

  FamilySpec();
  // Throws InvalidArgument when a T3 entry is not an affine polynomial in Z.
  void validate() const;
};

struct DegreeReport {
  // Max Z-degree over the level's entries; empty when they all vanish.
  std::optional<unsigned> T3, T2, T1, T0;
  friend bool operator==(const DegreeReport&, const DegreeReport&) = default;
};

struct FamilySolution {
  GeneratingFunction gf;  // T chart, eps_q = 1
  std::array<Poly, 4> T3;  // coefficient functions over {"Z"}
  std::array<Poly, 3> T2;
  std::array<Poly, 2> T1;
  Poly T0;
  DegreeReport degrees;
};

// One coefficient of the equation T_xx T_yy - T_xy^2 + T_ZZ = 0 after inserting
// the truncated expansion, as a polynomial in the coefficient symbols.
// Symbols: T0, T1_1, T1_2, T2_11, T2_12, T2_22, T3_111, ..., T3_222 and their
// second Z-derivatives, spelled with a "dd" prefix (ddT2_11, ...).
struct RecursionIdentity {
  unsigned ex = 0;  // monomial x^ex y^ey
  unsigned ey = 0;
  Poly identity;  // == 0
};

const std::vector<std::string>& recursion_symbols();

// Ten identities, monomials 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3, in that
// order, each scaled to a unit coefficient on its second derivative
// (ddT0, ddT1_1, ddT1_2, ddT2_11, ..., ddT3_222 respectively).
std::vector<RecursionIdentity> derive_recursions();

// The same ten identities typed in by hand from the usual written form of the
// recursions, normalized to a unit leading second derivative. The T1_1 line
// carries the commonly reproduced misprint T2_11 T3_222 (where T2_11 T3_122 belongs),
// kept on purpose so the comparison below has something to catch.
std::vector<RecursionIdentity> transcribed_recursions();

struct RecursionMismatch {
  unsigned ex = 0, ey = 0;
  Poly derived;
  Poly transcribed;
};
std::vector<RecursionMismatch> compare_with_transcribed();

// Integrates the derived identities level by level (T3 -> T2 -> T1 -> T0) and
// assembles the potential. Throws InternalError if its residual is not the zero
// polynomial.
FamilySolution build_family(const FamilySpec& spec);
DegreeReport degree_report(const FamilySolution& sol);

// The constants reproducing y^2/2 - x^2 Z/2 + Z^3/6.
FamilySpec fold_family_spec();
// Random spec with nonzero affine T3 entries; small rationals throughout.
FamilySpec random_family_spec(std::uint64_t seed);

// {"T3": {"111": "Z", ...}, "T2": {"11": ["0", "-1"], ...}, "T1": {...}, "T0": ["0", "0"]}
// Missing entries default to zero; unknown keys are rejected (InvalidArgument).
nlohmann::json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const nlohmann::json& j);

}  // namespace lagsg
