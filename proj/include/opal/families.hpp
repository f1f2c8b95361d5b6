// Closed-form constructors for the built-in operad families and the
// identity checks tying them to the functor images.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opal/algebra.hpp"
#include "opal/operad.hpp"

namespace opal {

enum class FamilyKind { Com, Ope, Mas, ComW, OpeW, LinE, LinO };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Com;
  FieldPtr field;
  int horizon = 10;
  int w = 1;                // ComW: support at n = 1 mod w; OpeW: the even period
  std::optional<BDesc> source;  // LinE / LinO
};

// One trivial-action basis element per supported arity for Com^{w}; sign
// action for Ope^{2w} and Mas; Lin_e / Lin_o as functor images of the
// degree-one-per-component algebra built from a nilpotent source.
OperadPtr make_family(const FamilySpec& spec);

OperadPtr make_com(const FieldPtr& f, int horizon, int w = 1);
OperadPtr make_ope(const FieldPtr& f, int horizon, int two_w = 2);
OperadPtr make_mas(const FieldPtr& f, int horizon);
OperadPtr make_lin_e(const BDesc& B, int horizon);
OperadPtr make_lin_o(const BDesc& B, int horizon);

struct FamilyIdentityReport {
  bool pass = true;
  std::vector<std::string> lines;
  std::string describe() const;
};

// Component-by-component equalities: G_Str(F[t], deg t = w) vs Com^{w} for
// w in {1,2,3}; G_Atr(F[t] odd, deg t = 2m) vs Ope^{2m} for m in {1,2}; and
// over F_2, the Ope^{2w} rules collapse to the Com^{2w} rules (w in {1,2}).
FamilyIdentityReport family_identities_check(int horizon);

}  // namespace opal
