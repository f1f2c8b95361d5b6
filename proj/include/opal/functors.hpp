// The arity-shift functor F from operads to graded algebras, and the inverse
// constructions G_Str (commutative sources) and G_Atr (parity-typed graded
// commutative sources) from algebras to operads.
#pragma once

#include <string>
#include <vector>

#include "opal/algebra.hpp"
#include "opal/operad.hpp"

namespace opal {

// A_P: degree i = arity i+1, multiplication = slot-1 composition, unit = the
// operad identity. When every component's action is a (per-basis) sign form,
// the result carries parity type labels (trivial -> even, sign -> odd).
AlgebraPtr functor_F(const OperadPtr& P);

// P(n) = A_{n-1} with trivial action and x o_i y = x*y for every slot.
// Requires a unital connected commutative algebra (checked up to horizon-1).
OperadPtr functor_G_Str(const AlgebraPtr& A, int horizon);

// P(n) = A_{n-1}; even-type basis elements act trivially, odd-type by sign.
// Compositions: x o_1 y = x*y and x o_i y = s * (x*y) with
// s = ((-1)^{(i-1)(Ar(y)+1)})^{t(x)}, the extension forced by outer
// equivariance. Requires characteristic != 2 and a valid parity-typed source.
OperadPtr functor_G_Atr(const AlgebraPtr& A, int horizon);

// Odd-typed polynomial algebra k[t] with deg t even (dense, materialized to
// the given horizon) -- the standard source for G_Atr identities.
AlgebraPtr odd_poly_algebra(const FieldPtr& f, long deg_t, long horizon,
                            const std::string& var = "t");

struct AlgEqualReport {
  bool equal = true;
  std::string mismatch;
};
// Structural equality at horizon: dims, products, type labels when both
// sides carry them; labels only when compare_labels is set.
AlgEqualReport algebras_equal(const GradedAlgebra& A, const GradedAlgebra& B,
                              long horizon, bool compare_labels = false);

struct RoundtripReport {
  bool pass = true;
  std::vector<std::string> lines;
  std::string describe() const;
};

// F(G(A)) against A component-by-component, plus the series identity
// H_{G(A)}(t) = t * H_A(t); `odd` selects G_Atr over G_Str.
RoundtripReport roundtrip_check(const AlgebraPtr& A, bool odd, int horizon);

// G(F(P)) against P (valid when P's compositions are slot-independent up to
// the sign rule, e.g. every built-in linear family).
RoundtripReport roundtrip_operad(const OperadPtr& P, bool odd, int horizon);

}  // namespace opal
