#include "opal/functors.hpp"

#include <sstream>

namespace opal {

namespace {

// True when the arity-n action is a closed sign form, writing the per-basis
// exponent through `exp_out`.
bool sign_form(const Operad& P, int n, std::vector<int>& exp_out) {
  const ActionSpec& spec = P.action(n);
  long d = P.dim(n);
  exp_out.assign(static_cast<size_t>(d), 0);
  switch (spec.kind) {
    case ActionKind::Trivial: return true;
    case ActionKind::Sign:
      exp_out.assign(static_cast<size_t>(d), 1);
      return true;
    case ActionKind::PerBasisSign:
      exp_out = spec.per_basis;
      return true;
    case ActionKind::Explicit: return false;
  }
  return false;
}

}  // namespace

AlgebraPtr functor_F(const OperadPtr& P) {
  if (!P) throw Error("null operad");
  long horizon = P->horizon() - 1;
  if (horizon < 0) throw Error("operad horizon too small for the algebra image");
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 0);
  for (long d = 0; d <= horizon; ++d) dims[static_cast<size_t>(d)] = P->dim(static_cast<int>(d) + 1);

  bool typed = true;
  std::vector<std::vector<int>> exps(static_cast<size_t>(horizon) + 1);
  for (long d = 0; d <= horizon && typed; ++d)
    typed = sign_form(*P, static_cast<int>(d) + 1, exps[static_cast<size_t>(d)]);

  auto label_fn = [P](long d, long b) { return P->label(static_cast<int>(d) + 1, b); };
  auto mul_fn = [P](long d1, long b, long d2, long c) {
    return P->compose_basis(static_cast<int>(d1) + 1, b, 1, static_cast<int>(d2) + 1, c);
  };
  std::function<TypeLabel(long, long)> type_fn;
  if (typed)
    type_fn = [exps](long d, long b) {
      if (d == 0) return TypeLabel::Even;
      return exps[static_cast<size_t>(d)][static_cast<size_t>(b)] == 0 ? TypeLabel::Even
                                                                       : TypeLabel::Odd;
    };
  return dense_from_function("F(" + P->name() + ")", P->field(), horizon, std::move(dims),
                             label_fn, mul_fn, type_fn);
}

OperadPtr functor_G_Str(const AlgebraPtr& A, int horizon) {
  if (!A) throw Error("null algebra");
  if (horizon < 1) throw Error("operad horizon must be at least 1");
  if (A->dim(0) != 1) throw Error("structure functor requires a connected algebra");
  std::string witness;
  if (!is_commutative(*A, horizon - 1, &witness))
    throw Error("structure functor requires a commutative algebra: " + witness);
  FieldPtr f = A->field();
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 0);
  for (int n = 1; n <= horizon; ++n) dims[static_cast<size_t>(n)] = A->dim(n - 1);
  auto label_fn = [A](int n, long b) { return A->basis_label(n - 1, b); };
  auto compose_fn = [A](int m, long b, int i, int n, long c) {
    (void)i;
    return A->mul_basis(m - 1, b, n - 1, c);
  };
  auto action_fn = [](int) { return ActionSpec{}; };
  return operad_from_function("G_Str(" + A->name() + ")", f, horizon, std::move(dims),
                              label_fn, compose_fn, action_fn, {f->one()});
}

OperadPtr functor_G_Atr(const AlgebraPtr& A, int horizon) {
  if (!A) throw Error("null algebra");
  if (horizon < 1) throw Error("operad horizon must be at least 1");
  FieldPtr f = A->field();
  if (f->characteristic() == 2)
    throw Error("antistructure functor undefined in characteristic 2; use the structure functor");
  if (A->dim(0) != 1) throw Error("antistructure functor requires a connected algebra");
  if (!A->has_type_labels())
    throw Error("antistructure functor requires parity type labels");
  auto pgc = check_pgc(*A, horizon - 1);
  if (!pgc.ok)
    throw Error("antistructure functor requires a parity-typed graded commutative source: " +
                pgc.violations.front());
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 0);
  for (int n = 1; n <= horizon; ++n) dims[static_cast<size_t>(n)] = A->dim(n - 1);
  auto label_fn = [A](int n, long b) { return A->basis_label(n - 1, b); };
  auto compose_fn = [A, f](int m, long b, int i, int n, long c) {
    auto v = A->mul_basis(m - 1, b, n - 1, c);
    if (A->type_label(m - 1, b) == TypeLabel::Odd) {
      long parity = static_cast<long>(i - 1) * (static_cast<long>(n) + 1);
      if (parity % 2 != 0)
        for (auto& s : v) s = -s;
    }
    return v;
  };
  auto action_fn = [A](int n) {
    ActionSpec spec;
    spec.kind = ActionKind::PerBasisSign;
    for (long b = 0; b < A->dim(n - 1); ++b)
      spec.per_basis.push_back(A->type_label(n - 1, b) == TypeLabel::Odd ? 1 : 0);
    return spec;
  };
  return operad_from_function("G_Atr(" + A->name() + ")", f, horizon, std::move(dims),
                              label_fn, compose_fn, action_fn, {f->one()});
}

AlgebraPtr odd_poly_algebra(const FieldPtr& f, long deg_t, long horizon,
                            const std::string& var) {
  if (deg_t < 2 || deg_t % 2 != 0)
    throw Error("odd-typed polynomial algebra requires an even positive degree");
  if (f->characteristic() == 2)
    throw Error("odd-typed polynomial algebra requires characteristic != 2");
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 0);
  for (long d = 0; d <= horizon; d += deg_t) dims[static_cast<size_t>(d)] = 1;
  auto label_fn = [deg_t, var](long d, long) -> std::string {
    long k = d / deg_t;
    if (k == 0) return "1";
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
  };
  auto mul_fn = [f](long, long, long, long) { return std::vector<Scalar>{f->one()}; };
  auto type_fn = [](long d, long) { return d == 0 ? TypeLabel::Even : TypeLabel::Odd; };
  return dense_from_function("k[" + var + "] (odd)", f, horizon, std::move(dims), label_fn,
                             mul_fn, type_fn);
}

AlgEqualReport algebras_equal(const GradedAlgebra& A, const GradedAlgebra& B, long horizon,
                              bool compare_labels) {
  AlgEqualReport rep;
  auto fail = [&rep](std::string msg) {
    rep.equal = false;
    rep.mismatch = std::move(msg);
    return rep;
  };
  if (!A.field()->same(*B.field())) return fail("fields differ");
  for (long d = 0; d <= horizon; ++d) {
    if (A.dim(d) != B.dim(d))
      return fail("dimension mismatch at degree " + std::to_string(d) + ": " +
                  std::to_string(A.dim(d)) + " vs " + std::to_string(B.dim(d)));
    if (compare_labels)
      for (long b = 0; b < A.dim(d); ++b)
        if (A.basis_label(d, b) != B.basis_label(d, b))
          return fail("label mismatch at degree " + std::to_string(d) + ", basis " +
                      std::to_string(b) + ": " + A.basis_label(d, b) + " vs " +
                      B.basis_label(d, b));
    if (A.has_type_labels() && B.has_type_labels())
      for (long b = 0; b < A.dim(d); ++b)
        if (A.type_label(d, b) != B.type_label(d, b))
          return fail("type label mismatch at degree " + std::to_string(d) + ", basis " +
                      std::to_string(b));
  }
  for (long d1 = 0; d1 <= horizon; ++d1)
    for (long d2 = 0; d1 + d2 <= horizon; ++d2)
      for (long b = 0; b < A.dim(d1); ++b)
        for (long c = 0; c < A.dim(d2); ++c) {
          auto va = A.mul_basis(d1, b, d2, c);
          auto vb = B.mul_basis(d1, b, d2, c);
          if (va.size() != vb.size())
            return fail("product length mismatch at degrees (" + std::to_string(d1) + "," +
                        std::to_string(d2) + ")");
          for (size_t t = 0; t < va.size(); ++t)
            if (va[t] != vb[t])
              return fail("product mismatch: " + A.basis_label(d1, b) + " * " +
                          A.basis_label(d2, c) + " -> " + A.render(d1 + d2, va) + " vs " +
                          B.render(d1 + d2, vb));
        }
  return rep;
}

std::string RoundtripReport::describe() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL");
  for (const auto& l : lines) os << "\n  " << l;
  return os.str();
}

RoundtripReport roundtrip_check(const AlgebraPtr& A, bool odd, int horizon) {
  RoundtripReport rep;
  OperadPtr P = odd ? functor_G_Atr(A, horizon) : functor_G_Str(A, horizon);
  AlgebraPtr B = functor_F(P);
  auto eq = algebras_equal(*A, *B, horizon - 1, true);
  if (eq.equal) {
    rep.lines.push_back("F(G(A)) matches A up to degree " + std::to_string(horizon - 1));
  } else {
    rep.pass = false;
    rep.lines.push_back("F(G(A)) differs from A: " + eq.mismatch);
  }
  auto hp = P->hilbert(horizon);
  auto ha = A->hilbert(horizon - 1);
  bool series_ok = hp.coeff(0) == 0;
  for (long n = 1; n <= horizon && series_ok; ++n)
    series_ok = hp.coeff(n) == ha.coeff(n - 1);
  if (series_ok) {
    rep.lines.push_back("series identity H_P(t) = t*H_A(t) holds to arity " +
                        std::to_string(horizon));
  } else {
    rep.pass = false;
    rep.lines.push_back("series identity H_P(t) = t*H_A(t) fails");
  }
  return rep;
}

RoundtripReport roundtrip_operad(const OperadPtr& P, bool odd, int horizon) {
  RoundtripReport rep;
  AlgebraPtr A = functor_F(P);
  OperadPtr Q = odd ? functor_G_Atr(A, horizon) : functor_G_Str(A, horizon);
  auto eq = operads_equal(*P, *Q, horizon);
  if (eq.equal) {
    rep.lines.push_back("G(F(P)) matches P up to arity " + std::to_string(horizon));
  } else {
    rep.pass = false;
    rep.lines.push_back("G(F(P)) differs from P: " + eq.mismatch);
  }
  return rep;
}

}  // namespace opal
