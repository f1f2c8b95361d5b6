#include "opal/families.hpp"

#include <sstream>

#include "opal/functors.hpp"

namespace opal {

namespace {

// One basis element "mu_n" at every arity with n = 1 mod period, all
// compositions sending mu_n o_i mu_m to mu_{n+m-1} with coefficient 1.
OperadPtr linear_support_family(std::string name, const FieldPtr& f, int horizon, int period,
                                ActionKind kind) {
  if (horizon < 1) throw Error("family horizon must be at least 1");
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 0);
  for (int n = 1; n <= horizon; ++n)
    if ((n - 1) % period == 0) dims[static_cast<size_t>(n)] = 1;
  auto label_fn = [](int n, long) { return "mu_" + std::to_string(n); };
  auto compose_fn = [f](int, long, int, int, long) { return std::vector<Scalar>{f->one()}; };
  auto action_fn = [kind](int) { return ActionSpec{kind, {}, {}}; };
  return operad_from_function(std::move(name), f, horizon, std::move(dims), label_fn,
                              compose_fn, action_fn, {f->one()});
}

}  // namespace

OperadPtr make_com(const FieldPtr& f, int horizon, int w) {
  if (w < 1) throw Error("support period must be positive");
  std::string name = w == 1 ? "Com" : "Com^" + std::to_string(w);
  return linear_support_family(std::move(name), f, horizon, w, ActionKind::Trivial);
}

OperadPtr make_ope(const FieldPtr& f, int horizon, int two_w) {
  if (two_w < 2 || two_w % 2 != 0)
    throw Error("the support period of the exterior family must be even");
  std::string name = two_w == 2 ? "Ope" : "Ope^" + std::to_string(two_w);
  return linear_support_family(std::move(name), f, horizon, two_w, ActionKind::Sign);
}

OperadPtr make_mas(const FieldPtr& f, int horizon) {
  if (horizon < 1) throw Error("family horizon must be at least 1");
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 1);
  dims[0] = 0;
  auto label_fn = [](int n, long) { return "mu_" + std::to_string(n); };
  // First factor arity m, second n: zero when both even, (-1)^{i-1} when the
  // first is odd and the second even, +1 when the second is odd.
  auto compose_fn = [f](int m, long, int i, int n, long) -> std::vector<Scalar> {
    bool first_even = m % 2 == 0;
    bool second_even = n % 2 == 0;
    if (first_even && second_even) return {f->zero()};
    if (!first_even && second_even)
      return {(i - 1) % 2 == 0 ? f->one() : -f->one()};
    return {f->one()};
  };
  auto action_fn = [](int) { return ActionSpec{ActionKind::Sign, {}, {}}; };
  return operad_from_function("Mas", f, horizon, std::move(dims), label_fn, compose_fn,
                              action_fn, {f->one()});
}

OperadPtr make_lin_e(const BDesc& B, int horizon) {
  if (!b_is_nilpotent(B))
    throw Error("the even linear family requires a nilpotent source");
  AlgebraPtr A = build_Bc(B, BcType::Even, horizon - 1);
  OperadPtr P = functor_G_Str(A, horizon);
  return operad_from_function("Lin_e(b=" + std::to_string(B.b) + ")", P->field(),
                              P->horizon(),
                              [P] {
                                std::vector<long> d(static_cast<size_t>(P->horizon()) + 1, 0);
                                for (int n = 1; n <= P->horizon(); ++n) d[static_cast<size_t>(n)] = P->dim(n);
                                return d;
                              }(),
                              [P](int n, long b) { return P->label(n, b); },
                              [P](int m, long b, int i, int n, long c) {
                                return P->compose_basis(m, b, i, n, c);
                              },
                              [P](int n) { return P->action(n); },
                              P->identity_element().coords);
}

OperadPtr make_lin_o(const BDesc& B, int horizon) {
  if (!b_is_nilpotent(B))
    throw Error("the odd linear family requires a nilpotent source");
  AlgebraPtr A = build_Bc(B, BcType::Odd, horizon - 1);
  OperadPtr P = functor_G_Atr(A, horizon);
  return operad_from_function("Lin_o(b=" + std::to_string(B.b) + ")", P->field(),
                              P->horizon(),
                              [P] {
                                std::vector<long> d(static_cast<size_t>(P->horizon()) + 1, 0);
                                for (int n = 1; n <= P->horizon(); ++n) d[static_cast<size_t>(n)] = P->dim(n);
                                return d;
                              }(),
                              [P](int n, long b) { return P->label(n, b); },
                              [P](int m, long b, int i, int n, long c) {
                                return P->compose_basis(m, b, i, n, c);
                              },
                              [P](int n) { return P->action(n); },
                              P->identity_element().coords);
}

OperadPtr make_family(const FamilySpec& spec) {
  if (!spec.field && spec.kind != FamilyKind::LinE && spec.kind != FamilyKind::LinO)
    throw Error("family requires a field");
  switch (spec.kind) {
    case FamilyKind::Com: return make_com(spec.field, spec.horizon, 1);
    case FamilyKind::Ope: return make_ope(spec.field, spec.horizon, 2);
    case FamilyKind::Mas: return make_mas(spec.field, spec.horizon);
    case FamilyKind::ComW: return make_com(spec.field, spec.horizon, spec.w);
    case FamilyKind::OpeW: return make_ope(spec.field, spec.horizon, spec.w);
    case FamilyKind::LinE:
      if (!spec.source) throw Error("the even linear family requires a source algebra");
      return make_lin_e(*spec.source, spec.horizon);
    case FamilyKind::LinO:
      if (!spec.source) throw Error("the odd linear family requires a source algebra");
      return make_lin_o(*spec.source, spec.horizon);
  }
  throw Error("unreachable family kind");
}

std::string FamilyIdentityReport::describe() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL");
  for (const auto& l : lines) os << "\n  " << l;
  return os.str();
}

FamilyIdentityReport family_identities_check(int horizon) {
  FamilyIdentityReport rep;
  auto record = [&rep](const std::string& what, const EqualReport& eq) {
    if (eq.equal) {
      rep.lines.push_back(what + ": equal");
    } else {
      rep.pass = false;
      rep.lines.push_back(what + ": MISMATCH (" + eq.mismatch + ")");
    }
  };
  FieldPtr q = Field::rationals();
  for (int w = 1; w <= 3; ++w) {
    AlgebraPtr A = poly_algebra(q, w);
    OperadPtr G = functor_G_Str(A, horizon);
    OperadPtr C = make_com(q, horizon, w);
    record("G_Str(Q[t], deg t = " + std::to_string(w) + ") vs Com^" + std::to_string(w),
           operads_equal(*G, *C, horizon));
  }
  for (int m = 1; m <= 2; ++m) {
    AlgebraPtr A = odd_poly_algebra(q, 2 * m, horizon - 1);
    OperadPtr G = functor_G_Atr(A, horizon);
    OperadPtr O = make_ope(q, horizon, 2 * m);
    record("G_Atr(Q[t] odd, deg t = " + std::to_string(2 * m) + ") vs Ope^" +
               std::to_string(2 * m),
           operads_equal(*G, *O, horizon));
  }
  FieldPtr f2 = Field::prime_field(2);
  for (int w = 1; w <= 2; ++w) {
    OperadPtr O = make_ope(f2, horizon, 2 * w);
    OperadPtr C = make_com(f2, horizon, 2 * w);
    record("char 2: Ope^" + std::to_string(2 * w) + " vs Com^" + std::to_string(2 * w),
           operads_equal(*O, *C, horizon));
  }
  return rep;
}

}  // namespace opal
