#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "opal/families.hpp"
#include "opal/functors.hpp"
#include "opal/operad.hpp"

using namespace opal;

namespace {

FieldPtr Q() { return Field::rationals(); }

// The two-periodic commutative algebra k[x] (+) a_1 k[x] (+) a_2 k[x] (+)
// a_3 k[x] with deg x = 2, deg a_i = 1 and a_i a_j = 0; dimensions alternate
// 1, 3, 1, 3, ...
AlgebraPtr three_line_algebra(long horizon) {
  auto f = Q();
  std::vector<long> dims(static_cast<size_t>(horizon) + 1);
  for (long d = 0; d <= horizon; ++d) dims[static_cast<size_t>(d)] = d % 2 == 0 ? 1 : 3;
  auto label = [](long d, long i) {
    long k = d / 2;
    std::string pow = k == 0 ? "" : (k == 1 ? "*x" : "*x^" + std::to_string(k));
    if (d % 2 == 0) return k == 0 ? std::string("1") : pow.substr(1);
    return "a" + std::to_string(i + 1) + pow;
  };
  auto mul = [f](long d1, long i, long d2, long j) -> std::vector<Scalar> {
    bool o1 = d1 % 2 != 0, o2 = d2 % 2 != 0;
    long n = (d1 + d2) % 2 == 0 ? 1 : 3;
    std::vector<Scalar> v(static_cast<size_t>(n), f->zero());
    if (o1 && o2) return v;  // a_i a_j = 0
    v[static_cast<size_t>(o1 ? i : (o2 ? j : 0))] = f->one();
    return v;
  };
  return dense_from_function("B52", f, horizon, dims, label, mul);
}

}  // namespace

TEST_CASE("the algebra of an operad: polynomial shapes") {
  auto A = functor_F(make_com(Q(), 21));
  CHECK(A->name() == "F(Com)");
  auto P1 = poly_algebra(Q(), 1);
  CHECK(algebras_equal(*A, *P1, 20).equal);

  // Exterior-family image is k[t] with deg t = 2 (all signs cancel in the
  // composition constants; only the action remembers the sign).
  auto AO = functor_F(make_ope(Q(), 21));
  CHECK(algebras_equal(*AO, *poly_algebra(Q(), 2), 20).equal);

  auto AW = functor_F(make_com(Q(), 21, 3));
  CHECK(algebras_equal(*AW, *poly_algebra(Q(), 3), 20).equal);

  // The degree-1 class in the Massey image squares to zero.
  auto AM = functor_F(make_mas(Q(), 12));
  CHECK(AM->dim(1) == 1);
  CHECK(AM->mul_basis(1, 0, 1, 0)[0].is_zero());
  CHECK(AM->mul_basis(1, 0, 2, 0)[0] == Q()->one());
  CHECK(AM->mul_basis(2, 0, 1, 0)[0] == Q()->one());
  // It carries odd type labels inherited from the sign action.
  REQUIRE(AM->has_type_labels());
  CHECK(AM->type_label(0, 0) == TypeLabel::Even);
  CHECK(AM->type_label(1, 0) == TypeLabel::Odd);
  CHECK(AM->type_label(2, 0) == TypeLabel::Odd);
  // And it is exactly the b = 1 carry algebra.
  auto bc = build_Bc(BDesc::truncated_poly(Q(), 1), BcType::Odd, 11);
  CHECK(algebras_equal(*AM, *bc, 11).equal);
}

TEST_CASE("series shift: H_P(t) = t * H_{A_P}(t) across the families") {
  std::vector<OperadPtr> ps = {
      make_com(Q(), 21),       make_ope(Q(), 21),      make_mas(Q(), 21),
      make_com(Q(), 21, 3),    make_ope(Q(), 21, 4),
      make_lin_e(BDesc::truncated_poly(Q(), 2), 21),
      make_lin_o(BDesc::truncated_poly(Q(), 1), 21)};
  for (const auto& P : ps) {
    auto A = functor_F(P);
    auto hp = P->hilbert(20);
    auto ha = A->hilbert(19);
    CHECK(hp.coeff(0) == 0);
    for (long n = 1; n <= 20; ++n) CHECK(hp.coeff(n) == ha.coeff(n - 1));
  }
}

TEST_CASE("structure functor on commutative algebras") {
  auto P = functor_G_Str(poly_algebra(Q(), 2), 15);
  CHECK(P->name() == "G_Str(k[t])");
  CHECK(operads_equal(*P, *make_com(Q(), 15, 2), 15).equal);
  CHECK(classify_triviality(*P, 3) == Triviality::STrivial);
  CHECK(check_axioms(*P, 7).pass);

  // The three-line algebra gives a legitimate operad too.
  auto QOp = functor_G_Str(three_line_algebra(9), 9);
  CHECK(QOp->dim(2) == 3);
  CHECK(QOp->dim(3) == 1);
  CHECK(check_axioms(*QOp, 7).pass);

  // Noncommutative input is rejected with a witness.
  WordRules pat;
  pat.pattern_e621 = true;
  auto nc = normal_word_algebra("pat2", Q(), {{"x1", 1}, {"x2", 1}}, pat);
  try {
    functor_G_Str(nc, 6);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("commutative") != std::string::npos);
  }
}

TEST_CASE("antistructure functor: signs match the Massey and exterior tables") {
  auto A = build_Bc(BDesc::truncated_poly(Q(), 1), BcType::Odd, 10);
  auto P = functor_G_Atr(A, 11);
  CHECK(operads_equal(*P, *make_mas(Q(), 11), 11).equal);

  // Spot checks straight through the sign rule.
  CHECK(P->compose_basis(2, 0, 1, 2, 0)[0].is_zero());
  CHECK(P->compose_basis(3, 0, 2, 2, 0)[0] == -Q()->one());
  CHECK(P->compose_basis(3, 0, 1, 2, 0)[0] == Q()->one());
  CHECK(P->compose_basis(2, 0, 2, 3, 0)[0] == Q()->one());

  auto E = functor_G_Atr(odd_poly_algebra(Q(), 2, 14), 15);
  CHECK(operads_equal(*E, *make_ope(Q(), 15, 2), 15).equal);
  CHECK(classify_triviality(*E, 3) == Triviality::SSigned);

  // A deeper carry algebra (exterior pair: theta*y spans class 3) still
  // satisfies the axioms through the functor.
  BDesc ext;
  ext.field = Q();
  ext.b = 3;
  ext.star.assign(4, std::vector<Scalar>(4, Q()->zero()));
  for (long i = 0; i < 4; ++i) ext.star[static_cast<size_t>(i)][0] =
      ext.star[0][static_cast<size_t>(i)] = Q()->one();
  ext.star[1][2] = ext.star[2][1] = Q()->one();
  auto deep = functor_G_Atr(build_Bc(ext, BcType::Odd, 8), 9);
  CHECK(check_axioms(*deep, 9).pass);

  // Characteristic 2 has no antistructure functor.
  auto f2 = Field::prime_field(2);
  std::vector<long> dims = {1, 0, 1};
  auto A2 = dense_from_function(
      "t2", f2, 2, dims,
      [](long d, long) { return d == 0 ? std::string("1") : "t"; },
      [f2](long, long, long, long) { return std::vector<Scalar>{f2->one()}; },
      [](long, long) { return TypeLabel::Even; });
  try {
    functor_G_Atr(A2, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("structure functor") != std::string::npos);
  }

  // Untyped input is rejected.
  CHECK_THROWS_AS(functor_G_Atr(poly_algebra(Q(), 1), 5), Error);
}

TEST_CASE("odd polynomial algebras") {
  auto A = odd_poly_algebra(Q(), 4, 20, "u");
  CHECK(A->dim(0) == 1);
  CHECK(A->dim(4) == 1);
  CHECK(A->dim(6) == 0);
  CHECK(A->basis_label(8, 0) == "u^2");
  CHECK(A->type_label(4, 0) == TypeLabel::Odd);
  CHECK(A->type_label(0, 0) == TypeLabel::Even);
  CHECK(check_pgc(*A, 16).ok);
  CHECK_THROWS_AS(odd_poly_algebra(Q(), 3, 12), Error);
  CHECK_THROWS_AS(odd_poly_algebra(Field::prime_field(2), 2, 12), Error);
}

TEST_CASE("roundtrips between algebras and operads") {
  CHECK(roundtrip_check(poly_algebra(Q(), 1), false, 16).pass);
  CHECK(roundtrip_check(poly_algebra(Q(), 3), false, 16).pass);
  CHECK(roundtrip_check(poly_algebra(Field::prime_field(2), 2), false, 16).pass);
  CHECK(roundtrip_check(odd_poly_algebra(Q(), 2, 16), true, 16).pass);
  auto bc = build_Bc(BDesc::truncated_poly(Q(), 1), BcType::Odd, 16);
  auto rp = roundtrip_check(bc, true, 16);
  CHECK(rp.pass);
  CHECK_FALSE(rp.lines.empty());
  CHECK(rp.describe().find("H") != std::string::npos);

  CHECK(roundtrip_operad(make_com(Q(), 12), false, 12).pass);
  CHECK(roundtrip_operad(make_ope(Q(), 13), true, 13).pass);
  CHECK(roundtrip_operad(make_mas(Q(), 11), true, 11).pass);
}

TEST_CASE("multiplicity drops on direct sums with interleaved supports") {
  auto P = functor_G_Str(poly_algebra(Q(), 2), 61);
  auto mp = multiplicity(P->hilbert(60));
  REQUIRE(mp.finite);
  CHECK(mp.value == 1);

  auto QOp = functor_G_Str(three_line_algebra(60), 61);
  auto mq = multiplicity(QOp->hilbert(60));
  REQUIRE(mq.finite);
  CHECK(mq.value == 3);

  auto S = direct_sum(P, QOp);
  auto ms = multiplicity(S->hilbert(60));
  REQUIRE(ms.finite);
  CHECK(ms.value == 3);
  CHECK(mp.value + mq.value == 4);

  // On prime summands the multiplicity is additive.
  auto R = Field::extension_q({-2, 0, 1});
  auto sum = direct_sum(base_change(make_com(Q(), 60), R), make_com(Q(), 60));
  auto madd = multiplicity(sum->hilbert(60));
  REQUIRE(madd.finite);
  CHECK(madd.value == 3);
}
