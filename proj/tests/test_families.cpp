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
}

TEST_CASE("family supports and actions") {
  auto C = make_com(Q(), 13);
  auto C2 = make_com(Q(), 13, 2);
  auto O = make_ope(Q(), 13);
  auto O4 = make_ope(Q(), 13, 4);
  auto M = make_mas(Q(), 13);

  for (int n = 1; n <= 13; ++n) {
    CHECK(C->dim(n) == 1);
    CHECK(C2->dim(n) == ((n - 1) % 2 == 0 ? 1 : 0));
    CHECK(O->dim(n) == (n % 2 == 1 ? 1 : 0));
    CHECK(O4->dim(n) == ((n - 1) % 4 == 0 ? 1 : 0));
    CHECK(M->dim(n) == 1);
  }
  CHECK(C->name() == "Com");
  CHECK(C2->name() == "Com^2");
  CHECK(O->name() == "Ope");
  CHECK(O4->name() == "Ope^4");
  CHECK(M->name() == "Mas");

  // Trivial action on the symmetric families, sign on the exterior ones.
  auto odd_perm = Perm::adjacent(5, 2);
  CHECK(C->render(C->act(C->basis_element(5, 0), odd_perm)) == "mu_5");
  CHECK(C2->render(C2->act(C2->basis_element(5, 0), odd_perm)) == "mu_5");
  CHECK(O->render(O->act(O->basis_element(5, 0), odd_perm)) == "(-1)*mu_5");
  CHECK(O4->render(O4->act(O4->basis_element(5, 0), odd_perm)) == "(-1)*mu_5");
  CHECK(M->render(M->act(M->basis_element(5, 0), odd_perm)) == "(-1)*mu_5");

  CHECK(classify_triviality(*C, 5) == Triviality::STrivial);
  CHECK(classify_triviality(*O, 5) == Triviality::SSigned);
}

TEST_CASE("closed-form dimension series") {
  auto h1 = make_com(Q(), 13)->hilbert(13);
  auto f1 = fit_rational(h1, 2);
  REQUIRE(f1.has_value());
  CHECK(f1->str() == "t/(1 - t)");

  auto h2 = make_com(Q(), 13, 2)->hilbert(13);
  auto f2 = fit_rational(h2, 3);
  REQUIRE(f2.has_value());
  CHECK(f2->str() == "t/(1 - t^2)");
}

TEST_CASE("the exterior family sits inside the Massey family") {
  auto O = make_ope(Q(), 11);
  auto M = make_mas(Q(), 11);
  // Restrict Mas to odd arities and compare everything.
  std::vector<long> dims(12, 0);
  for (int n = 1; n <= 11; n += 2) dims[static_cast<size_t>(n)] = 1;
  auto f = Q();
  auto R = operad_from_function(
      "Mas_odd", f, 11, dims, [M](int n, long b) { return M->label(n, b); },
      [M](int m, long b, int i, int n, long c) { return M->compose_basis(m, b, i, n, c); },
      [M](int n) { return M->action(n); }, {f->one()});
  CHECK(operads_equal(*O, *R, 11).equal);
}

TEST_CASE("family identities: structure and antistructure images of k[t]") {
  auto rep = family_identities_check(13);
  CHECK(rep.pass);
  CHECK_FALSE(rep.lines.empty());
  bool saw_com = false, saw_ope = false, saw_char2 = false;
  for (const auto& line : rep.lines) {
    CHECK(line.find("MISMATCH") == std::string::npos);
    if (line.find("Com") != std::string::npos) saw_com = true;
    if (line.find("Ope") != std::string::npos) saw_ope = true;
    if (line.find("char 2") != std::string::npos || line.find("F_2") != std::string::npos)
      saw_char2 = true;
  }
  CHECK(saw_com);
  CHECK(saw_ope);
  CHECK(saw_char2);
  CHECK(rep.describe().find("equal") != std::string::npos);
}

TEST_CASE("characteristic 2 collapses the sign") {
  auto F2 = Field::prime_field(2);
  CHECK(operads_equal(*make_ope(F2, 13, 2), *make_com(F2, 13, 2), 13).equal);
  CHECK(operads_equal(*make_ope(F2, 13, 4), *make_com(F2, 13, 4), 13).equal);
}

TEST_CASE("linear operads from nilpotent coefficient algebras") {
  auto Le = make_lin_e(BDesc::truncated_poly(Q(), 2), 13);
  CHECK(Le->name() == "Lin_e(b=2)");
  for (int n = 1; n <= 13; ++n) CHECK(Le->dim(n) == 1);
  CHECK(classify_triviality(*Le, 4) == Triviality::STrivial);
  CHECK(check_axioms(*Le, 7).pass);
  auto fe = fit_rational(Le->hilbert(13), 2);
  REQUIRE(fe.has_value());
  CHECK(fe->str() == "t/(1 - t)");

  auto Lo = make_lin_o(BDesc::truncated_poly(Q(), 1), 13);
  CHECK(Lo->name() == "Lin_o(b=1)");
  CHECK(operads_equal(*Lo, *make_mas(Q(), 13), 13).equal);
  CHECK(classify_triviality(*Lo, 2) == Triviality::SSigned);

  // The zero-products coefficient algebra also works on the even side.
  auto Lz = make_lin_e(BDesc::zero_products(Q(), 3), 9);
  CHECK(check_axioms(*Lz, 7).pass);
  for (int n = 1; n <= 9; ++n) CHECK(Lz->dim(n) == 1);

  // Non-nilpotent sources are rejected.
  BDesc bad = BDesc::zero_products(Q(), 1);
  bad.star[1][1] = Q()->one();  // x1 * x1 wraps to the unit class
  CHECK_THROWS_AS(make_lin_e(bad, 9), Error);
}

TEST_CASE("the family dispatcher") {
  FamilySpec s;
  s.kind = FamilyKind::ComW;
  s.field = Q();
  s.horizon = 9;
  s.w = 3;
  CHECK(operads_equal(*make_family(s), *make_com(Q(), 9, 3), 9).equal);

  s.kind = FamilyKind::OpeW;
  s.w = 4;
  CHECK(operads_equal(*make_family(s), *make_ope(Q(), 9, 4), 9).equal);

  s.kind = FamilyKind::Mas;
  CHECK(operads_equal(*make_family(s), *make_mas(Q(), 9), 9).equal);

  s.kind = FamilyKind::LinO;
  s.source = BDesc::truncated_poly(Q(), 1);
  CHECK(operads_equal(*make_family(s), *make_mas(Q(), 9), 9).equal);

  FamilySpec missing;
  missing.kind = FamilyKind::LinE;
  missing.field = Q();
  missing.horizon = 9;
  CHECK_THROWS_AS(make_family(missing), Error);
}
