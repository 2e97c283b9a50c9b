#include "doctest.h"
#include "starkit/algebra.hpp"

using namespace starkit;

namespace {

std::vector<Complex> basis_coeffs(const AlgebraPtr& a, int i) { return a->basis_vector(i); }

// structure table for a dim-2 presentation from four explicit products
std::vector<std::vector<std::vector<Complex>>> table2(
    std::vector<Complex> p11, std::vector<Complex> p12, std::vector<Complex> p21,
    std::vector<Complex> p22) {
  return {{std::move(p11), std::move(p12)}, {std::move(p21), std::move(p22)}};
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("standard constructions satisfy the axioms") {
  for (Ring ring : {Ring::Integer, Ring::Rational, Ring::RatFun}) {
    for (int n = 1; n <= 3; ++n) {
      CHECK(make_matrix_algebra(n, ring)->validate().ok());
      CHECK(make_function_points(n, ring)->validate().ok());
      CHECK(make_grassmann(n, ring)->validate().ok());
      CHECK(make_zero_mult(n, ring)->validate().ok());
    }
  }
}

TEST_CASE("matrix units multiply like matrix units") {
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  REQUIRE(m2->dim() == 4);
  // basis order row-major: e11, e12, e21, e22
  auto e12 = basis_coeffs(m2, 1);
  auto e21 = basis_coeffs(m2, 2);
  CHECK(m2->multiply(e12, e21) == basis_coeffs(m2, 0));
  CHECK(m2->multiply(e21, e12) == basis_coeffs(m2, 3));
  CHECK(m2->multiply(e12, e12) == m2->zero());
  CHECK(m2->star(e12) == e21);
  REQUIRE(m2->has_unit());
  std::vector<Complex> id = m2->zero();
  id[0] = Complex(1);
  id[3] = Complex(1);
  CHECK(m2->unit() == id);
}

TEST_CASE("function points are a commutative product of lines") {
  auto f3 = make_function_points(3, Ring::Rational);
  auto d1 = basis_coeffs(f3, 0);
  auto d2 = basis_coeffs(f3, 1);
  CHECK(f3->multiply(d1, d1) == d1);
  CHECK(f3->multiply(d1, d2) == f3->zero());
  CHECK(f3->star(d1) == d1);
  REQUIRE(f3->has_unit());
  std::vector<Complex> ones(3, Complex(1));
  CHECK(f3->unit() == ones);
  CHECK(f3->is_idempotent());
  CHECK(f3->is_nondegenerate());
}

TEST_CASE("grassmann generators anticommute and square to zero") {
  auto g2 = make_grassmann(2, Ring::Rational);
  REQUIRE(g2->dim() == 4);  // 1, e1, e2, e1e2
  auto e1 = basis_coeffs(g2, 1);
  auto e2 = basis_coeffs(g2, 2);
  auto e12 = basis_coeffs(g2, 3);
  CHECK(g2->multiply(e1, e1) == g2->zero());
  CHECK(g2->multiply(e1, e2) == e12);
  std::vector<Complex> minus_e12 = g2->zero();
  minus_e12[3] = Complex(-1);
  CHECK(g2->multiply(e2, e1) == minus_e12);
  // generators are self-adjoint, so (e1 e2)* = e2 e1 = -e1 e2
  CHECK(g2->star(e1) == e1);
  CHECK(g2->star(e12) == minus_e12);
  CHECK(g2->has_unit());
}

TEST_CASE("zero_mult lacks unit, idempotency and non-degeneracy") {
  auto z2 = make_zero_mult(2, Ring::Rational);
  CHECK(!z2->has_unit());
  CHECK(!z2->is_idempotent());
  CHECK(!z2->is_nondegenerate());
  CHECK(!z2->has_approximate_identity());
  CHECK(z2->multiply(basis_coeffs(z2, 0), basis_coeffs(z2, 1)) == z2->zero());
  auto m1 = make_matrix_algebra(1, Ring::Rational);
  CHECK(m1->is_idempotent());
  CHECK(m1->is_nondegenerate());
}

TEST_CASE("direct sum multiplies componentwise") {
  auto a = make_matrix_algebra(1, Ring::Rational);
  auto b = make_function_points(2, Ring::Rational);
  auto s = make_direct_sum(a, b);
  REQUIRE(s->dim() == 3);
  CHECK(s->validate().ok());
  auto x = basis_coeffs(s, 0);
  auto y = basis_coeffs(s, 1);
  CHECK(s->multiply(x, y) == s->zero());
  CHECK(s->multiply(y, y) == y);
  CHECK(s->has_unit());
}

TEST_CASE("matrices over a base algebra") {
  auto base = make_function_points(2, Ring::Rational);
  auto m = make_matrix_over(base, 2);
  REQUIRE(m->dim() == 8);
  CHECK(m->validate().ok());
  CHECK(m->has_unit());
  CHECK(std::holds_alternative<MatrixOverTag>(m->provenance()));
}

TEST_CASE("left and right multiplication operators match multiply") {
  auto g2 = make_grassmann(2, Ring::Rational);
  std::vector<Complex> x = {Complex(1), Complex(2), Complex(0), Complex(Ordered(0), Ordered(1))};
  std::vector<Complex> y = {Complex(0), Complex(1), Complex(-1), Complex(3)};
  CHECK(g2->left_mult(x).apply(y) == g2->multiply(x, y));
  CHECK(g2->right_mult(y).apply(x) == g2->multiply(x, y));
}

TEST_CASE("hermitian basis spans the fixed space of star") {
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  auto h = m2->hermitian_basis();
  CHECK(h.size() == 4);  // real dimension of Hermitian 2x2 matrices
  for (const auto& v : h) CHECK(m2->star(v) == v);
  auto f2 = make_function_points(2, Ring::Rational);
  CHECK(f2->hermitian_basis().size() == 2);
}

TEST_CASE("element wrapper algebra") {
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  Element e12 = make_element(m2, basis_coeffs(m2, 1));
  Element e21 = make_element(m2, basis_coeffs(m2, 2));
  CHECK((e12 * e21 + e21 * e12).c == m2->unit());
  CHECK((e12.star()).c == e21.c);
  CHECK((e12 - e12).is_zero());
  CHECK(e12.scaled(Complex::i()).c[1] == Complex::i());
}

TEST_CASE("quotient by a star ideal") {
  auto g2 = make_grassmann(2, Ring::Rational);
  // positive-degree part: spanned by e1, e2, e1e2
  CMat ideal(3, 4);
  ideal.at(0, 1) = Complex(1);
  ideal.at(1, 2) = Complex(1);
  ideal.at(2, 3) = Complex(1);
  auto q = quotient_by_star_ideal(g2, ideal);
  REQUIRE(q.algebra->dim() == 1);
  CHECK(q.algebra->validate().ok());
  CHECK(q.algebra->has_unit());
  // proj . lift^T = identity on the quotient
  CHECK(q.proj * q.lift.transposed() == CMat::identity(1));
  CHECK(std::holds_alternative<QuotientTag>(q.algebra->provenance()));
}

TEST_CASE("quotient rejects spans that are not star ideals") {
  auto g2 = make_grassmann(2, Ring::Rational);
  // span{e1} is not an ideal: e1 e2 = e1e2 lies outside
  CMat notideal(1, 4);
  notideal.at(0, 1) = Complex(1);
  CHECK_THROWS_AS(quotient_by_star_ideal(g2, notideal), std::invalid_argument);
  // span{1} is not an ideal either
  CMat unit_span(1, 4);
  unit_span.at(0, 0) = Complex(1);
  CHECK_THROWS_AS(quotient_by_star_ideal(g2, unit_span), std::invalid_argument);
}

TEST_CASE("structural equality of presentations") {
  auto a = make_matrix_algebra(2, Ring::Rational);
  auto b = make_matrix_algebra(2, Ring::Rational);
  CHECK(same_presentation(a, b));
  CHECK(!same_presentation(a, make_function_points(4, Ring::Rational)));
  CHECK(!same_presentation(a, make_matrix_algebra(2, Ring::Integer)));
}

TEST_CASE("create enforces shape and ring containment") {
  std::vector<std::string> labels = {"u", "v"};
  auto zero2 = std::vector<Complex>(2);
  auto half = std::vector<Complex>{Complex(Ordered::rational(1, 2)), Complex(0)};
  CHECK_THROWS_AS(
      AlgebraPresentation::create(Ring::Integer, "t", labels,
                                  table2(half, zero2, zero2, zero2),
                                  CMat::identity(2), CustomTag{}),
      std::invalid_argument);
  // a rational-represented integer is inside the integer ring by value
  auto two = std::vector<Complex>{Complex(Ordered(4) / Ordered(2)), Complex(0)};
  auto ok = AlgebraPresentation::create(Ring::Integer, "t", labels,
                                        table2(two, zero2, zero2, zero2),
                                        CMat::identity(2), CustomTag{});
  CHECK(ok->structure(0, 0)[0].re().ring() == Ring::Integer);
  CHECK_THROWS_AS(
      AlgebraPresentation::create(Ring::Rational, "t", labels, {},
                                  CMat::identity(2), CustomTag{}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      AlgebraPresentation::create(Ring::Rational, "t", labels,
                                  table2(zero2, zero2, zero2, zero2),
                                  CMat::identity(3), CustomTag{}),
      std::invalid_argument);
}

TEST_CASE("validate reports violations with witnesses") {
  std::vector<std::string> labels = {"u", "v"};
  auto zero2 = std::vector<Complex>(2);
  auto bu = std::vector<Complex>{Complex(1), Complex(0)};
  auto bv = std::vector<Complex>{Complex(0), Complex(1)};
  // u u = v, u v = u, everything else zero: not associative
  auto broken = AlgebraPresentation::create(Ring::Rational, "broken", labels,
                                            table2(bv, bu, zero2, zero2),
                                            CMat::identity(2), CustomTag{});
  auto report = broken->validate();
  CHECK(!report.ok());
  bool saw_assoc = false;
  for (const auto& v : report.violations) saw_assoc |= v.axiom.find("assoc") != std::string::npos;
  CHECK(saw_assoc);

  // star matrix that is not an involution
  CMat s(2, 2);
  s.at(0, 0) = Complex(1);
  s.at(1, 1) = Complex(2);
  auto badstar = AlgebraPresentation::create(Ring::Rational, "badstar", labels,
                                             table2(zero2, zero2, zero2, zero2), s, CustomTag{});
  CHECK(!badstar->validate().ok());
}

}  // TEST_SUITE
