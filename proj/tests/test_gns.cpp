#include "doctest.h"
#include "starkit/gns.hpp"
#include "starkit/ideals.hpp"
#include "starkit/matrix.hpp"

using namespace starkit;

namespace {

LinearFunctional trace2() {
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  return LinearFunctional(m2, {Complex(1), Complex(0), Complex(0), Complex(1)});
}

// intersection of the Gel'fand ideals of omega_B over all basis elements B
CMat kernel_by_conjugation(const LinearFunctional& omega) {
  const auto& a = omega.algebra();
  CMat acc(0, a->dim());
  bool first = true;
  for (int k = 0; k < a->dim(); ++k) {
    CMat jk = gelfand_ideal(conjugated_functional(omega, a->basis_vector(k)));
    acc = first ? jk : intersect_row_spaces(acc, jk, a->dim());
    first = false;
  }
  return acc;
}

}  // namespace

TEST_SUITE("gns") {

TEST_CASE("trace construction on 2x2 matrices is faithful") {
  auto res = gns_construct(trace2());
  CHECK(res.rep.space_dim() == 4);
  CHECK(res.gelfand.rows() == 0);
  CHECK(res.rep.gram() == CMat::identity(4));
  CHECK(res.rep.validate().ok());
  CHECK(representation_kernel(res.rep).rows() == 0);
  REQUIRE(res.rep.cyclic_vector().has_value());
}

TEST_CASE("point evaluation crushes the carrier to a line") {
  auto f3 = make_function_points(3, Ring::Rational);
  LinearFunctional d3(f3, {Complex(0), Complex(0), Complex(1)});
  auto res = gns_construct(d3);
  CHECK(res.rep.space_dim() == 1);
  CHECK(res.gelfand.rows() == 2);
  // for this commutative example the kernel equals the Gel'fand ideal
  CHECK(representation_kernel(res.rep) == res.gelfand);
  CHECK(res.rep.validate().ok());
}

TEST_CASE("class map and lift are mutually inverse on the carrier") {
  auto f3 = make_function_points(3, Ring::Rational);
  LinearFunctional d3(f3, {Complex(0), Complex(0), Complex(1)});
  auto res = gns_construct(d3);
  CHECK(res.class_map * res.lift.transposed() == CMat::identity(res.rep.space_dim()));
}

TEST_CASE("gns refuses non-positive functionals") {
  auto f2 = make_function_points(2, Ring::Rational);
  LinearFunctional bad(f2, {Complex(-1), Complex(1)});
  CHECK_THROWS_AS(gns_construct(bad), std::invalid_argument);
}

TEST_CASE("the cyclic vector state recovers the functional") {
  auto tr = trace2();
  auto res = gns_construct(tr);
  REQUIRE(res.rep.cyclic_vector().has_value());
  LinearFunctional recovered = vector_state(res.rep, *res.rep.cyclic_vector());
  for (int k = 0; k < tr.algebra()->dim(); ++k) {
    auto b = tr.algebra()->basis_vector(k);
    CHECK(recovered(b) == tr(b));
  }
}

TEST_CASE("vector states are positive for any vector") {
  auto res = gns_construct(trace2());
  std::vector<Complex> phi = {Complex(1), Complex::i(), Complex(0), Complex(-2)};
  auto st = vector_state(res.rep, phi);
  CHECK(is_positive_functional(st).positive);
}

TEST_CASE("representation kernels are closed star ideals") {
  auto f3 = make_function_points(3, Ring::Rational);
  LinearFunctional d1(f3, {Complex(1), Complex(0), Complex(0)});
  auto res = gns_construct(d1);
  CMat k = representation_kernel(res.rep);
  CHECK(k.rows() == 2);
  // the validating constructor accepts it as a star ideal
  CHECK_NOTHROW(StarIdeal::from_span(f3, k));
}

TEST_CASE("unital three-inclusion chain") {
  // ker pi ... inside the Gel'fand ideal ... inside ker omega
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  LinearFunctional corner(m2, {Complex(1), Complex(0), Complex(0), Complex(0)});
  REQUIRE(is_positive_functional(corner).positive);
  auto res = gns_construct(corner);
  CMat ker_pi = representation_kernel(res.rep);
  CMat ker_omega(0, 4);
  {
    // row basis of {x : omega(x) = 0}
    CMat w(1, 4);
    for (int k = 0; k < 4; ++k) w.at(0, k) = corner(m2->basis_vector(k)).conj();
    ker_omega = nullspace(w);
  }
  CHECK(row_space_contains(ker_pi, res.gelfand));
  CHECK(row_space_contains(res.gelfand, ker_omega));
  // here the inclusions are strict: 0 vs dim 2 vs dim 3
  CHECK(ker_pi.rows() == 0);
  CHECK(res.gelfand.rows() == 2);
  CHECK(ker_omega.rows() == 3);
}

TEST_CASE("kernel equals the intersection of conjugated gelfand ideals") {
  auto m2 = make_matrix_algebra(2, Ring::Rational);
  LinearFunctional corner(m2, {Complex(1), Complex(0), Complex(0), Complex(0)});
  auto res = gns_construct(corner);
  CHECK(representation_kernel(res.rep) == kernel_by_conjugation(corner));

  auto f3 = make_function_points(3, Ring::Rational);
  LinearFunctional mix(f3, {Complex(1), Complex(1), Complex(0)});
  auto res2 = gns_construct(mix);
  CHECK(representation_kernel(res2.rep) == kernel_by_conjugation(mix));
}

TEST_CASE("gns representations are strongly non-degenerate") {
  auto f3 = make_function_points(3, Ring::Rational);
  for (int p = 0; p < 3; ++p) {
    std::vector<Complex> w(3);
    w[p] = Complex(1);
    auto res = gns_construct(LinearFunctional(f3, w));
    auto deg = degeneracy_status(res.rep);
    CHECK(deg.status == Degeneracy::StronglyNonDegenerate);
    CHECK(deg.essential.rows() == res.rep.space_dim());
  }
}

TEST_CASE("degenerate representations restrict to their essential part") {
  auto f2 = make_function_points(2, Ring::Rational);
  // represent on C^2 but let the second point act as zero
  std::vector<CMat> act = {CMat(2, 2), CMat(2, 2)};
  act[0].at(0, 0) = Complex(1);
  auto rep = Representation::create(f2, CMat::identity(2), act, "partial");
  CHECK(rep.validate().ok());
  auto deg = degeneracy_status(rep);
  CHECK(deg.status == Degeneracy::Degenerate);
  CHECK(deg.essential.rows() == 1);
  auto cut = restrict_to_essential(rep, deg);
  CHECK(cut.space_dim() == 1);
  CHECK(cut.validate().ok());
  CHECK(degeneracy_status(cut).status == Degeneracy::StronglyNonDegenerate);
}

TEST_CASE("direct sums of representations") {
  auto f2 = make_function_points(2, Ring::Rational);
  LinearFunctional d1(f2, {Complex(1), Complex(0)});
  LinearFunctional d2(f2, {Complex(0), Complex(1)});
  auto r1 = gns_construct(d1);
  auto r2 = gns_construct(d2);
  auto sum = direct_sum_reps({r1.rep, r2.rep});
  CHECK(sum.space_dim() == 2);
  CHECK(sum.validate().ok());
  CHECK(representation_kernel(sum).rows() == 0);
  // inner products restrict blockwise
  CHECK(sum.inner({Complex(1), Complex(0)}, {Complex(0), Complex(1)}) == Complex(0));
}

TEST_CASE("gns over the zero functional has an empty carrier") {
  auto z2 = make_zero_mult(2, Ring::Rational);
  auto res = gns_construct(zero_functional(z2));
  CHECK(res.rep.space_dim() == 0);
  CHECK(res.gelfand.rows() == 2);
  CHECK(!res.rep.cyclic_vector().has_value());
  CHECK(representation_kernel(res.rep).rows() == 2);
}

TEST_CASE("representation create validates shapes") {
  auto f2 = make_function_points(2, Ring::Rational);
  std::vector<CMat> act = {CMat(2, 2), CMat(2, 2)};
  CHECK_THROWS_AS(Representation::create(f2, CMat(2, 3), act, "bad"), std::invalid_argument);
  CHECK_THROWS_AS(Representation::create(f2, CMat::identity(3), act, "bad"),
                  std::invalid_argument);
  // the carrier form must be positive definite
  CMat g(2, 2);
  g.at(0, 0) = Complex(1);
  CHECK_THROWS_AS(Representation::create(f2, g, act, "bad"), std::invalid_argument);
}

}  // TEST_SUITE
