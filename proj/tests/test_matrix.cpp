#include <random>

#include "doctest.h"
#include "starkit/matrix.hpp"

using namespace starkit;

namespace {

CMat cmat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Complex>> r;
  for (auto& row : rows) {
    std::vector<Complex> v;
    for (int x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return CMat::from_rows(r);
}

CMat random_cmat(std::mt19937_64& gen, int rows, int cols) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = Complex(Ordered(static_cast<int>(gen() % 7) - 3),
                           Ordered(static_cast<int>(gen() % 7) - 3));
  return m;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("rref produces a canonical reduced form") {
  CMat m = cmat({{2, 4, 6}, {1, 2, 3}, {0, 0, 5}});
  auto p = rref(m);
  CHECK(p == std::vector<int>{0, 2});
  CHECK(m.at(0, 0) == Complex(1));
  CHECK(m.at(0, 1) == Complex(2));
  CHECK(m.at(0, 2) == Complex(0));
  CHECK(m.at(1, 2) == Complex(1));
  // zero rows sink to the bottom
  CHECK(m.row(2) == std::vector<Complex>{Complex(0), Complex(0), Complex(0)});
}

TEST_CASE("row_space is invariant under row operations") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    CMat a = random_cmat(gen, 3, 5);
    CMat shuffled(3, 5);
    // rows in reverse order plus a multiple of another row
    for (int j = 0; j < 5; ++j) {
      shuffled.at(0, j) = a.at(2, j);
      shuffled.at(1, j) = a.at(1, j) + a.at(2, j) * Complex(3);
      shuffled.at(2, j) = a.at(0, j) - a.at(1, j);
    }
    CHECK(row_space(a) == row_space(shuffled));
  }
}

TEST_CASE("nullspace annihilates and has complementary rank") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    CMat m = random_cmat(gen, 3, 4);
    CMat ns = nullspace(m);
    CHECK(ns.cols() == 4);
    CHECK(rank(m) + ns.rows() == 4);
    for (int r = 0; r < ns.rows(); ++r) {
      auto mx = m.apply(ns.row(r));
      for (const auto& x : mx) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("nullspace of full-rank map keeps the ambient width") {
  CMat id = CMat::identity(3);
  CMat ns = nullspace(id);
  CHECK(ns.rows() == 0);
  CHECK(ns.cols() == 3);
  // intersection through a full-rank factor stays in the right ambient space
  CMat w = intersect_row_spaces(id, id, 3);
  CHECK(w == row_space(id));
}

TEST_CASE("solve finds solutions exactly when consistent") {
  CMat m = cmat({{1, 2}, {3, 4}});
  auto x = solve(m, {Complex(5), Complex(11)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Complex(1));
  CHECK((*x)[1] == Complex(2));

  CMat sing = cmat({{1, 1}, {2, 2}});
  CHECK(solve(sing, {Complex(1), Complex(2)}).has_value());
  CHECK(!solve(sing, {Complex(1), Complex(3)}).has_value());
}

TEST_CASE("solve_affine describes the full solution set") {
  CMat m = cmat({{1, 1, 0}});
  auto s = solve_affine(m, {Complex(2)});
  REQUIRE(s.has_value());
  CHECK(s->kernel.rows() == 2);
  auto res = m.apply(s->particular);
  CHECK(res[0] == Complex(2));
}

TEST_CASE("sum and intersection of row spaces") {
  CMat a = cmat({{1, 0, 0}, {0, 1, 0}});
  CMat b = cmat({{0, 1, 0}, {0, 0, 1}});
  CMat s = sum_row_spaces(a, b);
  CHECK(s.rows() == 3);
  CMat w = intersect_row_spaces(a, b, 3);
  CHECK(w.rows() == 1);
  CHECK(w.at(0, 1) == Complex(1));
  CHECK(in_row_space(w.row(0), row_space(a)));
  CHECK(in_row_space(w.row(0), row_space(b)));
}

TEST_CASE("intersection has the modular dimension on random input") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    CMat a = row_space(random_cmat(gen, 2, 4));
    CMat b = row_space(random_cmat(gen, 2, 4));
    CMat s = sum_row_spaces(a, b);
    CMat w = intersect_row_spaces(a, b, 4);
    CHECK(a.rows() + b.rows() == s.rows() + w.rows());
    CHECK(row_space_contains(w, a));
    CHECK(row_space_contains(w, b));
  }
}

TEST_CASE("reduce_against leaves exactly the out-of-space part") {
  CMat basis = row_space(cmat({{1, 0, 2}, {0, 1, 1}}));
  auto piv = pivot_columns(basis);
  auto inside = reduce_against({Complex(3), Complex(4), Complex(10)}, basis, piv);
  for (const auto& x : inside) CHECK(x.is_zero());
  auto outside = reduce_against({Complex(0), Complex(0), Complex(1)}, basis, piv);
  CHECK(!outside[2].is_zero());
}

TEST_CASE("complement projects and lifts consistently") {
  CMat rows = row_space(cmat({{1, 0, 1, 0}, {0, 1, 0, 1}}));
  auto comp = complement_of(rows, 4);
  CHECK(comp.free_cols == std::vector<int>{2, 3});
  // proj . lift^T = identity on coset coordinates
  CMat pl = comp.proj * comp.lift.transposed();
  CHECK(pl == CMat::identity(2));
  // proj kills the subspace
  for (int r = 0; r < rows.rows(); ++r) {
    auto img = comp.proj.apply(rows.row(r));
    for (const auto& x : img) CHECK(x.is_zero());
  }
}

TEST_CASE("dagger conjugate-transposes") {
  CMat m(1, 2);
  m.at(0, 0) = Complex(Ordered(1), Ordered(2));
  m.at(0, 1) = Complex(Ordered(0), Ordered(-1));
  CMat d = dagger(m);
  CHECK(d.rows() == 2);
  CHECK(d.at(0, 0) == Complex(Ordered(1), Ordered(-2)));
  CHECK(d.at(1, 0) == Complex(Ordered(0), Ordered(1)));
}

TEST_CASE("matrices over the rational function field") {
  Complex l(Ordered::lambda());
  CMat m(2, 2);
  m.at(0, 0) = l;
  m.at(0, 1) = Complex(1);
  m.at(1, 0) = Complex(1);
  m.at(1, 1) = Complex(1) / l;
  // rank 1: second row is 1/l times the first
  CHECK(rank(m) == 1);
  CMat ns = nullspace(m);
  CHECK(ns.rows() == 1);
  auto img = m.apply(ns.row(0));
  CHECK(img[0].is_zero());
  CHECK(img[1].is_zero());
}

TEST_CASE("shape errors throw") {
  CHECK_THROWS_AS(cmat({{1, 2}}) * cmat({{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(vstack(cmat({{1}}), cmat({{1, 2}})), std::invalid_argument);
  CHECK_THROWS_AS(hstack(cmat({{1}}), cmat({{1}, {2}})), std::invalid_argument);
  CHECK_THROWS_AS(CMat::from_rows({{Complex(1)}, {Complex(1), Complex(2)}}),
                  std::invalid_argument);
}

}  // TEST_SUITE
