#include "doctest.h"
#include "starkit/scalar.hpp"

using namespace starkit;

namespace {

QPoly poly(std::initializer_list<long> coeffs) {
  std::vector<mpq_class> c;
  for (long k : coeffs) c.emplace_back(k);
  return QPoly(std::move(c));
}

}  // namespace

TEST_SUITE("scalar") {

TEST_CASE("qpoly canonical form drops trailing zeros") {
  CHECK(poly({0, 0}).is_zero());
  CHECK(poly({3, 0, 0}).degree() == 0);
  CHECK(poly({0, 1}).degree() == 1);
  CHECK(poly({0, 1}).low_degree() == 1);
  CHECK(QPoly().low_degree() == -1);
  CHECK(poly({1, 2}) - poly({1, 2}) == QPoly());
}

TEST_CASE("qpoly arithmetic and division") {
  QPoly a = poly({1, 2, 1});  // (1+l)^2
  QPoly b = poly({1, 1});
  CHECK(b * b == a);
  auto [q, r] = a.divmod(b);
  CHECK(q == b);
  CHECK(r.is_zero());
  auto [q2, r2] = poly({1, 0, 1}).divmod(poly({0, 1}));
  CHECK(q2 == poly({0, 1}));
  CHECK(r2 == poly({1}));
  CHECK_THROWS_AS(a.divmod(QPoly()), std::invalid_argument);
}

TEST_CASE("qpoly gcd is monic") {
  QPoly g = QPoly::gcd(poly({2, 2}), poly({4, 8, 4}));
  CHECK(g == poly({1, 1}));
  CHECK(QPoly::gcd(QPoly(), QPoly()).is_zero());
  CHECK(QPoly::gcd(poly({0, 3}), QPoly()) == poly({0, 1}));
}

TEST_CASE("ratfun keeps coprime with monic denominator") {
  RatFun f(poly({0, 2}), poly({0, 0, 2}));  // 2l / 2l^2 = 1/l
  CHECK(f.num() == poly({1}));
  CHECK(f.den() == poly({0, 1}));
  RatFun z(QPoly(), poly({5}));
  CHECK(z.is_zero());
  CHECK(z.den().is_one());
  CHECK_THROWS_AS(RatFun(poly({1}), QPoly()), std::invalid_argument);
}

TEST_CASE("lambda-adic sign looks at lowest coefficients") {
  RatFun l = RatFun::variable();
  RatFun one(mpq_class(1));
  // 0 < l and l < 1: the order treats l as an infinitesimal
  CHECK(l.sign() > 0);
  CHECK((l - one).sign() < 0);
  CHECK((one - l).sign() > 0);
  // sign of (l - l^2)/(1 - l) is + : numerator lowest coeff +1 at degree 1
  RatFun v = (l - l * l) / (one - l);
  CHECK(v.sign() > 0);
  CHECK((-v).sign() < 0);
  CHECK(RatFun().sign() == 0);
}

TEST_CASE("ratfun eval agrees with the field operations") {
  RatFun l = RatFun::variable();
  RatFun f = (RatFun(mpq_class(1)) + l) / (RatFun(mpq_class(2)) - l);
  mpq_class at = f.eval(mpq_class(1, 3));
  CHECK(at == mpq_class(4, 5));
  CHECK_THROWS_AS((RatFun(mpq_class(1)) / l).eval(0), std::invalid_argument);
}

TEST_CASE("ordered promotion ladder") {
  Ordered z(mpz_class(3));
  Ordered q = Ordered::rational(1, 2);
  Ordered f = Ordered::lambda();
  CHECK(z.ring() == Ring::Integer);
  CHECK(q.ring() == Ring::Rational);
  CHECK(f.ring() == Ring::RatFun);
  CHECK((z + q).ring() == Ring::Rational);
  CHECK((q * f).ring() == Ring::RatFun);
  CHECK((z + q) == Ordered::rational(7, 2));
  // division of integers promotes, even when exact
  CHECK((Ordered(4) / Ordered(2)).ring() == Ring::Rational);
  CHECK((Ordered(4) / Ordered(2)) == Ordered(2));
  CHECK_THROWS_AS(z / Ordered(0), std::invalid_argument);
}

TEST_CASE("reduced finds the smallest ring") {
  Ordered q = Ordered(4) / Ordered(2);
  CHECK(q.ring() == Ring::Rational);
  CHECK(q.reduced().ring() == Ring::Integer);
  Ordered f = Ordered::lambda() / Ordered::lambda();
  CHECK(f.ring() == Ring::RatFun);
  CHECK(f.reduced().ring() == Ring::Integer);
  CHECK(f.reduced() == Ordered(1));
  Ordered half = Ordered::rational(1, 2).promoted(Ring::RatFun);
  CHECK(half.reduced().ring() == Ring::Rational);
  // a genuine rational function stays put
  CHECK(Ordered::lambda().reduced().ring() == Ring::RatFun);
}

TEST_CASE("ordered comparisons respect the lambda-adic order") {
  Ordered l = Ordered::lambda();
  CHECK(Ordered(0) < l);
  CHECK(l < Ordered::rational(1, 1000000));
  CHECK(l * l < l);
  CHECK(Ordered(1) - l > Ordered(0));
  CHECK(l.abs() == l);
  CHECK((-l).abs() == l);
}

TEST_CASE("complex field operations") {
  Complex i = Complex::i();
  CHECK(i * i == Complex(-1));
  CHECK(i.conj() == -i);
  Complex z(Ordered(3), Ordered(4));
  CHECK(z.norm_sq() == Ordered(25));
  CHECK(z * z.conj() == Complex(Ordered(25)));
  CHECK(z / z == Complex(1));
  CHECK((Complex(1) / i) == -i);
  CHECK_THROWS_AS(z / Complex(0), std::invalid_argument);
}

TEST_CASE("complex norm_sq vanishes only at zero") {
  // the defining property that makes R(i) a field for ordered R
  Complex w(Ordered::lambda(), Ordered(1) - Ordered::lambda());
  CHECK(w.norm_sq().sign() > 0);
  CHECK(Complex(0).norm_sq().is_zero());
}

TEST_CASE("scalar parsing round trips") {
  const char* samples[] = {"0",       "-3",           "1/2",       "l",
                           "i",       "1/2 - 3*i",    "(1 + 2*l)/(1 - l)",
                           "l^2 + l", "-i*(1 - l)/2", "3 - 2*i + l*i"};
  for (const char* s : samples) {
    Complex z = parse_complex(s);
    Complex again = parse_complex(z.str());
    CHECK(again == z);
  }
  CHECK(parse_complex("2^3") == Complex(8));
  CHECK(parse_complex("(1+i)*(1-i)") == Complex(2));
}

TEST_CASE("scalar parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1 +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("(1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("2^-1"), std::invalid_argument);
}

TEST_CASE("ring-restricted parsing") {
  CHECK(parse_complex_in("7", Ring::Integer) == Complex(7));
  CHECK_THROWS_AS(parse_complex_in("1/2", Ring::Integer), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex_in("l", Ring::Rational), std::invalid_argument);
  CHECK(parse_complex_in("4/2", Ring::Integer) == Complex(2));
  CHECK(parse_complex_in("l", Ring::RatFun).re() == Ordered::lambda());
}

TEST_CASE("ordered eval specializes lambda") {
  Ordered f = (Ordered(1) - Ordered::lambda()) / (Ordered(1) + Ordered::lambda());
  CHECK(f.eval(mpq_class(1, 3)) == mpq_class(1, 2));
  CHECK(Ordered(5).eval(mpq_class(9)) == mpq_class(5));
}

}  // TEST_SUITE
