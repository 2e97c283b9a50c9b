#pragma once

// Exact scalar tower: ordered base rings Z, Q and Q(l) with the l-adic order
// (l is a formal infinitesimal: 0 < l < 1/n for every positive integer n),
// plus the complexification C = R(i).  All values are immutable canonical
// forms; arithmetic never rounds.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace starkit {

enum class Ring { Integer, Rational, RatFun };

std::string ring_name(Ring r);

/// Dense polynomial over Q in the formal variable `l`, lowest degree first.
/// Canonical: no trailing zero coefficients; the zero polynomial has an
/// empty coefficient vector.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const mpq_class& c);
  explicit QPoly(std::vector<mpq_class> coeffs);
  static QPoly variable();

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Smallest k with nonzero coefficient of l^k; -1 for the zero polynomial.
  int low_degree() const;
  mpq_class coeff(int k) const;
  const mpq_class& leading() const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator-() const;
  QPoly operator*(const QPoly& o) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  /// Euclidean division: *this = q*d + r with deg r < deg d.  d must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  /// Monic gcd; gcd(0,0) = 0.
  static QPoly gcd(QPoly a, QPoly b);

  mpq_class eval(const mpq_class& t) const;
  std::string str() const;

 private:
  void normalize();
  std::vector<mpq_class> c_;
};

/// Element of Q(l), kept coprime with monic denominator; zero is 0/1.
/// The l-adic sign of p/q is sign(lowest coeff of p) * sign(lowest coeff
/// of q), i.e. the sign of the value at sufficiently small rational l > 0.
class RatFun {
 public:
  RatFun() : num_(), den_(QPoly(mpq_class(1))) {}
  explicit RatFun(const mpq_class& c) : num_(QPoly(c)), den_(QPoly(mpq_class(1))) {}
  RatFun(QPoly num, QPoly den);
  static RatFun variable() { return RatFun(QPoly::variable(), QPoly(mpq_class(1))); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const;

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator-() const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  /// Value at a rational point; throws if the denominator vanishes there.
  mpq_class eval(const mpq_class& t) const;
  std::string str() const;

 private:
  QPoly num_, den_;
};

/// A value in one of the three ordered base rings.  Mixed-ring operations
/// promote to the wider ring (Integer -> Rational -> RatFun); division
/// promotes Integer operands to Rational.
class Ordered {
 public:
  Ordered() : v_(mpz_class(0)) {}
  Ordered(int n) : v_(mpz_class(n)) {}  // NOLINT: implicit by design
  explicit Ordered(mpz_class z) : v_(std::move(z)) {}
  explicit Ordered(mpq_class q);
  explicit Ordered(RatFun f) : v_(std::move(f)) {}
  static Ordered rational(long num, long den);
  static Ordered lambda() { return Ordered(RatFun::variable()); }

  Ring ring() const;
  bool is_zero() const { return sign() == 0; }
  int sign() const;
  Ordered abs() const { return sign() < 0 ? -*this : *this; }

  Ordered promoted(Ring target) const;
  /// Canonical representation in the smallest ring holding the value
  /// (a rational with denominator 1 becomes an integer, a constant rational
  /// function becomes a rational).
  Ordered reduced() const;
  static Ring common_ring(const Ordered& a, const Ordered& b);

  Ordered operator+(const Ordered& o) const;
  Ordered operator-(const Ordered& o) const;
  Ordered operator-() const;
  Ordered operator*(const Ordered& o) const;
  /// Exact division; throws std::invalid_argument on a zero divisor.
  Ordered operator/(const Ordered& o) const;

  bool operator==(const Ordered& o) const;
  bool operator!=(const Ordered& o) const { return !(*this == o); }
  bool operator<(const Ordered& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const Ordered& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const Ordered& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const Ordered& o) const { return (*this - o).sign() >= 0; }

  const mpz_class& as_integer() const;
  const mpq_class& as_rational() const;
  const RatFun& as_ratfun() const;

  /// Evaluate at a rational value of l (identity on Integer/Rational).
  mpq_class eval(const mpq_class& t) const;
  std::string str() const;

 private:
  std::variant<mpz_class, mpq_class, RatFun> v_;
};

/// Element of C = R(i) over the active base ring: re + im*i with conjugation
/// re - im*i and norm_sq = re^2 + im^2 (a sum of squares, so nonnegative and
/// zero only at zero; this makes C a field when R is).
class Complex {
 public:
  Complex() = default;
  Complex(int n) : re_(n) {}  // NOLINT: implicit by design
  Complex(Ordered re) : re_(std::move(re)) {}
  Complex(Ordered re, Ordered im) : re_(std::move(re)), im_(std::move(im)) {}
  static Complex i() { return Complex(Ordered(0), Ordered(1)); }

  const Ordered& re() const { return re_; }
  const Ordered& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Ring ring() const { return Ordered::common_ring(re_, im_); }

  Complex conj() const { return Complex(re_, -im_); }
  Complex reduced() const { return Complex(re_.reduced(), im_.reduced()); }
  Ordered norm_sq() const { return re_ * re_ + im_ * im_; }

  Complex operator+(const Complex& o) const { return {re_ + o.re_, im_ + o.im_}; }
  Complex operator-(const Complex& o) const { return {re_ - o.re_, im_ - o.im_}; }
  Complex operator-() const { return {-re_, -im_}; }
  Complex operator*(const Complex& o) const;
  Complex operator/(const Complex& o) const;
  bool operator==(const Complex& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Complex& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Ordered re_, im_;
};

/// Parse the scalar text syntax: integer literals, `l`, `i`, + - * /,
/// parentheses and `^` with nonnegative integer exponents.  Examples:
/// `-3`, `-3/7`, `(1 + 2*l)/(1 - l)`, `1/2 - 3*i`.  Throws
/// std::invalid_argument with a position diagnostic on malformed input.
Complex parse_complex(const std::string& text);

/// Like parse_complex, but rejects values outside the given ring
/// (e.g. `l` when the workspace ring is rat).
Complex parse_complex_in(const std::string& text, Ring ring);

}  // namespace starkit
