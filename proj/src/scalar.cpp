#include "starkit/scalar.hpp"

#include <cctype>
#include <sstream>

namespace starkit {

std::string ring_name(Ring r) {
  switch (r) {
    case Ring::Integer: return "int";
    case Ring::Rational: return "rat";
    case Ring::RatFun: return "ratfun";
  }
  throw std::logic_error("unreachable ring tag");
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(const mpq_class& c) {
  if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

QPoly QPoly::variable() {
  QPoly p;
  p.c_ = {mpq_class(0), mpq_class(1)};
  return p;
}

void QPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  for (auto& q : c_) q.canonicalize();
}

bool QPoly::is_one() const { return c_.size() == 1 && c_[0] == 1; }

int QPoly::low_degree() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return -1;
}

mpq_class QPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return mpq_class(0);
  return c_[k];
}

const mpq_class& QPoly::leading() const {
  if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
  return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), mpq_class(0));
  for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
  std::vector<mpq_class> r(c_);
  for (auto& q : r) q = -q;
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
  for (size_t a = 0; a < c_.size(); ++a)
    for (size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
  QPoly q, r = *this;
  std::vector<mpq_class> qc(r.c_.size() > d.c_.size() ? r.c_.size() - d.c_.size() + 1 : 1,
                            mpq_class(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    mpq_class f = r.leading() / d.leading();
    qc[shift] += f;
    // r -= f * l^shift * d
    for (size_t k = 0; k < d.c_.size(); ++k) r.c_[k + shift] -= f * d.c_[k];
    r.normalize();
  }
  q = QPoly(std::move(qc));
  return {q, r};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // monic normalization
  mpq_class lead = a.leading();
  for (auto& q : a.c_) q /= lead;
  return a;
}

mpq_class QPoly::eval(const mpq_class& t) const {
  mpq_class acc(0);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
  return acc;
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    mpq_class a = c_[k];
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    mpq_class mag = ::abs(a);
    if (k == 0) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      out << "l";
      if (k > 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------- RatFun

RatFun::RatFun(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly(mpq_class(1));
    return;
  }
  QPoly g = QPoly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  mpq_class lead = den_.leading();
  if (lead != 1) {
    QPoly scale(mpq_class(1) / lead);
    num_ = num_ * scale;
    den_ = den_ * scale;
  }
}

int RatFun::sign() const {
  if (num_.is_zero()) return 0;
  int sn = sgn(num_.coeff(num_.low_degree()));
  int sd = sgn(den_.coeff(den_.low_degree()));
  return sn * sd;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator-() const {
  RatFun r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) throw std::invalid_argument("division by zero rational function");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

mpq_class RatFun::eval(const mpq_class& t) const {
  mpq_class d = den_.eval(t);
  if (d == 0) throw std::invalid_argument("rational function pole at evaluation point");
  return num_.eval(t) / d;
}

std::string RatFun::str() const {
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------- Ordered

Ordered::Ordered(mpq_class q) {
  q.canonicalize();
  v_ = std::move(q);
}

Ordered Ordered::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Ordered(q);
}

Ring Ordered::ring() const {
  if (std::holds_alternative<mpz_class>(v_)) return Ring::Integer;
  if (std::holds_alternative<mpq_class>(v_)) return Ring::Rational;
  return Ring::RatFun;
}

int Ordered::sign() const {
  if (auto z = std::get_if<mpz_class>(&v_)) return sgn(*z);
  if (auto q = std::get_if<mpq_class>(&v_)) return sgn(*q);
  return std::get<RatFun>(v_).sign();
}

Ordered Ordered::promoted(Ring target) const {
  Ring from = ring();
  if (from == target) return *this;
  switch (target) {
    case Ring::Integer:
      throw std::invalid_argument("cannot demote scalar to int");
    case Ring::Rational:
      if (from != Ring::Integer) throw std::invalid_argument("cannot demote scalar to rat");
      return Ordered(mpq_class(std::get<mpz_class>(v_)));
    case Ring::RatFun: {
      mpq_class q = from == Ring::Integer ? mpq_class(std::get<mpz_class>(v_))
                                          : std::get<mpq_class>(v_);
      return Ordered(RatFun(q));
    }
  }
  throw std::logic_error("unreachable ring tag");
}

Ordered Ordered::reduced() const {
  if (auto f = std::get_if<RatFun>(&v_)) {
    if (f->num().degree() > 0 || f->den().degree() > 0) return *this;
    if (f->is_zero()) return Ordered(mpz_class(0));
    return Ordered(mpq_class(f->num().coeff(0) / f->den().coeff(0))).reduced();
  }
  if (auto q = std::get_if<mpq_class>(&v_)) {
    if (q->get_den() == 1) return Ordered(mpz_class(q->get_num()));
  }
  return *this;
}

Ring Ordered::common_ring(const Ordered& a, const Ordered& b) {
  return std::max(a.ring(), b.ring());
}

namespace {
template <class F>
Ordered apply2(const Ordered& a, const Ordered& b, F&& f) {
  Ring r = Ordered::common_ring(a, b);
  Ordered pa = a.promoted(r), pb = b.promoted(r);
  switch (r) {
    case Ring::Integer: return Ordered(mpz_class(f(pa.as_integer(), pb.as_integer())));
    case Ring::Rational: return Ordered(mpq_class(f(pa.as_rational(), pb.as_rational())));
    case Ring::RatFun: return Ordered(f(pa.as_ratfun(), pb.as_ratfun()));
  }
  throw std::logic_error("unreachable ring tag");
}
}  // namespace

Ordered Ordered::operator+(const Ordered& o) const {
  return apply2(*this, o, [](const auto& x, const auto& y) { return x + y; });
}

Ordered Ordered::operator-(const Ordered& o) const {
  return apply2(*this, o, [](const auto& x, const auto& y) { return x - y; });
}

Ordered Ordered::operator-() const {
  if (auto z = std::get_if<mpz_class>(&v_)) return Ordered(mpz_class(-*z));
  if (auto q = std::get_if<mpq_class>(&v_)) return Ordered(mpq_class(-*q));
  return Ordered(-std::get<RatFun>(v_));
}

Ordered Ordered::operator*(const Ordered& o) const {
  return apply2(*this, o, [](const auto& x, const auto& y) { return x * y; });
}

Ordered Ordered::operator/(const Ordered& o) const {
  if (o.sign() == 0) throw std::invalid_argument("division by zero");
  Ring r = common_ring(*this, o);
  if (r == Ring::Integer) r = Ring::Rational;
  Ordered pa = promoted(r), pb = o.promoted(r);
  if (r == Ring::Rational) return Ordered(mpq_class(pa.as_rational() / pb.as_rational()));
  return Ordered(pa.as_ratfun() / pb.as_ratfun());
}

bool Ordered::operator==(const Ordered& o) const {
  Ring r = common_ring(*this, o);
  Ordered pa = promoted(r), pb = o.promoted(r);
  switch (r) {
    case Ring::Integer: return pa.as_integer() == pb.as_integer();
    case Ring::Rational: return pa.as_rational() == pb.as_rational();
    case Ring::RatFun: return pa.as_ratfun() == pb.as_ratfun();
  }
  throw std::logic_error("unreachable ring tag");
}

const mpz_class& Ordered::as_integer() const {
  if (auto z = std::get_if<mpz_class>(&v_)) return *z;
  throw std::invalid_argument("scalar is not an integer");
}

const mpq_class& Ordered::as_rational() const {
  if (auto q = std::get_if<mpq_class>(&v_)) return *q;
  throw std::invalid_argument("scalar is not a rational");
}

const RatFun& Ordered::as_ratfun() const {
  if (auto f = std::get_if<RatFun>(&v_)) return *f;
  throw std::invalid_argument("scalar is not a rational function");
}

mpq_class Ordered::eval(const mpq_class& t) const {
  if (auto z = std::get_if<mpz_class>(&v_)) return mpq_class(*z);
  if (auto q = std::get_if<mpq_class>(&v_)) return *q;
  return std::get<RatFun>(v_).eval(t);
}

std::string Ordered::str() const {
  if (auto z = std::get_if<mpz_class>(&v_)) return z->get_str();
  if (auto q = std::get_if<mpq_class>(&v_)) return q->get_str();
  return std::get<RatFun>(v_).str();
}

// ---------------------------------------------------------------- Complex

Complex Complex::operator*(const Complex& o) const {
  return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
}

Complex Complex::operator/(const Complex& o) const {
  Ordered n = o.norm_sq();
  if (n.sign() == 0) throw std::invalid_argument("complex division by zero");
  Complex num = *this * o.conj();
  return {num.re_ / n, num.im_ / n};
}

std::string Complex::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag;
  Ordered mag = im_.abs();
  if (mag == Ordered(1))
    imag = "i";
  else
    imag = mag.str() + "*i";
  if (re_.is_zero()) return (im_.sign() < 0 ? "-" : "") + imag;
  return re_.str() + (im_.sign() < 0 ? " - " : " + ") + imag;
}

// ---------------------------------------------------------------- parsing

namespace {

// Recursive-descent parser for the scalar syntax.  Every value during
// parsing is a Complex; `l` enters as a rational function, `i` as the
// imaginary unit over Integer.
class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}

  Complex parse() {
    Complex v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("scalar parse error at position " + std::to_string(pos_) +
                                " in \"" + s_ + "\": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Complex expr() {
    Complex v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Complex term() {
    Complex v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }

  Complex unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Complex power() {
    Complex base = atom();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("exponent must be a nonnegative integer");
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
        if (e > 4096) fail("exponent too large");
        ++pos_;
      }
      Complex acc = Complex(Ordered(1));
      for (unsigned long k = 0; k < e; ++k) acc = acc * base;
      return acc;
    }
    return base;
  }

  Complex atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Complex v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (c == 'l') {
      ++pos_;
      return Complex(Ordered::lambda());
    }
    if (c == 'i') {
      ++pos_;
      return Complex::i();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Complex(Ordered(mpz_class(s_.substr(start, pos_ - start))));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Complex parse_complex(const std::string& text) { return ScalarParser(text).parse(); }

Complex parse_complex_in(const std::string& text, Ring ring) {
  Complex v = parse_complex(text).reduced();
  if (v.ring() > ring)
    throw std::invalid_argument("scalar \"" + text + "\" does not live in ring " +
                                ring_name(ring));
  return v;
}

}  // namespace starkit
