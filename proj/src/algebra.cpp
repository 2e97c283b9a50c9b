#include "starkit/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace starkit {

std::string ValidationReport::str() const {
  if (ok()) return "all axioms hold";
  std::ostringstream out;
  for (const auto& v : violations) out << v.axiom << ": " << v.detail << "\n";
  return out.str();
}

std::vector<Complex> conj_vector(const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = v[k].conj();
  return out;
}

AlgebraPtr AlgebraPresentation::create(Ring ring, std::string name,
                                       std::vector<std::string> labels,
                                       std::vector<std::vector<std::vector<Complex>>> structure,
                                       CMat star_matrix, Provenance prov) {
  auto a = std::shared_ptr<AlgebraPresentation>(new AlgebraPresentation());
  int n = static_cast<int>(labels.size());
  a->n_ = n;
  a->ring_ = ring;
  a->name_ = std::move(name);
  a->labels_ = std::move(labels);
  if (static_cast<int>(structure.size()) != n)
    throw std::invalid_argument("structure constant table has wrong size");
  for (auto& row : structure) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("structure constant table has wrong size");
    for (auto& v : row) {
      if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("structure constant vector has wrong length");
      for (auto& z : v) {
        z = z.reduced();
        if (z.ring() > ring)
          throw std::invalid_argument("structure constant outside declared ring");
      }
    }
  }
  if (star_matrix.rows() != n || star_matrix.cols() != n)
    throw std::invalid_argument("star matrix has wrong shape");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      star_matrix.at(i, j) = star_matrix.at(i, j).reduced();
      if (star_matrix.at(i, j).ring() > ring)
        throw std::invalid_argument("star matrix entry outside declared ring");
    }
  a->c_ = std::move(structure);
  a->star_ = std::move(star_matrix);
  a->prov_ = std::move(prov);
  a->compute_flags();
  return a;
}

std::vector<Complex> AlgebraPresentation::basis_vector(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("basis index out of range");
  std::vector<Complex> v(n_);
  v[i] = Complex(Ordered(1));
  return v;
}

std::vector<Complex> AlgebraPresentation::multiply(const std::vector<Complex>& x,
                                                   const std::vector<Complex>& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw std::invalid_argument("element has wrong dimension");
  std::vector<Complex> z(n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Complex f = x[i] * y[j];
      const auto& cij = c_[i][j];
      for (int k = 0; k < n_; ++k)
        if (!cij[k].is_zero()) z[k] = z[k] + f * cij[k];
    }
  }
  return z;
}

std::vector<Complex> AlgebraPresentation::star(const std::vector<Complex>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("element has wrong dimension");
  return star_.apply(conj_vector(x));
}

const std::vector<Complex>& AlgebraPresentation::unit() const {
  if (!has_unit_) throw std::invalid_argument("algebra " + name_ + " has no unit");
  return unit_;
}

CMat AlgebraPresentation::left_mult(const std::vector<Complex>& x) const {
  CMat m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (!c_[i][j][k].is_zero()) m.at(k, j) = m.at(k, j) + x[i] * c_[i][j][k];
  }
  return m;
}

CMat AlgebraPresentation::right_mult(const std::vector<Complex>& y) const {
  CMat m(n_, n_);
  for (int j = 0; j < n_; ++j) {
    if (y[j].is_zero()) continue;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        if (!c_[i][j][k].is_zero()) m.at(k, i) = m.at(k, i) + y[j] * c_[i][j][k];
  }
  return m;
}

void AlgebraPresentation::compute_flags() {
  // Unit: one linear system for "u * b_j = b_j and b_j * u = b_j for all j".
  {
    CMat m(2 * n_ * n_, n_);
    std::vector<Complex> rhs(2 * n_ * n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        for (int i = 0; i < n_; ++i) {
          m.at(j * n_ + k, i) = c_[i][j][k];
          m.at(n_ * n_ + j * n_ + k, i) = c_[j][i][k];
        }
        if (j == k) {
          rhs[j * n_ + k] = Complex(Ordered(1));
          rhs[n_ * n_ + j * n_ + k] = Complex(Ordered(1));
        }
      }
    auto u = solve(m, rhs);
    has_unit_ = u.has_value();
    if (has_unit_) unit_ = *u;
  }
  // Idempotent: products b_i b_j span the whole space.
  {
    std::vector<std::vector<Complex>> rows;
    rows.reserve(static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) rows.push_back(c_[i][j]);
    CMat m = CMat::from_rows(rows);
    is_idempotent_ = n_ == 0 || rank(m) == n_;
  }
  // Nondegenerate: trivial left and right annihilators.
  {
    CMat ml(n_ * n_, n_), mr(n_ * n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i) {
          ml.at(j * n_ + k, i) = c_[i][j][k];
          mr.at(j * n_ + k, i) = c_[j][i][k];
        }
    is_nondegenerate_ = nullspace(ml).rows() == 0 && nullspace(mr).rows() == 0;
  }
}

ValidationReport AlgebraPresentation::validate() const {
  ValidationReport rep;
  auto to_str = [this](const std::vector<Complex>& v) { return element_str(v); };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        auto lhs = multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
        auto rhs = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
        if (lhs != rhs) {
          rep.violations.push_back(
              {"associativity", "(" + labels_[i] + " " + labels_[j] + ") " + labels_[k] +
                                    " = " + to_str(lhs) + " but " + labels_[i] + " (" +
                                    labels_[j] + " " + labels_[k] + ") = " + to_str(rhs)});
          if (rep.violations.size() > 8) return rep;
        }
      }
  for (int i = 0; i < n_; ++i) {
    auto twice = star(star(basis_vector(i)));
    if (twice != basis_vector(i)) {
      rep.violations.push_back(
          {"involution", labels_[i] + "** = " + to_str(twice) + " != " + labels_[i]});
    }
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      auto lhs = star(multiply(basis_vector(i), basis_vector(j)));
      auto rhs = multiply(star(basis_vector(j)), star(basis_vector(i)));
      if (lhs != rhs) {
        rep.violations.push_back(
            {"star anti-multiplicativity",
             "(" + labels_[i] + " " + labels_[j] + ")* = " + to_str(lhs) + " but " +
                 labels_[j] + "* " + labels_[i] + "* = " + to_str(rhs)});
        if (rep.violations.size() > 16) return rep;
      }
    }
  return rep;
}

std::vector<std::vector<Complex>> AlgebraPresentation::hermitian_basis() const {
  // Split z = u + i v; the condition S conj(z) = z becomes a real 2n x 2n
  // homogeneous system in (u, v).
  RMat m(2 * n_, 2 * n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) {
      Ordered sre = star_.at(k, i).re(), sim = star_.at(k, i).im();
      m.at(k, i) = m.at(k, i) + sre;
      m.at(k, n_ + i) = m.at(k, n_ + i) + sim;
      m.at(n_ + k, i) = m.at(n_ + k, i) + sim;
      m.at(n_ + k, n_ + i) = m.at(n_ + k, n_ + i) - sre;
    }
  for (int k = 0; k < n_; ++k) {
    m.at(k, k) = m.at(k, k) - Ordered(1);
    m.at(n_ + k, n_ + k) = m.at(n_ + k, n_ + k) - Ordered(1);
  }
  RMat basis = nullspace(m);
  std::vector<std::vector<Complex>> out;
  for (int r = 0; r < basis.rows(); ++r) {
    std::vector<Complex> z(n_);
    for (int i = 0; i < n_; ++i) z[i] = Complex(basis.at(r, i), basis.at(r, n_ + i));
    out.push_back(std::move(z));
  }
  return out;
}

std::string AlgebraPresentation::element_str(const std::vector<Complex>& x) const {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k < n_; ++k) {
    if (x[k].is_zero()) continue;
    if (!first) out << " + ";
    std::string cs = x[k].str();
    if (cs == "1") {
      out << labels_[k];
    } else if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos) {
      out << "(" << cs << ")*" << labels_[k];
    } else {
      out << cs << "*" << labels_[k];
    }
    first = false;
  }
  if (first) return "0";
  return out.str();
}

// ---------------------------------------------------------------- Element

Element make_element(AlgebraPtr a, std::vector<Complex> coeffs) {
  if (static_cast<int>(coeffs.size()) != a->dim())
    throw std::invalid_argument("element has wrong dimension");
  return Element{std::move(a), std::move(coeffs)};
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (a.alg.get() != b.alg.get())
    throw std::invalid_argument("elements belong to different algebras");
}
}  // namespace

Element Element::operator+(const Element& o) const {
  require_same(*this, o);
  std::vector<Complex> r(c.size());
  for (size_t k = 0; k < c.size(); ++k) r[k] = c[k] + o.c[k];
  return {alg, std::move(r)};
}

Element Element::operator-(const Element& o) const {
  require_same(*this, o);
  std::vector<Complex> r(c.size());
  for (size_t k = 0; k < c.size(); ++k) r[k] = c[k] - o.c[k];
  return {alg, std::move(r)};
}

Element Element::operator*(const Element& o) const {
  require_same(*this, o);
  return {alg, alg->multiply(c, o.c)};
}

Element Element::scaled(const Complex& z) const {
  std::vector<Complex> r(c.size());
  for (size_t k = 0; k < c.size(); ++k) r[k] = c[k] * z;
  return {alg, std::move(r)};
}

Element Element::star() const { return {alg, alg->star(c)}; }

bool Element::is_zero() const {
  for (const auto& z : c)
    if (!z.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- factories

namespace {
std::vector<std::vector<std::vector<Complex>>> zero_structure(int n) {
  return std::vector<std::vector<std::vector<Complex>>>(
      n, std::vector<std::vector<Complex>>(n, std::vector<Complex>(n)));
}
}  // namespace

AlgebraPtr make_matrix_algebra(int n, Ring ring) {
  if (n < 1) throw std::invalid_argument("matrix algebra needs n >= 1");
  int dim = n * n;
  auto idx = [n](int r, int s) { return r * n + s; };
  std::vector<std::string> labels(dim);
  auto structure = zero_structure(dim);
  CMat star(dim, dim);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      labels[idx(r, s)] = "E" + std::to_string(r + 1) + std::to_string(s + 1);
      star.at(idx(s, r), idx(r, s)) = Complex(Ordered(1));
      for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
          if (s == t) structure[idx(r, s)][idx(t, u)][idx(r, u)] = Complex(Ordered(1));
    }
  return AlgebraPresentation::create(ring, "matrix(" + std::to_string(n) + ")",
                                     std::move(labels), std::move(structure), std::move(star),
                                     StandardTag{StandardKind::Matrix, n});
}

AlgebraPtr make_function_points(int k, Ring ring) {
  if (k < 1) throw std::invalid_argument("function algebra needs k >= 1");
  std::vector<std::string> labels(k);
  auto structure = zero_structure(k);
  for (int i = 0; i < k; ++i) {
    labels[i] = "d" + std::to_string(i + 1);
    structure[i][i][i] = Complex(Ordered(1));
  }
  return AlgebraPresentation::create(ring, "function_points(" + std::to_string(k) + ")",
                                     std::move(labels), std::move(structure),
                                     CMat::identity(k),
                                     StandardTag{StandardKind::FunctionPoints, k});
}

namespace {
// Sign of merging the ascending generator lists of masks S and T: parity of
// #{(s, t) in S x T : s > t}.
int grassmann_sign(unsigned s_mask, unsigned t_mask, int n) {
  int inversions = 0;
  for (int t = 0; t < n; ++t) {
    if (!(t_mask & (1u << t))) continue;
    for (int s = t + 1; s < n; ++s)
      if (s_mask & (1u << s)) ++inversions;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::string grassmann_label(unsigned mask, int n) {
  if (mask == 0) return "1";
  std::string out;
  for (int b = 0; b < n; ++b)
    if (mask & (1u << b)) {
      if (!out.empty()) out += "^";
      out += "e" + std::to_string(b + 1);
    }
  return out;
}
}  // namespace

AlgebraPtr make_grassmann(int n, Ring ring) {
  if (n < 1 || n > 10) throw std::invalid_argument("grassmann algebra needs 1 <= n <= 10");
  int dim = 1 << n;
  std::vector<std::string> labels(dim);
  auto structure = zero_structure(dim);
  CMat star(dim, dim);
  for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
    labels[s] = grassmann_label(s, n);
    int deg = __builtin_popcount(s);
    int reversal = (deg * (deg - 1) / 2) % 2 == 0 ? 1 : -1;
    star.at(s, s) = Complex(Ordered(reversal));
    for (unsigned t = 0; t < static_cast<unsigned>(dim); ++t) {
      if (s & t) continue;
      structure[s][t][s | t] = Complex(Ordered(grassmann_sign(s, t, n)));
    }
  }
  return AlgebraPresentation::create(ring, "grassmann(" + std::to_string(n) + ")",
                                     std::move(labels), std::move(structure), std::move(star),
                                     StandardTag{StandardKind::Grassmann, n});
}

AlgebraPtr make_zero_mult(int k, Ring ring) {
  if (k < 1) throw std::invalid_argument("zero multiplication algebra needs k >= 1");
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = "z" + std::to_string(i + 1);
  return AlgebraPresentation::create(ring, "zero_mult(" + std::to_string(k) + ")",
                                     std::move(labels), zero_structure(k), CMat::identity(k),
                                     StandardTag{StandardKind::ZeroMult, k});
}

AlgebraPtr make_matrix_over(AlgebraPtr base, int n) {
  if (!base) throw std::invalid_argument("matrix_over needs a base algebra");
  if (n < 1) throw std::invalid_argument("matrix_over needs n >= 1");
  int nb = base->dim();
  int dim = n * n * nb;
  auto idx = [n, nb](int r, int s, int k) { return (r * n + s) * nb + k; };
  std::vector<std::string> labels(dim);
  auto structure = zero_structure(dim);
  CMat star(dim, dim);
  const CMat& sb = base->star_matrix();
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < nb; ++k) {
        labels[idx(r, s, k)] = "E" + std::to_string(r + 1) + std::to_string(s + 1) + ":" +
                               base->labels()[k];
        for (int m = 0; m < nb; ++m)
          if (!sb.at(m, k).is_zero()) star.at(idx(s, r, m), idx(r, s, k)) = sb.at(m, k);
        for (int u = 0; u < n; ++u)
          for (int l = 0; l < nb; ++l) {
            const auto& prod = base->structure(k, l);
            for (int m = 0; m < nb; ++m)
              if (!prod[m].is_zero())
                structure[idx(r, s, k)][idx(s, u, l)][idx(r, u, m)] = prod[m];
          }
      }
  return AlgebraPresentation::create(
      base->ring(), "matrix_over(" + base->name() + ", " + std::to_string(n) + ")",
      std::move(labels), std::move(structure), std::move(star), MatrixOverTag{base, n});
}

AlgebraPtr make_direct_sum(AlgebraPtr a, AlgebraPtr b) {
  if (!a || !b) throw std::invalid_argument("direct_sum needs two algebras");
  if (a->ring() != b->ring())
    throw std::invalid_argument("direct_sum summands must share a ring");
  int na = a->dim(), nb = b->dim(), dim = na + nb;
  std::vector<std::string> labels(dim);
  auto structure = zero_structure(dim);
  CMat star(dim, dim);
  for (int i = 0; i < na; ++i) {
    labels[i] = "l:" + a->labels()[i];
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k) structure[i][j][k] = a->structure(i, j)[k];
    for (int k = 0; k < na; ++k) star.at(k, i) = a->star_matrix().at(k, i);
  }
  for (int i = 0; i < nb; ++i) {
    labels[na + i] = "r:" + b->labels()[i];
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k) structure[na + i][na + j][na + k] = b->structure(i, j)[k];
    for (int k = 0; k < nb; ++k) star.at(na + k, na + i) = b->star_matrix().at(k, i);
  }
  return AlgebraPresentation::create(a->ring(),
                                     "direct_sum(" + a->name() + ", " + b->name() + ")",
                                     std::move(labels), std::move(structure), std::move(star),
                                     DirectSumTag{a, b});
}

QuotientResult quotient_by_star_ideal(AlgebraPtr a, const CMat& ideal_rows) {
  if (!a) throw std::invalid_argument("quotient needs an algebra");
  int n = a->dim();
  if (ideal_rows.rows() > 0 && ideal_rows.cols() != n)
    throw std::invalid_argument("ideal rows have wrong width");
  CMat ideal = row_space(ideal_rows.rows() ? ideal_rows : CMat(0, n));
  for (int r = 0; r < ideal.rows(); ++r) {
    auto v = ideal.row(r);
    if (!in_row_space(a->star(v), ideal))
      throw std::invalid_argument("span is not star-closed");
    for (int i = 0; i < n; ++i) {
      if (!in_row_space(a->multiply(a->basis_vector(i), v), ideal) ||
          !in_row_space(a->multiply(v, a->basis_vector(i)), ideal))
        throw std::invalid_argument("span is not a two-sided ideal");
    }
  }
  std::vector<int> pivots = pivot_columns(ideal);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  int m = static_cast<int>(free.size());

  CMat lift(m, n), proj(m, n);
  for (int t = 0; t < m; ++t) {
    lift.at(t, free[t]) = Complex(Ordered(1));
    proj.at(t, free[t]) = Complex(Ordered(1));
    for (size_t k = 0; k < pivots.size(); ++k)
      proj.at(t, pivots[k]) = -ideal.at(static_cast<int>(k), free[t]);
  }

  auto structure = zero_structure(m);
  std::vector<std::string> labels(m);
  CMat star(m, m);
  for (int i = 0; i < m; ++i) {
    labels[i] = a->labels()[free[i]] + "~";
    auto si = proj.apply(a->star(lift.row(i)));
    for (int k = 0; k < m; ++k) star.at(k, i) = si[k];
    for (int j = 0; j < m; ++j) {
      auto prod = proj.apply(a->multiply(lift.row(i), lift.row(j)));
      structure[i][j] = prod;
    }
  }
  std::string name = a->name() + "/(dim " + std::to_string(ideal.rows()) + ")";
  AlgebraPtr q = AlgebraPresentation::create(a->ring(), std::move(name), std::move(labels),
                                             std::move(structure), std::move(star),
                                             QuotientTag{a, ideal, lift, proj});
  return QuotientResult{q, proj, lift};
}

bool same_presentation(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->ring() != b->ring() || a->dim() != b->dim()) return false;
  if (a->star_matrix() != b->star_matrix()) return false;
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j)
      if (a->structure(i, j) != b->structure(i, j)) return false;
  return true;
}

}  // namespace starkit
