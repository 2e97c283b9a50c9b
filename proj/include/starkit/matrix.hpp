#pragma once

// Dense exact matrices over the scalar tower, with reduced row echelon form,
// nullspaces, linear solves and canonical row-space representations.  All
// elimination uses leftmost-pivot / first-nonzero-row tie-breaking so that
// every canonical form is deterministic.  Subspaces are always carried as the
// RREF of a row basis; two subspaces are equal iff their canonical matrices
// are identical.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "starkit/scalar.hpp"

namespace starkit {

inline Ordered scalar_conj(const Ordered& x) { return x; }
inline Complex scalar_conj(const Complex& z) { return z.conj(); }

template <class S>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int k = 0; k < n; ++k) m.at(k, k) = S(1);
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<S>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Mat m(r, c);
    for (int k = 0; k < r; ++k) {
      if (static_cast<int>(rows[k].size()) != c)
        throw std::invalid_argument("ragged row list");
      for (int j = 0; j < c; ++j) m.at(k, j) = rows[k][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const S& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  std::vector<S> row(int r) const {
    std::vector<S> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(r, j);
    return out;
  }

  std::vector<S> col(int c) const {
    std::vector<S> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
  }

  void set_row(int r, const std::vector<S>& v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row size mismatch");
    for (int j = 0; j < cols_; ++j) at(r, j) = v[j];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }

  Mat operator-() const {
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const S& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + x * o.at(k, j);
      }
    return r;
  }

  Mat scaled(const S& c) const {
    Mat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply size mismatch");
    std::vector<S> out(rows_, S(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) out[i] = out[i] + at(i, j) * v[j];
    return out;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
      out << "[";
      for (int j = 0; j < cols_; ++j) out << (j ? ", " : "") << at(i, j).str();
      out << "]";
      if (i + 1 < rows_) out << "\n";
    }
    return out.str();
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> a_;
};

using CMat = Mat<Complex>;
using RMat = Mat<Ordered>;

inline CMat dagger(const CMat& m) {
  CMat r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(j, i) = m.at(i, j).conj();
  return r;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack width mismatch");
  Mat<S> r(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

template <class S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack height mismatch");
  Mat<S> r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

/// In-place reduced row echelon form; returns the pivot column indices in
/// order.  Pivot choice: columns left to right, first remaining row with a
/// nonzero entry.
template <class S>
std::vector<int> rref(Mat<S>& m) {
  std::vector<int> pivots;
  int cur = 0;
  for (int col = 0; col < m.cols() && cur < m.rows(); ++col) {
    int sel = -1;
    for (int r = cur; r < m.rows(); ++r)
      if (!m.at(r, col).is_zero()) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != cur)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(cur, j));
    S inv = S(1) / m.at(cur, col);
    for (int j = 0; j < m.cols(); ++j) m.at(cur, j) = m.at(cur, j) * inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == cur || m.at(r, col).is_zero()) continue;
      S f = m.at(r, col);
      for (int j = 0; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) - f * m.at(cur, j);
    }
    pivots.push_back(col);
    ++cur;
  }
  return pivots;
}

template <class S>
int rank(Mat<S> m) {
  return static_cast<int>(rref(m).size());
}

/// Canonical row-space basis: RREF with zero rows dropped.
template <class S>
Mat<S> row_space(const Mat<S>& m) {
  Mat<S> r = m;
  std::vector<int> p = rref(r);
  Mat<S> out(static_cast<int>(p.size()), m.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = r.at(i, j);
  return out;
}

/// Basis (as canonical rows) of {x : m x = 0}, x a column vector of length
/// m.cols().
template <class S>
Mat<S> nullspace(const Mat<S>& m) {
  Mat<S> r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> x(m.cols(), S(0));
    x[f] = S(1);
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r.at(static_cast<int>(k), f);
    basis.push_back(std::move(x));
  }
  if (basis.empty()) return Mat<S>(0, m.cols());
  return row_space(Mat<S>::from_rows(basis));
}

/// Reduce v against a canonical (RREF) row basis; the residual is zero iff
/// v lies in the row space.
template <class S>
std::vector<S> reduce_against(std::vector<S> v, const Mat<S>& basis,
                              const std::vector<int>& pivots) {
  for (size_t k = 0; k < pivots.size(); ++k) {
    const S& c = v[pivots[k]];
    if (c.is_zero()) continue;
    S f = c;
    for (int j = 0; j < basis.cols(); ++j)
      v[j] = v[j] - f * basis.at(static_cast<int>(k), j);
  }
  return v;
}

template <class S>
std::vector<int> pivot_columns(const Mat<S>& canonical_basis) {
  std::vector<int> p;
  for (int i = 0; i < canonical_basis.rows(); ++i)
    for (int j = 0; j < canonical_basis.cols(); ++j)
      if (!canonical_basis.at(i, j).is_zero()) {
        p.push_back(j);
        break;
      }
  return p;
}

template <class S>
bool in_row_space(const std::vector<S>& v, const Mat<S>& canonical_basis) {
  std::vector<S> res =
      reduce_against(v, canonical_basis, pivot_columns(canonical_basis));
  for (const auto& x : res)
    if (!x.is_zero()) return false;
  return true;
}

template <class S>
bool row_space_contains(const Mat<S>& inner, const Mat<S>& outer_canonical) {
  for (int i = 0; i < inner.rows(); ++i)
    if (!in_row_space(inner.row(i), outer_canonical)) return false;
  return true;
}

/// One solution of m x = b, or nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Mat<S>& m, const std::vector<S>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("rhs size mismatch");
  Mat<S> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<S> x(m.cols(), S(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(static_cast<int>(k), m.cols());
  return x;
}

/// Full solution set of m x = b: a particular solution plus a canonical
/// nullspace basis.
template <class S>
struct AffineSolution {
  std::vector<S> particular;
  Mat<S> kernel;
};

template <class S>
std::optional<AffineSolution<S>> solve_affine(const Mat<S>& m, const std::vector<S>& b) {
  auto x = solve(m, b);
  if (!x) return std::nullopt;
  return AffineSolution<S>{*x, nullspace(m)};
}

/// Deterministic complement of a canonical row space inside C^ambient: proj
/// maps a vector to its coordinates along the non-pivot standard basis
/// vectors (reduction against the RREF rows), lift embeds those coordinates
/// back as coset representatives.
template <class S>
struct Complement {
  Mat<S> proj;  // m x ambient
  Mat<S> lift;  // m x ambient, rows are representatives
  std::vector<int> free_cols;
};

template <class S>
Complement<S> complement_of(const Mat<S>& canonical_rows, int ambient) {
  std::vector<int> pivots = pivot_columns(canonical_rows);
  std::vector<bool> is_pivot(ambient, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < ambient; ++j)
    if (!is_pivot[j]) free.push_back(j);
  int m = static_cast<int>(free.size());
  Complement<S> out;
  out.proj = Mat<S>(m, ambient);
  out.lift = Mat<S>(m, ambient);
  out.free_cols = free;
  for (int t = 0; t < m; ++t) {
    out.lift.at(t, free[t]) = S(1);
    out.proj.at(t, free[t]) = S(1);
    for (size_t k = 0; k < pivots.size(); ++k)
      out.proj.at(t, pivots[k]) = -canonical_rows.at(static_cast<int>(k), free[t]);
  }
  return out;
}

/// Row spaces: sum and intersection (both canonical).  The intersection uses
/// rowspace(A) = {x : N_A x = 0} with N_A = nullspace(A) under the plain
/// (non-conjugated) bilinear form, which is valid over a field.
template <class S>
Mat<S> sum_row_spaces(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() == 0) return row_space(b);
  if (b.rows() == 0) return row_space(a);
  return row_space(vstack(a, b));
}

template <class S>
Mat<S> intersect_row_spaces(const Mat<S>& a, const Mat<S>& b, int ambient_cols) {
  Mat<S> na = nullspace(a.rows() ? a : Mat<S>(0, ambient_cols));
  Mat<S> nb = nullspace(b.rows() ? b : Mat<S>(0, ambient_cols));
  return nullspace(vstack(na, nb));
}

}  // namespace starkit
