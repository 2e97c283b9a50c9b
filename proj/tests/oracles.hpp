#pragma once

// Independent reference implementations used to cross-check library results.
// Everything here is deliberately naive: cofactor determinants, principal
// minors, characteristic coefficients, and direct certificate re-evaluation.

#include <vector>

#include "starkit/positivity.hpp"

namespace oracles {

using starkit::CMat;
using starkit::Complex;
using starkit::Ordered;

inline Complex det_cofactor(const CMat& m) {
  int n = m.rows();
  if (n == 0) return Complex(1);
  if (n == 1) return m.at(0, 0);
  Complex acc(0);
  int sign = 1;
  for (int j = 0; j < n; ++j) {
    CMat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Complex term = m.at(0, j) * det_cofactor(minor);
    acc = sign > 0 ? acc + term : acc - term;
    sign = -sign;
  }
  return acc;
}

inline CMat principal_submatrix(const CMat& g, const std::vector<int>& idx) {
  CMat s(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b)
      s.at(static_cast<int>(a), static_cast<int>(b)) = g.at(idx[a], idx[b]);
  return s;
}

/// All principal minors of a Hermitian matrix, as exact real values, grouped
/// by subset size (index 0 holds the 1x1 minors).
inline std::vector<std::vector<Ordered>> principal_minors(const CMat& g) {
  int n = g.rows();
  std::vector<std::vector<Ordered>> by_size(n);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) idx.push_back(k);
    Complex d = det_cofactor(principal_submatrix(g, idx));
    if (!d.is_real()) throw std::logic_error("principal minor of a Hermitian matrix not real");
    by_size[idx.size() - 1].push_back(d.re());
  }
  return by_size;
}

/// Hermitian PSD via the minor sign test: PSD iff every principal minor is
/// nonnegative; PD iff additionally det > 0 (all eigenvalues positive).
inline starkit::PsdStatus minors_sign_status(const std::vector<std::vector<Ordered>>& minors) {
  for (const auto& level : minors)
    for (const auto& d : level)
      if (d.sign() < 0) return starkit::PsdStatus::Indefinite;
  const Ordered& det = minors.back().front();
  return det.sign() > 0 ? starkit::PsdStatus::PositiveDefinite
                        : starkit::PsdStatus::PositiveSemidefinite;
}

inline starkit::PsdStatus psd_by_principal_minors(const CMat& g) {
  return minors_sign_status(principal_minors(g));
}

/// The same verdict through the characteristic coefficients: with
/// char(t) = t^n - e1 t^(n-1) + e2 t^(n-2) - ..., a Hermitian matrix is PSD
/// iff every e_k >= 0.
inline starkit::PsdStatus char_coefficient_status(
    const std::vector<std::vector<Ordered>>& minors) {
  for (const auto& level : minors) {
    Ordered e(0);
    for (const auto& d : level) e = e + d;
    if (e.sign() < 0) return starkit::PsdStatus::Indefinite;
  }
  Ordered det(0);
  for (const auto& d : minors.back()) det = det + d;
  return det.sign() > 0 ? starkit::PsdStatus::PositiveDefinite
                        : starkit::PsdStatus::PositiveSemidefinite;
}

inline starkit::PsdStatus psd_by_char_coefficients(const CMat& g) {
  return char_coefficient_status(principal_minors(g));
}

inline Ordered hermitian_value(const CMat& g, const std::vector<Complex>& v) {
  Complex acc(0);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) acc = acc + v[i].conj() * g.at(i, j) * v[j];
  if (!acc.is_real()) throw std::logic_error("Hermitian form value not real");
  return acc.re();
}

/// Re-verify a PSD verdict certificate by direct evaluation: the pivot
/// decomposition must rebuild the matrix, radical rows must be annihilated,
/// and an indefinite witness must actually evaluate negative.
inline bool certificate_ok(const CMat& g, const starkit::PsdVerdict& v) {
  using starkit::PsdStatus;
  if (v.status == PsdStatus::Indefinite) {
    if (static_cast<int>(v.witness.size()) != g.rows()) return false;
    Ordered got = hermitian_value(g, v.witness);
    return got == v.witness_value && got.sign() < 0;
  }
  CMat rebuilt(g.rows(), g.cols());
  if (v.pivots.size() != v.pivot_rows.size()) return false;
  for (size_t k = 0; k < v.pivots.size(); ++k) {
    if (v.pivots[k].sign() <= 0) return false;
    const auto& u = v.pivot_rows[k];
    if (static_cast<int>(u.size()) != g.cols()) return false;
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j)
        rebuilt.at(i, j) = rebuilt.at(i, j) + Complex(v.pivots[k]) * u[i].conj() * u[j];
  }
  if (rebuilt != g) return false;
  if (v.status == PsdStatus::PositiveDefinite) {
    if (v.radical.rows() != 0) return false;
    if (static_cast<int>(v.pivots.size()) != g.rows()) return false;
  } else {
    if (v.radical.rows() == 0) return false;
    for (int r = 0; r < v.radical.rows(); ++r) {
      auto img = g.apply(v.radical.row(r));
      for (const auto& z : img)
        if (!z.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace oracles
