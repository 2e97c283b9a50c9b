#include "starkit/morita.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace starkit {

namespace {

CMat conj_mat(const CMat& m) { return dagger(m).transposed(); }

// v^dagger G v for a column vector v.
Complex quad_form(const CMat& g, const std::vector<Complex>& v) {
  std::vector<Complex> gv = g.apply(v);
  Complex s;
  for (size_t k = 0; k < v.size(); ++k) s = s + v[k].conj() * gv[k];
  return s;
}

// Sum of coeff[k] * mats[k].
CMat combine(const std::vector<CMat>& mats, const std::vector<Complex>& coeff) {
  CMat out(mats.empty() ? 0 : mats[0].rows(), mats.empty() ? 0 : mats[0].cols());
  for (size_t k = 0; k < mats.size(); ++k)
    if (!coeff[k].is_zero()) out = out + mats[k].scaled(coeff[k]);
  return out;
}

bool vec_zero(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) { return z.is_zero(); });
}

// Coefficients of v against a canonical RREF basis; throws when v is outside
// the span (all call sites pass vectors that lie inside by construction).
std::vector<Complex> express(const std::vector<Complex>& v, const CMat& basis,
                             const std::vector<int>& pivots, const char* what) {
  std::vector<Complex> c(basis.rows());
  for (int t = 0; t < basis.rows(); ++t) c[t] = v[pivots[t]];
  std::vector<Complex> residual = v;
  for (int t = 0; t < basis.rows(); ++t)
    for (int j = 0; j < basis.cols(); ++j)
      residual[j] = residual[j] - c[t] * basis.at(t, j);
  if (!vec_zero(residual)) throw std::logic_error(std::string(what) + " left its span");
  return c;
}

bool table_shape_ok(const ElementTable& t, int d, int alg_dim) {
  if (static_cast<int>(t.size()) != d) return false;
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != d) return false;
    for (const auto& e : row)
      if (static_cast<int>(e.size()) != alg_dim) return false;
  }
  return true;
}

}  // namespace

ValidationReport validate_bimodule(const InnerProductBimodule& x) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& axiom, const std::string& detail) {
    rep.violations.push_back({axiom, detail});
  };

  const AlgebraPtr& B = x.left_alg;
  const AlgebraPtr& A = x.right_alg;
  if (!B || !A) {
    fail("shape", "bimodule is missing an algebra");
    return rep;
  }
  if (B->ring() != A->ring())
    fail("ring", "left and right algebras live over different scalar rings");
  const int d = x.dim, nb = B->dim(), na = A->dim();
  bool shapes = static_cast<int>(x.left_act.size()) == nb &&
                static_cast<int>(x.right_act.size()) == na;
  for (const CMat& m : x.left_act) shapes = shapes && m.rows() == d && m.cols() == d;
  for (const CMat& m : x.right_act) shapes = shapes && m.rows() == d && m.cols() == d;
  shapes = shapes && table_shape_ok(x.iprod_a, d, na);
  if (x.iprod_b) shapes = shapes && table_shape_ok(*x.iprod_b, d, nb);
  if (!shapes) {
    fail("shape", "action or inner-product tables do not match the declared dimensions");
    return rep;
  }

  // b -> L(b) is multiplicative, a -> R(a) reverses products (x acted on the
  // right), and the two actions commute.
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      CMat lhs = combine(x.left_act, B->structure(i, j));
      CMat rhs = x.left_act[i] * x.left_act[j];
      if (lhs != rhs)
        fail("left action", "L(" + B->labels()[i] + " " + B->labels()[j] +
                                ") != L(" + B->labels()[i] + ") L(" + B->labels()[j] + ")");
    }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      CMat lhs = combine(x.right_act, A->structure(i, j));
      CMat rhs = x.right_act[j] * x.right_act[i];
      if (lhs != rhs)
        fail("right action", "R(" + A->labels()[i] + " " + A->labels()[j] +
                                 ") != R(" + A->labels()[j] + ") R(" + A->labels()[i] + ")");
    }
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < na; ++j)
      if (x.left_act[i] * x.right_act[j] != x.right_act[j] * x.left_act[i])
        fail("commuting actions",
             "L(" + B->labels()[i] + ") and R(" + A->labels()[j] + ") do not commute");
  if (B->has_unit() && combine(x.left_act, B->unit()) != CMat::identity(d))
    fail("unital left action", "L(1) != id");
  if (A->has_unit() && combine(x.right_act, A->unit()) != CMat::identity(d))
    fail("unital right action", "R(1) != id");

  // <x,y>_A: Hermitian symmetry, A-linearity in the second slot, and the
  // left action adjointable against it.
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      if (A->star(x.iprod_a[u][v]) != x.iprod_a[v][u])
        fail("A-product symmetry", "<x" + std::to_string(u) + ",x" + std::to_string(v) +
                                       ">* != <x" + std::to_string(v) + ",x" +
                                       std::to_string(u) + ">");
      for (int j = 0; j < na; ++j) {
        std::vector<Complex> lhs(na);
        for (int w = 0; w < d; ++w) {
          const Complex& c = x.right_act[j].at(w, v);
          if (c.is_zero()) continue;
          for (int k = 0; k < na; ++k) lhs[k] = lhs[k] + c * x.iprod_a[u][w][k];
        }
        std::vector<Complex> rhs = A->multiply(x.iprod_a[u][v], A->basis_vector(j));
        if (lhs != rhs)
          fail("A-linearity", "<x" + std::to_string(u) + ", x" + std::to_string(v) + " . " +
                                  A->labels()[j] + "> != <x" + std::to_string(u) + ",x" +
                                  std::to_string(v) + "> " + A->labels()[j]);
      }
      for (int i = 0; i < nb; ++i) {
        std::vector<Complex> lhs(na);  // <b.x_u, x_v>, first slot conjugated
        for (int w = 0; w < d; ++w) {
          Complex c = x.left_act[i].at(w, u).conj();
          if (c.is_zero()) continue;
          for (int k = 0; k < na; ++k) lhs[k] = lhs[k] + c * x.iprod_a[w][v][k];
        }
        std::vector<Complex> star_b = B->star(B->basis_vector(i));
        std::vector<Complex> rhs(na);  // <x_u, b* . x_v>
        for (int w = 0; w < d; ++w) {
          Complex c;
          for (int k = 0; k < nb; ++k) c = c + star_b[k] * x.left_act[k].at(w, v);
          if (c.is_zero()) continue;
          for (int k = 0; k < na; ++k) rhs[k] = rhs[k] + c * x.iprod_a[u][w][k];
        }
        if (lhs != rhs)
          fail("left-action compatibility", "<" + B->labels()[i] + ".x" + std::to_string(u) +
                                                ", x" + std::to_string(v) + ">_A != <x" +
                                                std::to_string(u) + ", " + B->labels()[i] +
                                                "*.x" + std::to_string(v) + ">_A");
      }
    }

  if (x.iprod_b) {
    const ElementTable& tb = *x.iprod_b;
    for (int u = 0; u < d; ++u)
      for (int v = 0; v < d; ++v) {
        if (B->star(tb[u][v]) != tb[v][u])
          fail("B-product symmetry", "<x" + std::to_string(u) + ",x" + std::to_string(v) +
                                         ">_B* != <x" + std::to_string(v) + ",x" +
                                         std::to_string(u) + ">_B");
        // Linear in the first slot: <b.x_u, x_v>_B = b <x_u, x_v>_B.
        for (int i = 0; i < nb; ++i) {
          std::vector<Complex> lhs(nb);
          for (int w = 0; w < d; ++w) {
            const Complex& c = x.left_act[i].at(w, u);
            if (c.is_zero()) continue;
            for (int k = 0; k < nb; ++k) lhs[k] = lhs[k] + c * tb[w][v][k];
          }
          std::vector<Complex> rhs = B->multiply(B->basis_vector(i), tb[u][v]);
          if (lhs != rhs)
            fail("B-linearity", B->labels()[i] + " <x" + std::to_string(u) + ",x" +
                                    std::to_string(v) + ">_B mismatch");
        }
        // Right action adjointable: <x_u . a, x_v>_B = <x_u, x_v . a*>_B.
        for (int j = 0; j < na; ++j) {
          std::vector<Complex> lhs(nb);
          for (int w = 0; w < d; ++w) {
            const Complex& c = x.right_act[j].at(w, u);
            if (c.is_zero()) continue;
            for (int k = 0; k < nb; ++k) lhs[k] = lhs[k] + c * tb[w][v][k];
          }
          std::vector<Complex> star_a = A->star(A->basis_vector(j));
          std::vector<Complex> rhs(nb);  // second slot is conjugate-linear
          for (int w = 0; w < d; ++w) {
            Complex c;
            for (int k = 0; k < na; ++k) c = c + star_a[k] * x.right_act[k].at(w, v);
            c = c.conj();
            if (c.is_zero()) continue;
            for (int k = 0; k < nb; ++k) rhs[k] = rhs[k] + c * tb[u][w][k];
          }
          if (lhs != rhs)
            fail("right-action compatibility", "<x" + std::to_string(u) + "." +
                                                   A->labels()[j] + ", x" + std::to_string(v) +
                                                   ">_B mismatch");
        }
        // <x_u, x_v>_B . x_w = x_u . <x_v, x_w>_A.
        for (int w = 0; w < d; ++w) {
          std::vector<Complex> lhs = combine(x.left_act, tb[u][v]).col(w);
          std::vector<Complex> rhs = combine(x.right_act, x.iprod_a[v][w]).col(u);
          if (lhs != rhs)
            fail("product compatibility",
                 "<x" + std::to_string(u) + ",x" + std::to_string(v) + ">_B . x" +
                     std::to_string(w) + " != x" + std::to_string(u) + " . <x" +
                     std::to_string(v) + ",x" + std::to_string(w) + ">_A");
        }
      }
  }
  return rep;
}

InnerProductBimodule projection_bimodule(const AlgebraPtr& base, int n,
                                         const std::vector<Complex>& q_coords,
                                         const std::string& name) {
  if (n <= 0) throw std::invalid_argument("matrix size must be positive");
  AlgebraPtr ambient = make_matrix_over(base, n);
  const int nbb = base->dim(), namb = ambient->dim();
  if (static_cast<int>(q_coords.size()) != namb)
    throw std::invalid_argument("projection has " + std::to_string(q_coords.size()) +
                                " coordinates, ambient dimension is " + std::to_string(namb));
  if (vec_zero(q_coords)) throw std::invalid_argument("projection is zero");
  if (ambient->multiply(q_coords, q_coords) != q_coords)
    throw std::invalid_argument("projection is not idempotent: Q^2 != Q");
  if (ambient->star(q_coords) != q_coords)
    throw std::invalid_argument("projection is not Hermitian: Q* != Q");

  // Entry (r,s) of Q as a base-algebra element.
  auto q_block = [&](int r, int s) {
    std::vector<Complex> e(nbb);
    for (int m = 0; m < nbb; ++m) e[m] = q_coords[(r * n + s) * nbb + m];
    return e;
  };

  // X = Q . base^n inside base^n; coordinates of base^n are n blocks of nbb.
  const int amb_x = n * nbb;
  std::vector<std::vector<Complex>> xrows;
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < nbb; ++k) {
      std::vector<Complex> w(amb_x);
      for (int t = 0; t < n; ++t) {
        std::vector<Complex> p = base->multiply(q_block(t, r), base->basis_vector(k));
        for (int m = 0; m < nbb; ++m) w[t * nbb + m] = w[t * nbb + m] + p[m];
      }
      xrows.push_back(std::move(w));
    }
  CMat xbasis = row_space(CMat::from_rows(xrows));
  const int d = xbasis.rows();
  std::vector<int> xpiv = pivot_columns(xbasis);

  auto x_entry = [&](int u, int t) {
    std::vector<Complex> e(nbb);
    for (int m = 0; m < nbb; ++m) e[m] = xbasis.at(u, t * nbb + m);
    return e;
  };

  // Left algebra: the compression Q M_n(base) Q on its own basis.
  std::vector<std::vector<Complex>> brows;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < nbb; ++k) {
        std::vector<Complex> e(namb);
        e[(r * n + s) * nbb + k] = Complex(1);
        brows.push_back(ambient->multiply(ambient->multiply(q_coords, e), q_coords));
      }
  CMat bbasis = row_space(CMat::from_rows(brows));
  const int db = bbasis.rows();
  std::vector<int> bpiv = pivot_columns(bbasis);
  auto express_b = [&](const std::vector<Complex>& v) {
    return express(v, bbasis, bpiv, "compression product");
  };

  std::vector<std::vector<std::vector<Complex>>> bstruct(
      db, std::vector<std::vector<Complex>>(db));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      bstruct[i][j] = express_b(ambient->multiply(bbasis.row(i), bbasis.row(j)));
  CMat bstar(db, db);
  for (int i = 0; i < db; ++i) {
    std::vector<Complex> c = express_b(ambient->star(bbasis.row(i)));
    for (int t = 0; t < db; ++t) bstar.at(t, i) = c[t];
  }
  std::vector<std::string> blabels(db);
  for (int i = 0; i < db; ++i) blabels[i] = "p" + std::to_string(i + 1);
  AlgebraPtr balg = AlgebraPresentation::create(
      base->ring(), "Q(" + ambient->name() + ")Q", std::move(blabels), std::move(bstruct),
      std::move(bstar), CompressionTag{base, n, ambient, bbasis, q_coords});

  InnerProductBimodule x;
  x.name = name;
  x.left_alg = balg;
  x.right_alg = base;
  x.dim = d;

  // Right action: componentwise right multiplication by the base element.
  for (int j = 0; j < nbb; ++j) {
    CMat rj(d, d);
    for (int u = 0; u < d; ++u) {
      std::vector<Complex> w(amb_x);
      for (int t = 0; t < n; ++t) {
        std::vector<Complex> p = base->multiply(x_entry(u, t), base->basis_vector(j));
        for (int m = 0; m < nbb; ++m) w[t * nbb + m] = p[m];
      }
      std::vector<Complex> c = express(w, xbasis, xpiv, "right action");
      for (int t = 0; t < d; ++t) rj.at(t, u) = c[t];
    }
    x.right_act.push_back(std::move(rj));
  }

  // Left action: matrix-times-column with entries multiplied in the base.
  for (int i = 0; i < db; ++i) {
    auto b_block = [&](int t, int s) {
      std::vector<Complex> e(nbb);
      for (int m = 0; m < nbb; ++m) e[m] = bbasis.at(i, (t * n + s) * nbb + m);
      return e;
    };
    CMat li(d, d);
    for (int u = 0; u < d; ++u) {
      std::vector<Complex> w(amb_x);
      for (int t = 0; t < n; ++t)
        for (int s = 0; s < n; ++s) {
          std::vector<Complex> p = base->multiply(b_block(t, s), x_entry(u, s));
          for (int m = 0; m < nbb; ++m) w[t * nbb + m] = w[t * nbb + m] + p[m];
        }
      std::vector<Complex> c = express(w, xbasis, xpiv, "left action");
      for (int t = 0; t < d; ++t) li.at(t, u) = c[t];
    }
    x.left_act.push_back(std::move(li));
  }

  // <x,y>_base = sum_t x_t^* y_t;   <x,y>_B = the matrix (x_t y_s^*), which
  // lands back in the compression.
  x.iprod_a.assign(d, std::vector<std::vector<Complex>>(d));
  ElementTable tb(d, std::vector<std::vector<Complex>>(d));
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      std::vector<Complex> s(nbb);
      for (int t = 0; t < n; ++t) {
        std::vector<Complex> p = base->multiply(base->star(x_entry(u, t)), x_entry(v, t));
        for (int m = 0; m < nbb; ++m) s[m] = s[m] + p[m];
      }
      x.iprod_a[u][v] = std::move(s);

      std::vector<Complex> amb(namb);
      for (int t = 0; t < n; ++t)
        for (int s2 = 0; s2 < n; ++s2) {
          std::vector<Complex> p = base->multiply(x_entry(u, t), base->star(x_entry(v, s2)));
          for (int m = 0; m < nbb; ++m) amb[(t * n + s2) * nbb + m] = p[m];
        }
      tb[u][v] = express_b(amb);
    }
  x.iprod_b = std::move(tb);

  x.structural_p = true;
  const auto* st = std::get_if<StandardTag>(&base->provenance());
  x.structural_q = st && (st->kind == StandardKind::FunctionPoints ||
                          (st->kind == StandardKind::Matrix && st->n == 1));
  return x;
}

InnerProductBimodule std_bimodule(int n, Ring ring, const std::string& name) {
  AlgebraPtr scalars = make_matrix_algebra(1, ring);
  AlgebraPtr ambient = make_matrix_over(scalars, n);
  return projection_bimodule(scalars, n, ambient->unit(), name);
}

InnerProductBimodule conjugate_bimodule(const InnerProductBimodule& x) {
  if (!x.iprod_b)
    throw std::invalid_argument("conjugate bimodule needs the B-valued inner product");
  InnerProductBimodule c;
  c.name = x.name + "~";
  c.left_alg = x.right_alg;
  c.right_alg = x.left_alg;
  c.dim = x.dim;

  // Coordinates of the conjugate are the conjugated coordinates of x; the old
  // algebras act through their stars, matrices conjugated entrywise.
  const int na = x.right_alg->dim(), nb = x.left_alg->dim();
  for (int j = 0; j < na; ++j) {
    std::vector<Complex> s = x.right_alg->star(x.right_alg->basis_vector(j));
    c.left_act.push_back(conj_mat(combine(x.right_act, s)));
  }
  for (int i = 0; i < nb; ++i) {
    std::vector<Complex> s = x.left_alg->star(x.left_alg->basis_vector(i));
    c.right_act.push_back(conj_mat(combine(x.left_act, s)));
  }
  c.iprod_a = *x.iprod_b;
  c.iprod_b = x.iprod_a;
  c.structural_p = x.structural_q;
  c.structural_q = x.structural_p;
  return c;
}

namespace {

CMat iprod_span(const ElementTable& t, int alg_dim) {
  std::vector<std::vector<Complex>> rows;
  for (const auto& r : t)
    for (const auto& e : r) rows.push_back(e);
  if (rows.empty()) return CMat(0, alg_dim);
  return row_space(CMat::from_rows(rows));
}

}  // namespace

bool is_full_over_right(const InnerProductBimodule& x) {
  return iprod_span(x.iprod_a, x.right_alg->dim()).rows() == x.right_alg->dim();
}

bool is_full_over_left(const InnerProductBimodule& x) {
  if (!x.iprod_b) return false;
  return iprod_span(*x.iprod_b, x.left_alg->dim()).rows() == x.left_alg->dim();
}

InducedResult rieffel_induce(const InnerProductBimodule& x, const Representation& pi) {
  if (!same_presentation(pi.algebra(), x.right_alg))
    throw std::invalid_argument("representation acts on " + pi.algebra()->name() +
                                ", not on the bimodule's right algebra " +
                                x.right_alg->name());
  const int d = x.dim, m = pi.space_dim(), F = d * m;
  const int na = x.right_alg->dim(), nb = x.left_alg->dim();

  // Free pairing on X (x) H: block (u,v) is G_H pi(<x_u, x_v>_A).
  CMat gfree(F, F);
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      CMat blk = pi.gram() * pi.represent(x.iprod_a[u][v]);
      for (int w = 0; w < m; ++w)
        for (int z = 0; z < m; ++z) gfree.at(u * m + w, v * m + z) = blk.at(w, z);
    }
  if (dagger(gfree) != gfree)
    throw std::invalid_argument(
        "free pairing is not Hermitian; the representation is not adjointable "
        "against the inner product");

  // Balancing relations x.a (x) phi - x (x) pi(a) phi.  They pair to zero
  // with everything, so they sit in the kernel of the free form.
  std::vector<std::vector<Complex>> bal;
  for (int u = 0; u < d; ++u)
    for (int j = 0; j < na; ++j)
      for (int w = 0; w < m; ++w) {
        std::vector<Complex> r(F);
        for (int t = 0; t < d; ++t) r[t * m + w] = r[t * m + w] + x.right_act[j].at(t, u);
        for (int z = 0; z < m; ++z)
          r[u * m + z] = r[u * m + z] - pi.action(j).at(z, w);
        bal.push_back(std::move(r));
      }
  CMat bal_rows = bal.empty() ? CMat(0, F) : row_space(CMat::from_rows(bal));
  for (int i = 0; i < bal_rows.rows(); ++i)
    if (!vec_zero(gfree.apply(bal_rows.row(i))))
      throw std::logic_error("a balancing relation escapes the kernel of the free pairing");

  Complement<Complex> c1 = complement_of(bal_rows, F);
  CMat m1 = c1.lift.transposed();  // F x q1, columns are coset representatives
  CMat g1 = dagger(m1) * gfree * m1;

  InducedResult out;
  PsdVerdict verdict = psd_check(g1);
  if (verdict.status == PsdStatus::Indefinite) {
    std::vector<Complex> w = m1.apply(verdict.witness);
    Complex direct = quad_form(gfree, w);
    if (!direct.is_real() || !(direct.re() == verdict.witness_value))
      throw std::logic_error("induced-form witness failed re-verification");
    out.positive = false;
    out.witness = std::move(w);
    out.witness_value = verdict.witness_value;
    out.note = "induced pairing is indefinite on " + pi.name() +
               "; witness value " + verdict.witness_value.str();
    return out;
  }

  Complement<Complex> c2 = complement_of(verdict.radical, g1.rows());
  CMat mc = m1 * c2.lift.transposed();  // F x q2
  CMat pc = c2.proj * c1.proj;          // q2 x F
  CMat g2 = dagger(mc) * gfree * mc;

  std::vector<CMat> acts;
  for (int i = 0; i < nb; ++i) {
    CMat fa(F, F);
    for (int t = 0; t < d; ++t)
      for (int u = 0; u < d; ++u) {
        const Complex& c = x.left_act[i].at(t, u);
        if (c.is_zero()) continue;
        for (int w = 0; w < m; ++w) fa.at(t * m + w, u * m + w) = c;
      }
    acts.push_back(pc * fa * mc);
  }

  Representation rep = Representation::create(x.left_alg, g2, std::move(acts),
                                              "R[" + x.name + "](" + pi.name() + ")");
  ValidationReport check = rep.validate();
  if (!check.ok())
    throw std::logic_error("induced representation failed validation:\n" + check.str());

  out.positive = true;
  out.rep = std::move(rep);
  out.note = "free dimension " + std::to_string(F) + ", balanced " +
             std::to_string(g1.rows()) + ", carrier " + std::to_string(g2.rows());
  return out;
}

StarIdeal phi_map(const InnerProductBimodule& x, const StarIdeal& ideal) {
  if (!same_presentation(ideal.algebra(), x.right_alg))
    throw std::invalid_argument("ideal lives in " + ideal.algebra()->name() +
                                ", not in the bimodule's right algebra");
  const int d = x.dim, na = x.right_alg->dim(), nb = x.left_alg->dim();
  CMat cond = nullspace(ideal.basis());  // I = {a : cond a = 0}

  std::vector<std::vector<Complex>> rows;
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      // c_i = <x_u, b_i . x_v>_A as a function of the B-basis index i.
      std::vector<std::vector<Complex>> c(nb, std::vector<Complex>(na));
      for (int i = 0; i < nb; ++i)
        for (int w = 0; w < d; ++w) {
          const Complex& l = x.left_act[i].at(w, v);
          if (l.is_zero()) continue;
          for (int k = 0; k < na; ++k) c[i][k] = c[i][k] + l * x.iprod_a[u][w][k];
        }
      for (int r = 0; r < cond.rows(); ++r) {
        std::vector<Complex> row(nb);
        for (int i = 0; i < nb; ++i)
          for (int k = 0; k < na; ++k) row[i] = row[i] + cond.at(r, k) * c[i][k];
        rows.push_back(std::move(row));
      }
    }
  CMat sys = rows.empty() ? CMat(0, nb) : CMat::from_rows(rows);
  return StarIdeal::from_span(x.left_alg, nullspace(sys));
}

TransportReport check_kernel_transport(const InnerProductBimodule& x,
                                       const Representation& pi) {
  InducedResult ind = rieffel_induce(x, pi);
  if (!ind.positive)
    throw std::invalid_argument("induced form is indefinite for " + pi.name() +
                                "; kernel transport presupposes an inducible representation");
  StarIdeal ker_pi = StarIdeal::from_kernel(x.right_alg, representation_kernel(pi));
  TransportReport rep{false, StarIdeal::from_kernel(x.left_alg, representation_kernel(*ind.rep)),
                      phi_map(x, ker_pi), ""};
  rep.match = rep.induced_kernel == rep.transported;
  std::ostringstream note;
  note << "ker(R[" << x.name << "] " << pi.name() << ") has dimension "
       << rep.induced_kernel.dim() << ", transported kernel " << rep.transported.dim();
  rep.note = note.str();
  return rep;
}

DoubleTransportReport check_double_transport(const InnerProductBimodule& x,
                                             const StarIdeal& ideal) {
  if (!x.iprod_b)
    throw std::invalid_argument("double transport needs the B-valued inner product");
  const AlgebraPtr& A = x.right_alg;
  const int d = x.dim, na = A->dim();

  StarIdeal forward = phi_map(x, ideal);
  StarIdeal back = phi_map(conjugate_bimodule(x), forward);

  // Independent membership criterion: a is in the round-trip iff
  // <x_u,x_v> a <x_w,x_t> lies in the ideal for every basis quadruple.
  CMat cond = nullspace(ideal.basis());
  std::vector<CMat> lm, rm;
  lm.reserve(d * d);
  rm.reserve(d * d);
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      lm.push_back(A->left_mult(x.iprod_a[u][v]));
      rm.push_back(A->right_mult(x.iprod_a[u][v]));
    }
  std::vector<std::vector<Complex>> rows;
  for (const CMat& l : lm)
    for (const CMat& r : rm) {
      CMat prod = l * r;
      for (int c = 0; c < cond.rows(); ++c) {
        std::vector<Complex> row(na);
        for (int i = 0; i < na; ++i)
          for (int k = 0; k < na; ++k) row[i] = row[i] + cond.at(c, k) * prod.at(k, i);
        rows.push_back(std::move(row));
      }
    }
  CMat sys = rows.empty() ? CMat(0, na) : CMat::from_rows(rows);
  StarIdeal criterion = StarIdeal::from_kernel(A, nullspace(sys));

  DoubleTransportReport rep{false, false, std::move(forward), std::move(back), ""};
  rep.round_trip = rep.back == ideal;
  rep.criterion_match = criterion == rep.back;
  std::ostringstream note;
  note << "ideal dim " << ideal.dim() << " -> " << rep.forward.dim() << " -> "
       << rep.back.dim() << (rep.round_trip ? " (round trip)" : " (no round trip)");
  rep.note = note.str();
  return rep;
}

std::string morita_verdict_name(MoritaVerdict v) {
  switch (v) {
    case MoritaVerdict::Verified: return "Verified";
    case MoritaVerdict::Refuted: return "Refuted";
    default: return "Inconclusive";
  }
}

namespace {

// Certified J_min triviality: Yes/No only when one bound settles it.
TriState jmin_trivial(const JminResult& j) {
  if (j.upper.is_zero()) return TriState::Yes;
  if (j.lower.dim() > 0) return TriState::No;
  return TriState::Unknown;
}

std::string trivial_str(TriState t, const JminResult& j) {
  std::string s = t == TriState::Yes ? "yes" : t == TriState::No ? "no" : "unknown";
  if (j.status == SandwichStatus::Gap)
    s += " (sandwich gap " + std::to_string(j.lower.dim()) + ".." +
         std::to_string(j.upper.dim()) + ")";
  return s;
}

}  // namespace

MoritaReport verify_equivalence(const InnerProductBimodule& x,
                                const std::vector<LinearFunctional>& left_family,
                                const std::vector<LinearFunctional>& right_family) {
  MoritaReport rep;
  ValidationReport axioms = validate_bimodule(x);
  rep.axioms_ok = axioms.ok();
  if (!rep.axioms_ok)
    rep.notes.push_back("bimodule axioms fail:\n" + axioms.str());

  rep.full_right = is_full_over_right(x);
  rep.full_left = is_full_over_left(x);
  if (!rep.full_right)
    rep.notes.push_back("the " + x.right_alg->name() + "-valued inner product is not full");
  if (!rep.full_left)
    rep.notes.push_back(x.iprod_b ? "the " + x.left_alg->name() +
                                        "-valued inner product is not full"
                                  : "no " + x.left_alg->name() + "-valued inner product given");

  rep.property_p_structural = x.structural_p;
  rep.property_q_structural = x.structural_q;

  bool p_violated = false, q_violated = false;
  if (rep.axioms_ok) {
    if (!x.structural_p) {
      for (const LinearFunctional& omega : right_family) {
        GnsResult g = gns_construct(omega);
        InducedResult ind = rieffel_induce(x, g.rep);
        if (ind.positive) {
          ++rep.p_checked;
        } else {
          p_violated = true;
          rep.p_witness = ind.witness;
          rep.p_witness_rep = g.rep.name();
          rep.notes.push_back("induced form violation: " + ind.note);
          break;
        }
      }
    }
    if (!x.structural_q && x.iprod_b) {
      InnerProductBimodule xbar = conjugate_bimodule(x);
      for (const LinearFunctional& omega : left_family) {
        GnsResult g = gns_construct(omega);
        InducedResult ind = rieffel_induce(xbar, g.rep);
        if (ind.positive) {
          ++rep.q_checked;
        } else {
          q_violated = true;
          rep.notes.push_back("conjugate-side induced form violation: " + ind.note);
          break;
        }
      }
    }
  }

  // Minimal-ideal triviality is an equivalence invariant for idempotent
  // non-degenerate algebras; a certified mismatch refutes equivalence of the
  // algebras themselves, whatever the bimodule evidence says.
  bool hypotheses = x.left_alg->is_idempotent() && x.left_alg->is_nondegenerate() &&
                    x.right_alg->is_idempotent() && x.right_alg->is_nondegenerate();
  bool invariant_mismatch = false;
  if (!left_family.empty() && !right_family.empty()) {
    JminResult jl = jmin(x.left_alg, left_family);
    JminResult jr = jmin(x.right_alg, right_family);
    TriState tl = jmin_trivial(jl), tr = jmin_trivial(jr);
    if (tl != TriState::Unknown) rep.jmin_trivial_left = tl == TriState::Yes;
    if (tr != TriState::Unknown) rep.jmin_trivial_right = tr == TriState::Yes;
    bool exact = jl.status == SandwichStatus::Exact && jr.status == SandwichStatus::Exact;
    if (exact && tl != TriState::Unknown && tr != TriState::Unknown && tl != tr) {
      if (hypotheses) {
        invariant_mismatch = true;
        rep.notes.push_back("minimal closed ideal is trivial on one side only (left: " +
                            trivial_str(tl, jl) + ", right: " + trivial_str(tr, jr) +
                            ") -- the algebras are not formally Morita equivalent");
      } else {
        rep.notes.push_back(
            "minimal-ideal triviality differs, but the invariance theorem needs idempotent "
            "non-degenerate algebras, which fails here; no refutation drawn");
      }
    }
  } else {
    rep.notes.push_back("no functional family on one side; minimal-ideal cross-check skipped");
  }

  if (invariant_mismatch) {
    rep.verdict = MoritaVerdict::Refuted;
  } else if (!rep.axioms_ok || p_violated || q_violated || !rep.full_right || !rep.full_left) {
    rep.verdict = MoritaVerdict::Refuted;
    rep.notes.push_back(
        "this bimodule is not an equivalence bimodule; equivalence of the algebras "
        "through some other bimodule is not excluded");
  } else if (x.structural_p && x.structural_q) {
    rep.verdict = MoritaVerdict::Verified;
    rep.notes.push_back("positivity certified structurally for all representations");
  } else {
    rep.verdict = MoritaVerdict::Inconclusive;
    rep.notes.push_back("positivity evidence is family-relative (induced forms: " +
                        std::to_string(rep.p_checked) + ", conjugate side: " +
                        std::to_string(rep.q_checked) +
                        "); no structural certificate applies");
  }
  return rep;
}

std::string MoritaReport::str() const {
  std::ostringstream out;
  out << "verdict: " << morita_verdict_name(verdict) << "\n";
  out << "axioms: " << (axioms_ok ? "ok" : "violated") << "\n";
  out << "full (right / left): " << (full_right ? "yes" : "no") << " / "
      << (full_left ? "yes" : "no") << "\n";
  out << "induced-form positivity: "
      << (property_p_structural ? "structural"
                                : std::to_string(p_checked) + " family representation(s)")
      << "\n";
  out << "conjugate-side positivity: "
      << (property_q_structural ? "structural"
                                : std::to_string(q_checked) + " family representation(s)")
      << "\n";
  if (jmin_trivial_left)
    out << "minimal ideal trivial (left): " << (*jmin_trivial_left ? "yes" : "no") << "\n";
  if (jmin_trivial_right)
    out << "minimal ideal trivial (right): " << (*jmin_trivial_right ? "yes" : "no") << "\n";
  if (p_witness && p_witness_rep)
    out << "violation witness recorded against " << *p_witness_rep << "\n";
  for (const std::string& n : notes) out << "note: " << n << "\n";
  return out.str();
}

InvariantDiff diff_invariants(const AlgebraPtr& a, const std::vector<LinearFunctional>& fam_a,
                              const AlgebraPtr& b, const std::vector<LinearFunctional>& fam_b) {
  InvariantDiff diff;
  diff.hypotheses_ok = a->is_idempotent() && a->is_nondegenerate() && b->is_idempotent() &&
                       b->is_nondegenerate();

  JminResult ja = jmin(a, fam_a);
  JminResult jb = jmin(b, fam_b);
  TriState ta = jmin_trivial(ja), tb = jmin_trivial(jb);
  InvariantItem triv;
  triv.invariant = "J_min trivial";
  triv.left_value = trivial_str(ta, ja);
  triv.right_value = trivial_str(tb, jb);
  triv.certified = ja.status == SandwichStatus::Exact && jb.status == SandwichStatus::Exact;
  triv.agree = ta == tb;
  diff.items.push_back(triv);

  ClosedIdealLattice la = enumerate_closed_lattice(a, fam_a);
  ClosedIdealLattice lb = enumerate_closed_lattice(b, fam_b);
  InvariantItem lat;
  lat.invariant = "closed-ideal lattice";
  auto lattice_desc = [](const ClosedIdealLattice& l) {
    return std::to_string(l.nodes.size()) + " ideal(s), " +
           (l.completeness == LatticeCompleteness::Complete ? "complete" : "possibly incomplete");
  };
  lat.left_value = lattice_desc(la);
  lat.right_value = lattice_desc(lb);
  lat.certified = la.completeness == LatticeCompleteness::Complete &&
                  lb.completeness == LatticeCompleteness::Complete;
  lat.agree = lattices_isomorphic(la, lb);
  diff.items.push_back(lat);

  diff.fully_certified = true;
  for (const InvariantItem& it : diff.items) diff.fully_certified &= it.certified;

  // Refutations come only from the invariance theorems' certified forms: an
  // exact J_min-triviality mismatch, or a node-count mismatch between two
  // complete lattices.
  const InvariantItem* refuting = nullptr;
  if (triv.certified && !triv.agree) refuting = &diff.items[0];
  if (!refuting && lat.certified && la.nodes.size() != lb.nodes.size())
    refuting = &diff.items[1];
  diff.refuted = diff.hypotheses_ok && refuting != nullptr;

  std::ostringstream sum;
  if (diff.refuted) {
    sum << refuting->invariant << ": " << refuting->left_value << " vs "
        << refuting->right_value << " => not formally Morita equivalent";
  } else if (!diff.hypotheses_ok) {
    sum << "invariants compared, but they separate algebras only for idempotent "
           "non-degenerate algebras; no refutation possible here";
  } else if (!diff.fully_certified) {
    sum << "no certified invariant differs; some comparisons are not exact";
  } else if (!triv.agree || !lat.agree) {
    sum << "certified invariants differ only in a form the theorems do not cover; "
           "no refutation drawn";
  } else {
    sum << "all compared invariants agree; equivalence is not refuted (and not proven)";
  }
  diff.summary = sum.str();
  return diff;
}

}  // namespace starkit
