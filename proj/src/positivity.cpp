#include "starkit/positivity.hpp"

#include <sstream>
#include <stdexcept>

namespace starkit {

// ------------------------------------------------------- LinearFunctional

LinearFunctional::LinearFunctional(AlgebraPtr alg, std::vector<Complex> values)
    : alg_(std::move(alg)), w_(std::move(values)) {
  if (!alg_) throw std::invalid_argument("functional needs an algebra");
  if (static_cast<int>(w_.size()) != alg_->dim())
    throw std::invalid_argument("functional value list has wrong length");
  for (const auto& z : w_)
    if (z.ring() > alg_->ring())
      throw std::invalid_argument("functional value outside the algebra ring");
}

Complex LinearFunctional::operator()(const std::vector<Complex>& x) const {
  if (x.size() != w_.size()) throw std::invalid_argument("element has wrong dimension");
  Complex acc;
  for (size_t k = 0; k < w_.size(); ++k)
    if (!x[k].is_zero()) acc = acc + x[k] * w_[k];
  return acc;
}

bool LinearFunctional::is_zero() const {
  for (const auto& z : w_)
    if (!z.is_zero()) return false;
  return true;
}

std::string LinearFunctional::str() const {
  std::ostringstream out;
  out << "[";
  for (size_t k = 0; k < w_.size(); ++k) out << (k ? ", " : "") << w_[k].str();
  out << "]";
  return out.str();
}

CMat gram_form(const LinearFunctional& omega) {
  const AlgebraPtr& a = omega.algebra();
  int n = a->dim();
  CMat g(n, n);
  for (int i = 0; i < n; ++i) {
    auto si = a->star(a->basis_vector(i));
    for (int j = 0; j < n; ++j) g.at(i, j) = omega(a->multiply(si, a->basis_vector(j)));
  }
  return g;
}

// ----------------------------------------------------------------- psd

namespace {
struct PivotStep {
  int p;
  Ordered d;
  std::vector<Complex> u;  // unit row, support inside the active set at this step
};

// Plain (non-conjugated) dot product; the elimination identity
// v^dagger (d u^dagger u) v = d |u.v|^2 uses it.
Complex plain_dot(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  Complex acc;
  for (size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero() && !v[k].is_zero()) acc = acc + u[k] * v[k];
  return acc;
}

std::vector<Complex> lift_witness(std::vector<Complex> v, const std::vector<PivotStep>& steps) {
  for (size_t k = steps.size(); k-- > 0;) {
    Complex dot = plain_dot(steps[k].u, v);
    v[steps[k].p] = -dot;
  }
  return v;
}

Ordered quad_form(const CMat& g, const std::vector<Complex>& v) {
  Complex acc;
  for (int i = 0; i < g.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < g.cols(); ++j)
      if (!v[j].is_zero() && !g.at(i, j).is_zero())
        acc = acc + v[i].conj() * g.at(i, j) * v[j];
  }
  if (!acc.is_real()) throw std::logic_error("quadratic form of a Hermitian matrix was not real");
  return acc.re();
}
}  // namespace

PsdVerdict psd_check(const CMat& g) {
  int n = g.rows();
  if (g.cols() != n) throw std::invalid_argument("psd_check needs a square matrix");
  if (g != dagger(g)) throw std::invalid_argument("psd_check needs a Hermitian matrix");

  PsdVerdict out;
  CMat h = g;
  std::vector<PivotStep> steps;
  bool dropped_zero_row = false;

  auto indefinite = [&](std::vector<Complex> local) {
    std::vector<Complex> w = lift_witness(std::move(local), steps);
    Ordered value = quad_form(g, w);
    if (value.sign() >= 0)
      throw std::logic_error("indefinite witness failed to re-verify");
    out.status = PsdStatus::Indefinite;
    out.witness = std::move(w);
    out.witness_value = value;
    return out;
  };

  for (int p = 0; p < n; ++p) {
    Complex dc = h.at(p, p);
    if (!dc.is_real()) throw std::logic_error("elimination lost hermiticity");
    Ordered d = dc.re();
    int s = d.sign();
    if (s < 0) {
      std::vector<Complex> v(n);
      v[p] = Complex(Ordered(1));
      return indefinite(std::move(v));
    }
    if (s == 0) {
      int j = -1;
      for (int q = 0; q < n; ++q)
        if (q != p && !h.at(p, q).is_zero()) {
          j = q;
          break;
        }
      if (j < 0) {
        dropped_zero_row = true;
        continue;
      }
      // Zero diagonal with a nonzero coupling h(p,j) = c: the 2x2 block
      // [[0, c], [conj(c), d_j]] takes a negative value at (s, 1) for
      // s = -t c with t > d_j / (2 |c|^2).
      Complex c = h.at(p, j);
      Ordered dj = h.at(j, j).re();
      Ordered t = (dj.abs() + Ordered(1)) / c.norm_sq();
      std::vector<Complex> v(n);
      v[p] = -(Complex(t) * c);
      v[j] = Complex(Ordered(1));
      return indefinite(std::move(v));
    }
    // d > 0: record the unit row and subtract the rank-one piece.
    PivotStep step;
    step.p = p;
    step.d = d;
    step.u.resize(n);
    for (int q = 0; q < n; ++q) step.u[q] = h.at(p, q) / Complex(d);
    for (int i = 0; i < n; ++i) {
      if (step.u[i].is_zero() && i != p) continue;
      for (int j2 = 0; j2 < n; ++j2) {
        if (i == p || j2 == p) continue;
        if (step.u[j2].is_zero()) continue;
        h.at(i, j2) = h.at(i, j2) - step.u[i].conj() * Complex(d) * step.u[j2];
      }
    }
    for (int q = 0; q < n; ++q) {
      h.at(p, q) = Complex();
      h.at(q, p) = Complex();
    }
    steps.push_back(std::move(step));
  }

  out.status = dropped_zero_row ? PsdStatus::PositiveSemidefinite : PsdStatus::PositiveDefinite;
  for (auto& st : steps) {
    out.pivots.push_back(st.d);
    out.pivot_rows.push_back(st.u);
  }
  out.radical = nullspace(g);
  return out;
}

// ------------------------------------------------- functional positivity

FunctionalPositivity is_positive_functional(const LinearFunctional& omega) {
  const AlgebraPtr& a = omega.algebra();
  int n = a->dim();
  CMat g = gram_form(omega);
  FunctionalPositivity out;

  if (g == dagger(g)) {
    PsdVerdict v = psd_check(g);
    if (v.status == PsdStatus::Indefinite) {
      PositivityWitness w;
      w.element = v.witness;
      auto sx = a->star(w.element);
      w.value = omega(a->multiply(sx, w.element));
      out.positive = false;
      out.witness = std::move(w);
      out.gram_verdict = std::move(v);
    } else {
      out.positive = true;
      out.gram_verdict = std::move(v);
    }
    return out;
  }

  // The Gram form is not Hermitian, so omega cannot be positive; polarization
  // produces an explicit element whose square has a non-real (or negative)
  // value.
  auto value_of = [&](const std::vector<Complex>& x) {
    return omega(a->multiply(a->star(x), x));
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.at(i, j) == g.at(j, i).conj()) continue;
      std::vector<std::vector<Complex>> candidates;
      candidates.push_back(a->basis_vector(i));
      for (Complex c : {Complex(Ordered(1)), Complex(Ordered(-1)), Complex::i(),
                        -Complex::i()}) {
        auto x = a->basis_vector(i);
        x[j] = x[j] + c;
        candidates.push_back(std::move(x));
      }
      for (auto& x : candidates) {
        Complex val = value_of(x);
        if (!val.is_real() || val.re().sign() < 0) {
          out.positive = false;
          out.witness = PositivityWitness{std::move(x), val};
          return out;
        }
      }
    }
  throw std::logic_error("non-Hermitian Gram form without a polarization witness");
}

CMat gelfand_ideal(const LinearFunctional& omega) {
  FunctionalPositivity p = is_positive_functional(omega);
  if (!p.positive)
    throw std::invalid_argument("Gel'fand ideal requires a positive functional; witness " +
                                omega.algebra()->element_str(p.witness->element));
  if (p.gram_verdict->status == PsdStatus::PositiveDefinite)
    return CMat(0, omega.algebra()->dim());
  return p.gram_verdict->radical;
}

LinearFunctional conjugated_functional(const LinearFunctional& omega,
                                       const std::vector<Complex>& b) {
  const AlgebraPtr& a = omega.algebra();
  auto sb = a->star(b);
  std::vector<Complex> w(a->dim());
  for (int i = 0; i < a->dim(); ++i)
    w[i] = omega(a->multiply(sb, a->multiply(a->basis_vector(i), b)));
  return LinearFunctional(a, std::move(w));
}

LinearFunctional zero_functional(AlgebraPtr a) {
  std::vector<Complex> w(a->dim());
  return LinearFunctional(std::move(a), std::move(w));
}

// ------------------------------------------------------ built-in families

namespace {

// Deterministic net of vectors in C^N whose vector states separate the
// standard matrix blocks: e_r, e_r + e_s and e_r + i e_s for r < s.
std::vector<std::vector<Complex>> vector_net(int n) {
  std::vector<std::vector<Complex>> net;
  for (int r = 0; r < n; ++r) {
    std::vector<Complex> v(n);
    v[r] = Complex(Ordered(1));
    net.push_back(v);
  }
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      std::vector<Complex> v(n), w(n);
      v[r] = Complex(Ordered(1));
      v[s] = Complex(Ordered(1));
      w[r] = Complex(Ordered(1));
      w[s] = Complex::i();
      net.push_back(v);
      net.push_back(w);
    }
  return net;
}

std::vector<LinearFunctional> matrix_over_family(const AlgebraPtr& self, const AlgebraPtr& base,
                                                 int n) {
  std::vector<LinearFunctional> base_family = builtin_functional_family(base);
  int nb = base->dim();
  auto idx = [n, nb](int r, int s, int k) { return (r * n + s) * nb + k; };
  std::vector<LinearFunctional> out;
  for (const auto& omega : base_family) {
    for (const auto& v : vector_net(n)) {
      std::vector<Complex> w(self->dim());
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          Complex f = v[r].conj() * v[s];
          if (f.is_zero()) continue;
          for (int k = 0; k < nb; ++k) w[idx(r, s, k)] = f * omega.values()[k];
        }
      out.emplace_back(self, std::move(w));
    }
    std::vector<Complex> wtr(self->dim());
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < nb; ++k) wtr[idx(r, r, k)] = omega.values()[k];
    out.emplace_back(self, std::move(wtr));
  }
  return out;
}

}  // namespace

std::vector<LinearFunctional> push_forward_family(const std::vector<LinearFunctional>& family,
                                                  const AlgebraPtr& quotient) {
  const auto* tag = std::get_if<QuotientTag>(&quotient->provenance());
  if (!tag) throw std::invalid_argument("push_forward_family needs a quotient presentation");
  std::vector<LinearFunctional> out;
  for (const auto& omega : family) {
    bool vanishes = true;
    for (int r = 0; r < tag->ideal.rows() && vanishes; ++r)
      vanishes = omega(tag->ideal.row(r)).is_zero();
    if (!vanishes) continue;
    std::vector<Complex> w(quotient->dim());
    for (int t = 0; t < quotient->dim(); ++t) w[t] = omega(tag->lift.row(t));
    out.emplace_back(quotient, std::move(w));
  }
  if (out.empty()) out.push_back(zero_functional(quotient));
  return out;
}

std::vector<LinearFunctional> builtin_functional_family(const AlgebraPtr& a) {
  if (!a) throw std::invalid_argument("builtin_functional_family needs an algebra");
  const Provenance& prov = a->provenance();

  if (const auto* st = std::get_if<StandardTag>(&prov)) {
    int n = st->n;
    std::vector<LinearFunctional> out;
    switch (st->kind) {
      case StandardKind::Matrix: {
        std::vector<Complex> tr(a->dim());
        for (int r = 0; r < n; ++r) tr[r * n + r] = Complex(Ordered(1));
        out.emplace_back(a, std::move(tr));
        for (const auto& v : vector_net(n)) {
          std::vector<Complex> w(a->dim());
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) w[r * n + s] = v[r].conj() * v[s];
          out.emplace_back(a, std::move(w));
        }
        return out;
      }
      case StandardKind::FunctionPoints: {
        for (int p = 0; p < n; ++p) {
          std::vector<Complex> w(a->dim());
          w[p] = Complex(Ordered(1));
          out.emplace_back(a, std::move(w));
        }
        return out;
      }
      case StandardKind::Grassmann: {
        // The whole positive cone of functionals is one ray: value 1 on the
        // empty product, 0 in positive degree.
        std::vector<Complex> w(a->dim());
        w[0] = Complex(Ordered(1));
        out.emplace_back(a, std::move(w));
        return out;
      }
      case StandardKind::ZeroMult: {
        for (int p = 0; p < n; ++p) {
          std::vector<Complex> w(a->dim());
          w[p] = Complex(Ordered(1));
          out.emplace_back(a, std::move(w));
        }
        return out;
      }
    }
  }
  if (const auto* mo = std::get_if<MatrixOverTag>(&prov))
    return matrix_over_family(a, mo->base, mo->n);
  if (const auto* ds = std::get_if<DirectSumTag>(&prov)) {
    std::vector<LinearFunctional> out;
    int na = ds->left->dim(), nb = ds->right->dim();
    for (const auto& omega : builtin_functional_family(ds->left)) {
      std::vector<Complex> w(na + nb);
      for (int k = 0; k < na; ++k) w[k] = omega.values()[k];
      out.emplace_back(a, std::move(w));
    }
    for (const auto& omega : builtin_functional_family(ds->right)) {
      std::vector<Complex> w(na + nb);
      for (int k = 0; k < nb; ++k) w[na + k] = omega.values()[k];
      out.emplace_back(a, std::move(w));
    }
    return out;
  }
  if (std::get_if<QuotientTag>(&prov)) {
    const auto& tag = std::get<QuotientTag>(prov);
    return push_forward_family(builtin_functional_family(tag.parent), a);
  }
  if (const auto* cp = std::get_if<CompressionTag>(&prov)) {
    // Restrict the ambient family through the embedding; restrictions of
    // positive functionals to a *-subalgebra stay positive.
    std::vector<LinearFunctional> out;
    for (const auto& phi : builtin_functional_family(cp->ambient)) {
      std::vector<Complex> w(a->dim());
      for (int t = 0; t < a->dim(); ++t) w[t] = phi(cp->embed.row(t));
      out.emplace_back(a, std::move(w));
    }
    return out;
  }
  throw std::invalid_argument("no built-in functional family for custom presentation " +
                              a->name() + "; supply one explicitly");
}

std::string family_fingerprint(const std::vector<LinearFunctional>& family) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  if (!family.empty()) mix(family.front().algebra()->name());
  for (const auto& f : family) mix(f.str());
  std::ostringstream out;
  out << std::hex;
  for (int k = 15; k >= 0; --k) out << ((h >> (4 * k)) & 0xf);
  return out.str();
}

// ------------------------------------------------------------- cones

bool verify_cone_decomposition(const AlgebraPtr& a, const std::vector<Complex>& x,
                               const ConeDecomposition& dec) {
  std::vector<Complex> acc(a->dim());
  for (const auto& [coeff, b] : dec.terms) {
    if (coeff.sign() <= 0) return false;
    auto sq = a->multiply(a->star(b), b);
    for (int k = 0; k < a->dim(); ++k) acc[k] = acc[k] + Complex(coeff) * sq[k];
  }
  return acc == x;
}

namespace {

struct GramSystem {
  int n = 0;
  std::vector<std::vector<std::vector<Complex>>> t;  // t[i][j] = b_i^* b_j
  // Real parameter layout: n diagonal entries, then (re, im) per i < j pair.
  int params = 0;
  std::vector<std::vector<int>> pair_index;
};

GramSystem build_gram_system(const AlgebraPtr& a) {
  GramSystem gs;
  gs.n = a->dim();
  gs.t.assign(gs.n, std::vector<std::vector<Complex>>(gs.n));
  for (int i = 0; i < gs.n; ++i) {
    auto si = a->star(a->basis_vector(i));
    for (int j = 0; j < gs.n; ++j) gs.t[i][j] = a->multiply(si, a->basis_vector(j));
  }
  gs.pair_index.assign(gs.n, std::vector<int>(gs.n, -1));
  int next = gs.n;
  for (int i = 0; i < gs.n; ++i)
    for (int j = i + 1; j < gs.n; ++j) {
      gs.pair_index[i][j] = next;
      next += 2;
    }
  gs.params = next;
  return gs;
}

CMat gram_from_params(const GramSystem& gs, const std::vector<Ordered>& z) {
  CMat p(gs.n, gs.n);
  for (int i = 0; i < gs.n; ++i) p.at(i, i) = Complex(z[i]);
  for (int i = 0; i < gs.n; ++i)
    for (int j = i + 1; j < gs.n; ++j) {
      int off = gs.pair_index[i][j];
      p.at(i, j) = Complex(z[off], z[off + 1]);
      p.at(j, i) = Complex(z[off], -z[off + 1]);
    }
  return p;
}

std::vector<Ordered> add_scaled(std::vector<Ordered> z, const RMat& dirs, int row,
                                const Ordered& t) {
  for (int k = 0; k < dirs.cols(); ++k) z[k] = z[k] + t * dirs.at(row, k);
  return z;
}

// Exact least-squares projection of the origin onto {z0 + span(kernel rows)}.
std::vector<Ordered> least_norm_point(const std::vector<Ordered>& z0, const RMat& kernel) {
  int k = kernel.rows(), n = kernel.cols();
  if (k == 0) return z0;
  RMat kkt(k, k);
  std::vector<Ordered> rhs(k, Ordered(0));
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      Ordered acc(0);
      for (int c = 0; c < n; ++c) acc = acc + kernel.at(r, c) * kernel.at(s, c);
      kkt.at(r, s) = acc;
    }
    Ordered acc(0);
    for (int c = 0; c < n; ++c) acc = acc + kernel.at(r, c) * z0[c];
    rhs[r] = -acc;
  }
  auto y = solve(kkt, rhs);
  if (!y) return z0;
  std::vector<Ordered> z = z0;
  for (int r = 0; r < k; ++r) z = add_scaled(std::move(z), kernel, r, (*y)[r]);
  return z;
}

Ordered hermitian_form_value(const CMat& p, const std::vector<Complex>& v) {
  Complex acc;
  for (int i = 0; i < p.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < p.cols(); ++j)
      if (!v[j].is_zero() && !p.at(i, j).is_zero())
        acc = acc + v[i].conj() * p.at(i, j) * v[j];
  }
  return acc.re();
}

ConeDecomposition decomposition_from_verdict(const PsdVerdict& v) {
  ConeDecomposition dec;
  for (size_t k = 0; k < v.pivots.size(); ++k) dec.terms.push_back({v.pivots[k], v.pivot_rows[k]});
  return dec;
}

ConeStatus solve_algebraic_cone(const AlgebraPtr& a, const std::vector<Complex>& x,
                                unsigned effort) {
  ConeStatus out;
  GramSystem gs = build_gram_system(a);
  int n = gs.n;
  RMat m(2 * n, gs.params);
  std::vector<Ordered> rhs(2 * n, Ordered(0));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      m.at(2 * k, i) = gs.t[i][i][k].re();
      m.at(2 * k + 1, i) = gs.t[i][i][k].im();
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int off = gs.pair_index[i][j];
        Complex sum = gs.t[i][j][k] + gs.t[j][i][k];
        Complex diff = gs.t[i][j][k] - gs.t[j][i][k];
        m.at(2 * k, off) = sum.re();
        m.at(2 * k + 1, off) = sum.im();
        // coefficient of the imaginary parameter: i * diff
        m.at(2 * k, off + 1) = -diff.im();
        m.at(2 * k + 1, off + 1) = diff.re();
      }
    rhs[2 * k] = x[k].re();
    rhs[2 * k + 1] = x[k].im();
  }
  auto sol = solve_affine(m, rhs);
  if (!sol) {
    out.membership = ConeMembership::CertifiedNonMember;
    out.note = "no Hermitian coefficient matrix reproduces the element over the basis products";
    return out;
  }

  const RMat& kernel = sol->kernel;
  if (kernel.rows() == 0) {
    PsdVerdict v = psd_check(gram_from_params(gs, sol->particular));
    if (v.is_psd()) {
      out.membership = ConeMembership::CertifiedMember;
      out.decomposition = decomposition_from_verdict(v);
      out.note = "unique Hermitian coefficient matrix is positive semidefinite";
    } else {
      out.membership = ConeMembership::CertifiedNonMember;
      out.note = "unique Hermitian coefficient matrix is indefinite";
    }
    return out;
  }

  std::vector<std::vector<Ordered>> seeds;
  seeds.push_back(least_norm_point(sol->particular, kernel));
  seeds.push_back(sol->particular);
  for (auto seed : seeds) {
    std::vector<Ordered> z = seed;
    for (unsigned iter = 0; iter <= effort; ++iter) {
      CMat p = gram_from_params(gs, z);
      PsdVerdict v = psd_check(p);
      if (v.is_psd()) {
        out.membership = ConeMembership::CertifiedMember;
        out.decomposition = decomposition_from_verdict(v);
        out.note = "positive semidefinite coefficient matrix found in the solution space";
        return out;
      }
      // Repair along a kernel direction that raises the witness value.
      Ordered val = v.witness_value;
      int best = -1;
      Ordered best_q(0);
      for (int r = 0; r < kernel.rows(); ++r) {
        CMat ph = gram_from_params(gs, kernel.row(r));
        Ordered q = hermitian_form_value(ph, v.witness);
        if (q.abs() > best_q.abs()) {
          best = r;
          best_q = q;
        }
      }
      if (best < 0 || best_q.sign() == 0) break;
      Ordered t = (Ordered(1) - val) / best_q;
      z = add_scaled(std::move(z), kernel, best, t);
    }
  }
  out.membership = ConeMembership::Unknown;
  out.note = "bounded search of the Hermitian solution space found no PSD point";
  return out;
}

ConeStatus member_via_note(std::string note) {
  ConeStatus s;
  s.membership = ConeMembership::CertifiedMember;
  s.note = std::move(note);
  return s;
}

}  // namespace

PositiveElementReport positive_element_status(const AlgebraPtr& a,
                                              const std::vector<Complex>& x,
                                              unsigned search_effort) {
  if (static_cast<int>(x.size()) != a->dim())
    throw std::invalid_argument("element has wrong dimension");
  PositiveElementReport rep;

  if (a->star(x) != x) {
    rep.algebraically_positive.membership = ConeMembership::CertifiedNonMember;
    rep.algebraically_positive.note = "element is not Hermitian";
    rep.positive = rep.algebraically_positive;
    return rep;
  }

  rep.algebraically_positive = solve_algebraic_cone(a, x, search_effort);
  if (rep.algebraically_positive.decomposition &&
      !verify_cone_decomposition(a, x, *rep.algebraically_positive.decomposition))
    throw std::logic_error("cone decomposition certificate failed re-verification");

  // Dual cone: refute with a built-in positive functional when possible.
  std::vector<LinearFunctional> family;
  bool have_family = true;
  try {
    family = builtin_functional_family(a);
  } catch (const std::invalid_argument&) {
    have_family = false;
  }
  if (have_family) {
    for (const auto& omega : family) {
      Complex val = omega(x);
      if (!val.is_real() || val.re().sign() < 0) {
        rep.positive.membership = ConeMembership::CertifiedNonMember;
        rep.positive.separating = omega;
        rep.positive.note = "a built-in positive functional takes the value " + val.str();
        return rep;
      }
    }
  }

  if (rep.algebraically_positive.membership == ConeMembership::CertifiedMember) {
    rep.positive = member_via_note("member of the sums-of-squares cone");
    rep.positive.decomposition = rep.algebraically_positive.decomposition;
    return rep;
  }

  // Exhaustive cone descriptions for constructions whose positive
  // functionals are completely known.
  const Provenance& prov = a->provenance();
  if (const auto* st = std::get_if<StandardTag>(&prov)) {
    switch (st->kind) {
      case StandardKind::FunctionPoints: {
        ConeDecomposition dec;
        for (int p = 0; p < a->dim(); ++p)
          if (!x[p].is_zero()) {
            std::vector<Complex> d(a->dim());
            d[p] = Complex(Ordered(1));
            dec.terms.push_back({x[p].re(), std::move(d)});
          }
        rep.positive = member_via_note("pointwise nonnegative function");
        if (!dec.terms.empty()) {
          if (!verify_cone_decomposition(a, x, dec))
            throw std::logic_error("pointwise decomposition failed re-verification");
          rep.positive.decomposition = std::move(dec);
        }
        return rep;
      }
      case StandardKind::Grassmann:
        rep.positive = member_via_note(
            "every positive functional is a scalar multiple of the canonical one, and its "
            "value here is " + x[0].str());
        return rep;
      case StandardKind::ZeroMult: {
        bool zero = true;
        for (const auto& z : x) zero = zero && z.is_zero();
        if (zero) {
          rep.positive = member_via_note("zero element");
        } else {
          int k = 0;
          while (x[k].is_zero()) ++k;
          std::vector<Complex> w(a->dim());
          w[k] = x[k].re().sign() > 0 ? Complex(Ordered(-1)) : Complex(Ordered(1));
          rep.positive.membership = ConeMembership::CertifiedNonMember;
          rep.positive.separating = LinearFunctional(a, std::move(w));
          rep.positive.note =
              "with zero multiplication every linear functional is positive, and one of "
              "them is negative here";
        }
        return rep;
      }
      default: break;
    }
  }
  if (const auto* ds = std::get_if<DirectSumTag>(&prov)) {
    std::vector<Complex> xl(x.begin(), x.begin() + ds->left->dim());
    std::vector<Complex> xr(x.begin() + ds->left->dim(), x.end());
    PositiveElementReport rl = positive_element_status(ds->left, xl, search_effort);
    PositiveElementReport rr = positive_element_status(ds->right, xr, search_effort);
    if (rl.positive.membership == ConeMembership::CertifiedMember &&
        rr.positive.membership == ConeMembership::CertifiedMember) {
      rep.positive = member_via_note("both direct summands are positive");
      return rep;
    }
    if (rl.positive.membership == ConeMembership::CertifiedNonMember ||
        rr.positive.membership == ConeMembership::CertifiedNonMember) {
      bool left_bad = rl.positive.membership == ConeMembership::CertifiedNonMember;
      rep.positive.membership = ConeMembership::CertifiedNonMember;
      rep.positive.note = std::string("refuted in the ") + (left_bad ? "left" : "right") +
                          " direct summand";
      const auto& sep = left_bad ? rl.positive.separating : rr.positive.separating;
      if (sep) {
        std::vector<Complex> w(a->dim());
        int off = left_bad ? 0 : ds->left->dim();
        for (int k = 0; k < (left_bad ? ds->left : ds->right)->dim(); ++k)
          w[off + k] = sep->values()[k];
        rep.positive.separating = LinearFunctional(a, std::move(w));
      }
      return rep;
    }
  }

  rep.positive.membership = ConeMembership::Unknown;
  rep.positive.note = "no exhaustive description of the positive cone for this construction";
  return rep;
}

}  // namespace starkit
