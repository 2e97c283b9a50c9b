#include "starkit/gns.hpp"

#include <stdexcept>

namespace starkit {

Representation Representation::create(AlgebraPtr alg, CMat gram, std::vector<CMat> action,
                                      std::string name) {
  if (!alg) throw std::invalid_argument("representation needs an algebra");
  Representation r;
  r.alg_ = std::move(alg);
  r.m_ = gram.rows();
  if (gram.cols() != r.m_) throw std::invalid_argument("carrier form must be square");
  if (static_cast<int>(action.size()) != r.alg_->dim())
    throw std::invalid_argument("one action matrix per basis element required");
  for (const auto& m : action)
    if (m.rows() != r.m_ || m.cols() != r.m_)
      throw std::invalid_argument("action matrix has wrong shape");
  PsdVerdict v = psd_check(gram);
  if (v.status != PsdStatus::PositiveDefinite)
    throw std::invalid_argument("carrier form must be positive definite");
  r.gram_ = std::move(gram);
  r.act_ = std::move(action);
  r.name_ = std::move(name);
  return r;
}

CMat Representation::represent(const std::vector<Complex>& x) const {
  if (static_cast<int>(x.size()) != alg_->dim())
    throw std::invalid_argument("element has wrong dimension");
  CMat m(m_, m_);
  for (int i = 0; i < alg_->dim(); ++i)
    if (!x[i].is_zero()) m = m + act_[i].scaled(x[i]);
  return m;
}

Complex Representation::inner(const std::vector<Complex>& phi,
                              const std::vector<Complex>& psi) const {
  Complex acc;
  auto gpsi = gram_.apply(psi);
  for (int k = 0; k < m_; ++k) acc = acc + phi[k].conj() * gpsi[k];
  return acc;
}

void Representation::set_cyclic_vector(std::vector<Complex> v) {
  if (static_cast<int>(v.size()) != m_)
    throw std::invalid_argument("cyclic vector has wrong dimension");
  cyclic_ = std::move(v);
}

ValidationReport Representation::validate() const {
  ValidationReport rep;
  int n = alg_->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat lhs = act_[i] * act_[j];
      CMat rhs(m_, m_);
      const auto& cij = alg_->structure(i, j);
      for (int k = 0; k < n; ++k)
        if (!cij[k].is_zero()) rhs = rhs + act_[k].scaled(cij[k]);
      if (lhs != rhs) {
        rep.violations.push_back({"multiplicativity",
                                  "pi(" + alg_->labels()[i] + ") pi(" + alg_->labels()[j] +
                                      ") != pi(" + alg_->labels()[i] + " " +
                                      alg_->labels()[j] + ")"});
        if (rep.violations.size() > 8) return rep;
      }
    }
  for (int i = 0; i < n; ++i) {
    CMat star_act = represent(alg_->star(alg_->basis_vector(i)));
    if (dagger(star_act) * gram_ != gram_ * act_[i]) {
      rep.violations.push_back(
          {"adjointability", "pi(" + alg_->labels()[i] + "*) is not the adjoint of pi(" +
                                 alg_->labels()[i] + ") for the carrier form"});
    }
  }
  return rep;
}

GnsResult gns_construct(const LinearFunctional& omega) {
  const AlgebraPtr& a = omega.algebra();
  int n = a->dim();
  FunctionalPositivity pos = is_positive_functional(omega);
  if (!pos.positive)
    throw std::invalid_argument(
        "GNS construction requires a positive functional; omega(A*A) = " +
        pos.witness->value.str() + " for A = " + a->element_str(pos.witness->element));
  CMat g = gram_form(omega);
  CMat gelfand = pos.gram_verdict->status == PsdStatus::PositiveDefinite
                     ? CMat(0, n)
                     : pos.gram_verdict->radical;
  Complement<Complex> comp = complement_of(gelfand, n);
  int m = comp.lift.rows();

  CMat carrier(m, m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) carrier.at(u, v) = g.at(comp.free_cols[u], comp.free_cols[v]);

  std::vector<CMat> action;
  action.reserve(n);
  for (int i = 0; i < n; ++i) {
    CMat act(m, m);
    for (int j = 0; j < m; ++j) {
      auto prod = comp.proj.apply(a->multiply(a->basis_vector(i), comp.lift.row(j)));
      for (int k = 0; k < m; ++k) act.at(k, j) = prod[k];
    }
    action.push_back(std::move(act));
  }

  GnsResult out{Representation::create(a, std::move(carrier), std::move(action),
                                       "gns[" + a->name() + "]"),
                gelfand, comp.proj, comp.lift};
  if (a->has_unit()) out.rep.set_cyclic_vector(comp.proj.apply(a->unit()));
  return out;
}

CMat representation_kernel(const Representation& rep) {
  int n = rep.algebra()->dim(), m = rep.space_dim();
  CMat sys(m * m, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) sys.at(r * m + c, i) = rep.action(i).at(r, c);
  return nullspace(sys);
}

LinearFunctional vector_state(const Representation& rep, const std::vector<Complex>& phi) {
  int n = rep.algebra()->dim();
  std::vector<Complex> w(n);
  for (int i = 0; i < n; ++i) {
    auto v = rep.action(i).apply(phi);
    auto gv = rep.gram().apply(v);
    Complex acc;
    for (int k = 0; k < rep.space_dim(); ++k) acc = acc + phi[k].conj() * gv[k];
    w[i] = acc;
  }
  return LinearFunctional(rep.algebra(), std::move(w));
}

Representation direct_sum_reps(const std::vector<Representation>& reps) {
  if (reps.empty()) throw std::invalid_argument("direct sum of no representations");
  const AlgebraPtr& a = reps.front().algebra();
  int total = 0;
  for (const auto& r : reps) {
    if (r.algebra().get() != a.get())
      throw std::invalid_argument("direct sum needs representations of one algebra");
    total += r.space_dim();
  }
  CMat gram(total, total);
  std::vector<CMat> action(a->dim(), CMat(total, total));
  int off = 0;
  std::string name = "sum(";
  for (size_t k = 0; k < reps.size(); ++k) {
    const auto& r = reps[k];
    for (int i = 0; i < r.space_dim(); ++i)
      for (int j = 0; j < r.space_dim(); ++j) gram.at(off + i, off + j) = r.gram().at(i, j);
    for (int b = 0; b < a->dim(); ++b)
      for (int i = 0; i < r.space_dim(); ++i)
        for (int j = 0; j < r.space_dim(); ++j)
          action[b].at(off + i, off + j) = r.action(b).at(i, j);
    off += r.space_dim();
    name += (k ? ", " : "") + r.name();
  }
  name += ")";
  return Representation::create(a, std::move(gram), std::move(action), std::move(name));
}

DegeneracyReport degeneracy_status(const Representation& rep) {
  int n = rep.algebra()->dim(), m = rep.space_dim();
  DegeneracyReport out;
  // Essential subspace: column span of all action matrices.
  std::vector<std::vector<Complex>> cols;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < m; ++c) cols.push_back(rep.action(i).col(c));
  out.essential = cols.empty() ? CMat(0, m) : row_space(CMat::from_rows(cols));
  if (out.essential.rows() == m) {
    out.status = Degeneracy::StronglyNonDegenerate;
    return out;
  }
  CMat stacked(n * m, m);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) stacked.at(i * m + r, c) = rep.action(i).at(r, c);
  out.status = nullspace(stacked).rows() == 0 ? Degeneracy::NonDegenerate
                                              : Degeneracy::Degenerate;
  return out;
}

Representation restrict_to_essential(const Representation& rep, const DegeneracyReport& deg) {
  int m = rep.space_dim();
  int s = deg.essential.rows();
  // Basis of the essential subspace as columns.
  CMat basis(m, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < m; ++c) basis.at(c, r) = deg.essential.at(r, c);
  CMat gram = dagger(basis) * rep.gram() * basis;
  std::vector<CMat> action;
  for (int i = 0; i < rep.algebra()->dim(); ++i) {
    CMat moved = rep.action(i) * basis;  // columns stay inside the subspace
    CMat coords(s, s);
    for (int c = 0; c < s; ++c) {
      auto col = solve(basis, moved.col(c));
      if (!col) throw std::logic_error("essential subspace was not invariant");
      for (int r = 0; r < s; ++r) coords.at(r, c) = (*col)[r];
    }
    action.push_back(std::move(coords));
  }
  return Representation::create(rep.algebra(), std::move(gram), std::move(action),
                                rep.name() + "|ess");
}

}  // namespace starkit
