#include "starkit/ideals.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starkit {

namespace {

bool vec_is_zero(const std::vector<Complex>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

uint64_t fnv64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CMat rows_or_empty(const std::vector<std::vector<Complex>>& rows, int cols) {
  if (rows.empty()) return CMat(0, cols);
  return CMat::from_rows(rows);
}

}  // namespace

StarIdeal StarIdeal::from_kernel(AlgebraPtr a, const CMat& rows) {
  if (rows.cols() != a->dim() && rows.rows() > 0)
    throw std::invalid_argument("ideal rows do not match the algebra dimension");
  CMat canon = rows.rows() > 0 ? row_space(rows) : CMat(0, a->dim());
  if (canon.cols() != a->dim()) canon = CMat(0, a->dim());
  return StarIdeal(std::move(a), std::move(canon));
}

StarIdeal StarIdeal::from_span(AlgebraPtr a, const CMat& rows) {
  StarIdeal span = from_kernel(a, rows);
  std::vector<std::vector<Complex>> gens;
  for (int r = 0; r < span.basis().rows(); ++r) gens.push_back(span.basis().row(r));
  StarIdeal generated = ideal_generated_by(span.algebra(), gens);
  if (!(generated == span))
    throw std::invalid_argument("span is not a star-closed two-sided ideal of " +
                                span.algebra()->name());
  return span;
}

StarIdeal StarIdeal::zero(AlgebraPtr a) {
  int n = a->dim();
  return StarIdeal(std::move(a), CMat(0, n));
}

StarIdeal StarIdeal::whole(AlgebraPtr a) {
  int n = a->dim();
  return StarIdeal(std::move(a), CMat::identity(n));
}

bool StarIdeal::contains_vector(const std::vector<Complex>& v) const {
  return in_row_space(v, basis_);
}

bool StarIdeal::contains(const StarIdeal& o) const {
  return row_space_contains(o.basis_, basis_);
}

bool StarIdeal::operator==(const StarIdeal& o) const { return basis_ == o.basis_; }

std::string StarIdeal::key() const {
  std::ostringstream os;
  os << basis_.rows() << "x" << basis_.cols() << ":" << basis_.str();
  return os.str();
}

std::string StarIdeal::short_hash() const {
  uint64_t h = fnv64(key());
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0')
     << static_cast<uint32_t>(h ^ (h >> 32));
  return os.str();
}

StarIdeal ideal_generated_by(const AlgebraPtr& a,
                             const std::vector<std::vector<Complex>>& generators) {
  const int n = a->dim();
  CMat current = rows_or_empty(generators, n);
  current = current.rows() > 0 ? row_space(current) : CMat(0, n);
  for (;;) {
    std::vector<std::vector<Complex>> fresh;
    for (int r = 0; r < current.rows(); ++r) {
      auto v = current.row(r);
      auto sv = a->star(v);
      if (!in_row_space(sv, current)) fresh.push_back(sv);
      for (int k = 0; k < n; ++k) {
        auto ek = a->basis_vector(k);
        auto lv = a->multiply(ek, v);
        if (!in_row_space(lv, current)) fresh.push_back(lv);
        auto rv = a->multiply(v, ek);
        if (!in_row_space(rv, current)) fresh.push_back(rv);
      }
    }
    if (fresh.empty()) break;
    current = row_space(vstack(current, CMat::from_rows(fresh)));
  }
  return StarIdeal::from_kernel(a, current);
}

std::string tristate_name(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    default: return "unknown";
  }
}

JminResult jmin(const AlgebraPtr& a, const std::vector<LinearFunctional>& family) {
  if (family.empty())
    throw std::invalid_argument("minimal-ideal sandwich needs a nonempty functional family");
  const int n = a->dim();

  CMat upper_rows = CMat::identity(n);
  for (const auto& omega : family) {
    GnsResult g = gns_construct(omega);
    upper_rows = intersect_row_spaces(upper_rows, representation_kernel(g.rep), n);
  }
  if (a->has_unit()) {
    // In the unital case the kernel intersection may also be cut with the
    // plain functional kernels; that can never shrink it further because
    // ker pi_omega sits inside ker omega, so treat a change as corruption.
    CMat tightened = upper_rows;
    for (const auto& omega : family) {
      CMat wrow(1, n);
      for (int j = 0; j < n; ++j) wrow.at(0, j) = omega(a->basis_vector(j));
      tightened = intersect_row_spaces(tightened, nullspace(wrow), n);
    }
    if (!(tightened == row_space(upper_rows)))
      throw std::logic_error("a GNS kernel escaped its functional kernel");
  }

  // Elements forced into every kernel: x with x^*x = 0 or xx^* = 0, and normal
  // nilpotents.  Scanned over the basis and all pairwise basis products, then
  // closed up to an ideal.
  std::vector<std::vector<Complex>> gens;
  std::vector<std::string> reasons;
  auto consider = [&](const std::vector<Complex>& x, const std::string& label) {
    if (vec_is_zero(x)) return;
    auto xs = a->star(x);
    auto ss = a->multiply(xs, x);
    auto tt = a->multiply(x, xs);
    if (vec_is_zero(ss)) {
      gens.push_back(x);
      reasons.push_back(label + ": x^* x = 0");
      return;
    }
    if (vec_is_zero(tt)) {
      gens.push_back(x);
      reasons.push_back(label + ": x x^* = 0");
      return;
    }
    if (ss == tt) {
      auto p = x;
      for (int k = 2; k <= n + 1; ++k) {
        p = a->multiply(p, x);
        if (vec_is_zero(p)) {
          gens.push_back(x);
          reasons.push_back(label + ": normal, x^" + std::to_string(k) + " = 0");
          return;
        }
      }
    }
  };
  const auto& labels = a->labels();
  for (int i = 0; i < n; ++i) consider(a->basis_vector(i), labels[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      consider(a->multiply(a->basis_vector(i), a->basis_vector(j)),
               labels[i] + "." + labels[j]);

  JminResult out{ideal_generated_by(a, gens), StarIdeal::from_kernel(a, upper_rows),
                 SandwichStatus::Gap, std::move(reasons), family_fingerprint(family)};
  if (!out.upper.contains(out.lower))
    throw std::logic_error("certified lower bound escapes the kernel intersection");
  if (out.lower == out.upper) out.status = SandwichStatus::Exact;
  return out;
}

ClosureResult closure_of(const AlgebraPtr& a, const CMat& subset_rows,
                         const std::vector<LinearFunctional>& family) {
  std::vector<std::vector<Complex>> gens;
  for (int r = 0; r < subset_rows.rows(); ++r) gens.push_back(subset_rows.row(r));
  StarIdeal generated = ideal_generated_by(a, gens);
  if (generated.is_whole()) return {generated, generated, SandwichStatus::Exact};

  QuotientResult q = quotient_by_star_ideal(a, generated.basis());
  auto pushed = push_forward_family(family, q.algebra);
  JminResult jm = jmin(q.algebra, pushed);

  auto pull = [&](const StarIdeal& j) {
    CMat rows = generated.basis();
    std::vector<std::vector<Complex>> extra;
    for (int r = 0; r < j.basis().rows(); ++r) {
      std::vector<Complex> parent(a->dim());
      for (int t = 0; t < q.lift.rows(); ++t) {
        const Complex& c = j.basis().at(r, t);
        if (c.is_zero()) continue;
        for (int v = 0; v < a->dim(); ++v) parent[v] = parent[v] + c * q.lift.at(t, v);
      }
      extra.push_back(std::move(parent));
    }
    if (!extra.empty()) rows = vstack(rows, CMat::from_rows(extra));
    return StarIdeal::from_kernel(a, rows);
  };

  ClosureResult out{pull(jm.lower), pull(jm.upper), SandwichStatus::Gap};
  if (out.lower == out.upper) out.status = SandwichStatus::Exact;
  return out;
}

TriState is_closed(const StarIdeal& ideal, const std::vector<LinearFunctional>& family) {
  ClosureResult c = closure_of(ideal.algebra(), ideal.basis(), family);
  if (c.upper == ideal) return TriState::Yes;
  if (c.lower.dim() > ideal.dim()) return TriState::No;
  return TriState::Unknown;
}

StarIdeal meet_ideals(const StarIdeal& x, const StarIdeal& y) {
  if (x.algebra() != y.algebra())
    throw std::invalid_argument("meet of ideals over different algebras");
  return StarIdeal::from_kernel(
      x.algebra(), intersect_row_spaces(x.basis(), y.basis(), x.algebra()->dim()));
}

ClosureResult join_ideals(const StarIdeal& x, const StarIdeal& y,
                          const std::vector<LinearFunctional>& family) {
  if (x.algebra() != y.algebra())
    throw std::invalid_argument("join of ideals over different algebras");
  CMat stacked = vstack(x.basis(), y.basis());
  return closure_of(x.algebra(), stacked, family);
}

bool ideal_leq(const StarIdeal& x, const StarIdeal& y) {
  return row_space_contains(x.basis(), y.basis());
}

int ClosedIdealLattice::bottom_index() const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    bool all = true;
    for (size_t k = 0; k < nodes.size() && all; ++k) all = leq[i][k];
    if (all) return static_cast<int>(i);
  }
  return -1;
}

int ClosedIdealLattice::top_index() const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    bool all = true;
    for (size_t k = 0; k < nodes.size() && all; ++k) all = leq[k][i];
    if (all) return static_cast<int>(i);
  }
  return -1;
}

int ClosedIdealLattice::index_of(const StarIdeal& ideal) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == ideal) return static_cast<int>(i);
  return -1;
}

ClosedIdealLattice enumerate_closed_lattice(const AlgebraPtr& a,
                                            const std::vector<LinearFunctional>& family) {
  if (family.empty())
    throw std::invalid_argument("lattice enumeration needs a nonempty functional family");

  std::vector<StarIdeal> items;
  std::set<std::string> seen;
  bool join_gap = false;
  auto add = [&](const StarIdeal& s) {
    auto k = s.key();
    if (seen.count(k)) return false;
    if (items.size() >= 512)
      throw std::runtime_error("closed-ideal enumeration exceeded 512 nodes");
    seen.insert(k);
    items.push_back(s);
    return true;
  };

  add(StarIdeal::whole(a));
  for (const auto& omega : family) {
    GnsResult g = gns_construct(omega);
    add(StarIdeal::from_kernel(a, representation_kernel(g.rep)));
  }

  // Close under meet and join; every element produced is a kernel of some
  // representation, so membership is certified even when a join sandwich has
  // a gap (the gap only threatens completeness, tracked below).
  std::set<std::pair<size_t, size_t>> done;
  bool changed = true;
  while (changed) {
    changed = false;
    const size_t m = items.size();
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        if (done.count({i, j})) continue;
        done.insert({i, j});
        if (add(meet_ideals(items[i], items[j]))) changed = true;
        ClosureResult jr = join_ideals(items[i], items[j], family);
        if (jr.status == SandwichStatus::Gap) join_gap = true;
        if (add(jr.closed())) changed = true;
      }
    if (items.size() > m) changed = true;
  }

  std::sort(items.begin(), items.end(), [](const StarIdeal& x, const StarIdeal& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    return x.key() < y.key();
  });

  ClosedIdealLattice lat;
  lat.alg = a;
  lat.nodes = std::move(items);
  const int m = static_cast<int>(lat.nodes.size());
  lat.leq.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lat.leq[i][j] = ideal_leq(lat.nodes[i], lat.nodes[j]);

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !lat.leq[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < m && cover; ++k)
        if (k != i && k != j && lat.leq[i][k] && lat.leq[k][j]) cover = false;
      if (cover) lat.covers.emplace_back(i, j);
    }

  lat.meet_table.assign(m, std::vector<int>(m, -1));
  lat.join_table.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int mi = lat.index_of(meet_ideals(lat.nodes[i], lat.nodes[j]));
      if (mi < 0) throw std::logic_error("enumerated family is not meet-closed");
      lat.meet_table[i][j] = mi;
      // least upper bound inside the enumerated family
      std::optional<StarIdeal> ub;
      for (int k = 0; k < m; ++k)
        if (lat.leq[i][k] && lat.leq[j][k])
          ub = ub ? meet_ideals(*ub, lat.nodes[k]) : lat.nodes[k];
      int ji = ub ? lat.index_of(*ub) : -1;
      if (ji < 0) throw std::logic_error("enumerated family has no join");
      lat.join_table[i][j] = ji;
    }

  auto expected = expected_closed_ideals(a);
  if (expected) {
    std::set<std::string> want, got;
    for (const auto& e : *expected) want.insert(e.key());
    for (const auto& g : lat.nodes) got.insert(g.key());
    if (want == got) {
      lat.completeness = LatticeCompleteness::Complete;
      lat.note = "matches the structural enumeration (" + std::to_string(m) + " closed ideals)";
    } else if (std::includes(want.begin(), want.end(), got.begin(), got.end())) {
      lat.completeness = LatticeCompleteness::PossiblyIncomplete;
      lat.note = "family seeds reach " + std::to_string(got.size()) + " of " +
                 std::to_string(want.size()) + " structurally expected closed ideals";
    } else {
      lat.completeness = LatticeCompleteness::PossiblyIncomplete;
      lat.note = "enumeration disagrees with the structural expectation";
    }
  } else {
    lat.completeness = LatticeCompleteness::PossiblyIncomplete;
    lat.note = join_gap
                   ? "no structural certificate; at least one join carried a sandwich gap"
                   : "no structural completeness certificate for this construction";
  }
  return lat;
}

std::optional<std::vector<StarIdeal>> expected_closed_ideals(const AlgebraPtr& a) {
  const int n = a->dim();
  auto finish = [](std::vector<StarIdeal> v) {
    std::sort(v.begin(), v.end(), [](const StarIdeal& x, const StarIdeal& y) {
      if (x.dim() != y.dim()) return x.dim() < y.dim();
      return x.key() < y.key();
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const StarIdeal& x, const StarIdeal& y) { return x == y; }),
            v.end());
    return std::optional<std::vector<StarIdeal>>(std::move(v));
  };

  const Provenance& prov = a->provenance();
  if (const auto* st = std::get_if<StandardTag>(&prov)) {
    std::vector<StarIdeal> out;
    switch (st->kind) {
      case StandardKind::Matrix:
        out.push_back(StarIdeal::zero(a));
        out.push_back(StarIdeal::whole(a));
        break;
      case StandardKind::FunctionPoints:
        for (int mask = 0; mask < (1 << st->n); ++mask) {
          std::vector<std::vector<Complex>> rows;
          for (int p = 0; p < st->n; ++p)
            if (!((mask >> p) & 1)) rows.push_back(a->basis_vector(p));
          out.push_back(StarIdeal::from_kernel(a, rows_or_empty(rows, n)));
        }
        break;
      case StandardKind::Grassmann: {
        std::vector<std::vector<Complex>> rows;
        for (int m = 1; m < (1 << st->n); ++m) rows.push_back(a->basis_vector(m));
        out.push_back(StarIdeal::from_kernel(a, rows_or_empty(rows, n)));
        out.push_back(StarIdeal::whole(a));
        break;
      }
      case StandardKind::ZeroMult:
        out.push_back(StarIdeal::whole(a));
        break;
    }
    return finish(std::move(out));
  }

  if (const auto* mo = std::get_if<MatrixOverTag>(&prov)) {
    auto base = expected_closed_ideals(mo->base);
    if (!base) return std::nullopt;
    const int nb = mo->base->dim();
    std::vector<StarIdeal> out;
    for (const auto& bi : *base) {
      std::vector<std::vector<Complex>> rows;
      for (int r = 0; r < mo->n; ++r)
        for (int s = 0; s < mo->n; ++s)
          for (int t = 0; t < bi.dim(); ++t) {
            std::vector<Complex> v(n);
            for (int k = 0; k < nb; ++k) v[(r * mo->n + s) * nb + k] = bi.basis().at(t, k);
            rows.push_back(std::move(v));
          }
      out.push_back(StarIdeal::from_kernel(a, rows_or_empty(rows, n)));
    }
    return finish(std::move(out));
  }

  if (const auto* ds = std::get_if<DirectSumTag>(&prov)) {
    auto le = expected_closed_ideals(ds->left);
    auto re = expected_closed_ideals(ds->right);
    if (!le || !re) return std::nullopt;
    const int nl = ds->left->dim();
    std::vector<StarIdeal> out;
    for (const auto& li : *le)
      for (const auto& ri : *re) {
        std::vector<std::vector<Complex>> rows;
        for (int r = 0; r < li.dim(); ++r) {
          std::vector<Complex> v(n);
          for (int k = 0; k < nl; ++k) v[k] = li.basis().at(r, k);
          rows.push_back(std::move(v));
        }
        for (int r = 0; r < ri.dim(); ++r) {
          std::vector<Complex> v(n);
          for (int k = 0; k + nl < n; ++k) v[nl + k] = ri.basis().at(r, k);
          rows.push_back(std::move(v));
        }
        out.push_back(StarIdeal::from_kernel(a, rows_or_empty(rows, n)));
      }
    return finish(std::move(out));
  }

  if (const auto* qt = std::get_if<QuotientTag>(&prov)) {
    auto pe = expected_closed_ideals(qt->parent);
    if (!pe) return std::nullopt;
    // The quotient lattice mirrors the parent lattice only when the divided
    // ideal is contained in the parent's minimal closed ideal; require the
    // certified lower bound to swallow it.
    std::vector<LinearFunctional> fam;
    try {
      fam = builtin_functional_family(qt->parent);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    if (fam.empty()) return std::nullopt;
    JminResult jm = jmin(qt->parent, fam);
    if (!jm.lower.contains(StarIdeal::from_kernel(qt->parent, qt->ideal)))
      return std::nullopt;
    std::vector<StarIdeal> out;
    for (const auto& pi : *pe) {
      std::vector<std::vector<Complex>> rows;
      for (int r = 0; r < pi.dim(); ++r) {
        std::vector<Complex> img(n);
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < qt->parent->dim(); ++v)
            img[u] = img[u] + qt->proj.at(u, v) * pi.basis().at(r, v);
        rows.push_back(std::move(img));
      }
      out.push_back(StarIdeal::from_kernel(a, rows_or_empty(rows, n)));
    }
    return finish(std::move(out));
  }

  if (const auto* ct = std::get_if<CompressionTag>(&prov)) {
    const auto* bs = std::get_if<StandardTag>(&ct->base->provenance());
    if (!bs || bs->kind != StandardKind::FunctionPoints) return std::nullopt;
    // The compression splits over the points into matrix blocks, so a closed
    // ideal is exactly a vanishing constraint on a subset of points.
    const int k = bs->n;
    std::vector<StarIdeal> out;
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<std::vector<Complex>> cons;
      for (int p = 0; p < k; ++p) {
        if (!((mask >> p) & 1)) continue;
        for (int r = 0; r < ct->n; ++r)
          for (int s = 0; s < ct->n; ++s) {
            std::vector<Complex> row(n);
            for (int t = 0; t < n; ++t) row[t] = ct->embed.at(t, (r * ct->n + s) * k + p);
            cons.push_back(std::move(row));
          }
      }
      out.push_back(StarIdeal::from_kernel(a, nullspace(rows_or_empty(cons, n))));
    }
    return finish(std::move(out));
  }

  return std::nullopt;
}

std::string export_hasse_dot(const ClosedIdealLattice& lat) {
  auto esc = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  std::ostringstream os;
  os << "digraph closed_ideals {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontname=\"Helvetica\"];\n";
  os << "  label=\"closed *-ideals of " << esc(lat.alg->name()) << " ("
     << (lat.completeness == LatticeCompleteness::Complete ? "complete"
                                                           : "possibly incomplete")
     << ")\";\n";
  for (size_t i = 0; i < lat.nodes.size(); ++i)
    os << "  n" << i << " [label=\"dim " << lat.nodes[i].dim() << "\\n#"
       << lat.nodes[i].short_hash() << "\"];\n";
  for (const auto& [lo, hi] : lat.covers) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

std::optional<std::vector<int>> lattice_isomorphism(const ClosedIdealLattice& x,
                                                    const ClosedIdealLattice& y) {
  const int n = static_cast<int>(x.nodes.size());
  if (n != static_cast<int>(y.nodes.size())) return std::nullopt;

  auto signature = [](const ClosedIdealLattice& l, int i) {
    std::array<int, 4> s{0, 0, 0, 0};
    for (size_t k = 0; k < l.nodes.size(); ++k) {
      if (l.leq[k][i]) ++s[0];
      if (l.leq[i][k]) ++s[1];
    }
    for (const auto& [lo, hi] : l.covers) {
      if (lo == i) ++s[2];
      if (hi == i) ++s[3];
    }
    return s;
  };
  std::vector<std::array<int, 4>> sx(n), sy(n);
  for (int i = 0; i < n; ++i) sx[i] = signature(x, i);
  for (int i = 0; i < n; ++i) sy[i] = signature(y, i);
  {
    auto a = sx, b = sy;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || sx[i] != sy[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = (x.leq[i][k] == y.leq[j][map[k]]) && (x.leq[k][i] == y.leq[map[k]][j]);
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (place(i + 1)) return true;
      used[j] = false;
      map[i] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return map;
}

bool lattices_isomorphic(const ClosedIdealLattice& x, const ClosedIdealLattice& y) {
  return lattice_isomorphism(x, y).has_value();
}

}  // namespace starkit
