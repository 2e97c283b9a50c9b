// Batch front-end: parse a workspace file, run one command (or the
// workspace's own command list), print a stable plain-text report and
// optionally a JSON mirror and a DOT diagram.
//
// Exit codes: 0 computed, 1 refutation found (with witness), 2 input error,
// 3 inconclusive / unknown outcome.  `run` exits with the maximum over its
// commands.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "starkit/io.hpp"

using nlohmann::ordered_json;
using namespace starkit;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommandResult {
  std::string text;
  ordered_json json = ordered_json::object();
  int code = 0;
};

ordered_json jvec(const std::vector<Complex>& v) {
  ordered_json a = ordered_json::array();
  for (const Complex& z : v) a.push_back(z.str());
  return a;
}

ordered_json jrows(const CMat& m) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
  return a;
}

void put_rows(std::ostringstream& os, const CMat& m, const char* indent = "  ") {
  if (m.rows() == 0) {
    os << indent << "(none)\n";
    return;
  }
  for (int i = 0; i < m.rows(); ++i) os << indent << vector_literal(m.row(i)) << "\n";
}

std::string join_tokens(const std::vector<std::string>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + t[i];
  return s;
}

bool span_contains(const CMat& big, const CMat& small) {
  if (small.rows() == 0) return true;
  if (big.rows() == 0) return false;
  return row_space(big).rows() == row_space(vstack(big, small)).rows();
}

std::string algebra_line(const NamedAlgebra& a) {
  return a.name + " (dim " + std::to_string(a.alg->dim()) + ", ring " +
         ring_name(a.alg->ring()) + ")";
}

std::string degeneracy_name(Degeneracy d) {
  switch (d) {
    case Degeneracy::StronglyNonDegenerate: return "strongly non-degenerate";
    case Degeneracy::NonDegenerate: return "non-degenerate";
    default: return "degenerate";
  }
}

const NamedAlgebra& need_algebra(const WorkspaceSpec& w, const std::string& name) {
  const NamedAlgebra* a = w.find_algebra(name);
  if (!a) throw std::invalid_argument("unknown algebra '" + name + "'");
  return *a;
}

const NamedFunctional& need_functional(const WorkspaceSpec& w, const std::string& name) {
  const NamedFunctional* f = w.find_functional(name);
  if (!f) throw std::invalid_argument("unknown functional '" + name + "'");
  return *f;
}

const NamedIdeal& need_ideal(const WorkspaceSpec& w, const std::string& name) {
  const NamedIdeal* i = w.find_ideal(name);
  if (!i) throw std::invalid_argument("unknown ideal '" + name + "'");
  return *i;
}

const NamedBimodule& need_bimodule(const WorkspaceSpec& w, const std::string& name) {
  const NamedBimodule* b = w.find_bimodule(name);
  if (!b) throw std::invalid_argument("unknown bimodule '" + name + "'");
  return *b;
}

std::vector<LinearFunctional> rebuild_over(const std::vector<LinearFunctional>& fam,
                                           const AlgebraPtr& alg) {
  std::vector<LinearFunctional> out;
  out.reserve(fam.size());
  for (const LinearFunctional& f : fam) out.emplace_back(alg, f.values());
  return out;
}

// Family for one side of a bimodule, whose algebra need not be a named
// workspace entry: a requested family is used when its algebra has the same
// presentation; otherwise a uniquely matching declared family; otherwise the
// built-in family.
std::vector<LinearFunctional> side_family(const WorkspaceSpec& w, const AlgebraPtr& alg,
                                          const std::string& requested, bool* matched,
                                          std::string* desc) {
  auto describe = [&](const std::string& label, const std::vector<LinearFunctional>& fam) {
    *desc = label + ", " + std::to_string(fam.size()) + " functional(s), fingerprint " +
            family_fingerprint(fam);
  };
  if (!requested.empty()) {
    const NamedFamily* f = w.find_family(requested);
    const NamedAlgebra* fa = f ? w.find_algebra(f->algebra) : nullptr;
    if (f && fa && same_presentation(fa->alg, alg)) {
      *matched = true;
      std::vector<LinearFunctional> fam = rebuild_over(materialize_family(w, *f), alg);
      describe(f->builtin ? f->name + " (builtin)" : f->name, fam);
      return fam;
    }
  }
  const NamedFamily* pick = nullptr;
  int hits = 0;
  for (const NamedFamily& f : w.families) {
    const NamedAlgebra* fa = w.find_algebra(f.algebra);
    if (fa && same_presentation(fa->alg, alg)) {
      pick = &f;
      ++hits;
    }
  }
  if (hits > 1)
    throw std::invalid_argument("several families match " + alg->name() +
                                "; pass --family to choose one");
  if (pick) {
    std::vector<LinearFunctional> fam = rebuild_over(materialize_family(w, *pick), alg);
    describe(pick->builtin ? pick->name + " (builtin)" : pick->name, fam);
    return fam;
  }
  std::vector<LinearFunctional> fam = builtin_functional_family(alg);
  describe("builtin", fam);
  return fam;
}

CMat mat_combine(const std::vector<CMat>& mats, const std::vector<Complex>& coeff) {
  CMat out = mats.empty() ? CMat(0, 0) : CMat(mats[0].rows(), mats[0].cols());
  for (size_t k = 0; k < mats.size(); ++k)
    if (!coeff[k].is_zero()) out = out + mats[k].scaled(coeff[k]);
  return out;
}

// ---------------------------------------------------------------------------
// validate

std::vector<Complex> random_vector(std::mt19937_64& gen, int n) {
  std::vector<Complex> v(n);
  for (int k = 0; k < n; ++k) {
    int re = static_cast<int>(gen() % 5) - 2;
    int im = static_cast<int>(gen() % 5) - 2;
    v[k] = Complex(Ordered(re), Ordered(im));
  }
  return v;
}

CommandResult cmd_validate(const WorkspaceSpec& w, uint64_t seed) {
  CommandResult r;
  std::ostringstream os;
  os << "ring: " << ring_name(w.ring) << "\n";
  r.json["ring"] = ring_name(w.ring);

  std::mt19937_64 gen(seed);
  constexpr int kAlgebraSweeps = 25;
  constexpr int kBimoduleSweeps = 10;
  bool all_ok = true;
  int sweep_failures = 0;

  ordered_json jalgs = ordered_json::array();
  for (const NamedAlgebra& a : w.algebras) {
    ValidationReport rep = a.alg->validate();
    os << "algebra " << algebra_line(a) << ": " << (rep.ok() ? "ok" : "INVALID") << "\n";
    for (const AxiomViolation& v : rep.violations) os << "  " << v.axiom << ": " << v.detail << "\n";
    int local = 0;
    if (rep.ok()) {
      const int n = a.alg->dim();
      for (int s = 0; s < kAlgebraSweeps; ++s) {
        std::vector<Complex> x = random_vector(gen, n), y = random_vector(gen, n),
                             z = random_vector(gen, n);
        const auto xy = a.alg->multiply(x, y);
        if (a.alg->multiply(xy, z) != a.alg->multiply(x, a.alg->multiply(y, z))) ++local;
        if (a.alg->star(xy) != a.alg->multiply(a.alg->star(y), a.alg->star(x))) ++local;
        if (a.alg->star(a.alg->star(x)) != x) ++local;
      }
      if (local) os << "  random sweep found " << local << " inconsistent sample(s)\n";
    }
    sweep_failures += local;
    all_ok = all_ok && rep.ok() && local == 0;
    ordered_json ja;
    ja["name"] = a.name;
    ja["dim"] = a.alg->dim();
    ja["ok"] = rep.ok() && local == 0;
    ordered_json jv = ordered_json::array();
    for (const AxiomViolation& v : rep.violations) jv.push_back(v.axiom + ": " + v.detail);
    ja["violations"] = jv;
    jalgs.push_back(ja);
  }
  r.json["algebras"] = jalgs;

  ordered_json jmods = ordered_json::array();
  for (const NamedBimodule& b : w.bimodules) {
    ValidationReport rep = validate_bimodule(b.mod);
    os << "bimodule " << b.name << " (" << b.mod.left_alg->name() << " | "
       << b.mod.right_alg->name() << ", dim " << b.mod.dim << "): "
       << (rep.ok() ? "ok" : "INVALID") << "\n";
    for (const AxiomViolation& v : rep.violations) os << "  " << v.axiom << ": " << v.detail << "\n";
    int local = 0;
    if (rep.ok() && b.mod.dim > 0) {
      const int nb = b.mod.left_alg->dim(), na = b.mod.right_alg->dim();
      for (int s = 0; s < kBimoduleSweeps; ++s) {
        std::vector<Complex> b1 = random_vector(gen, nb), b2 = random_vector(gen, nb);
        std::vector<Complex> a1 = random_vector(gen, na), a2 = random_vector(gen, na);
        CMat lb1 = mat_combine(b.mod.left_act, b1), lb2 = mat_combine(b.mod.left_act, b2);
        CMat ra1 = mat_combine(b.mod.right_act, a1), ra2 = mat_combine(b.mod.right_act, a2);
        if (mat_combine(b.mod.left_act, b.mod.left_alg->multiply(b1, b2)) != lb1 * lb2) ++local;
        if (mat_combine(b.mod.right_act, b.mod.right_alg->multiply(a1, a2)) != ra2 * ra1) ++local;
        if (lb1 * ra1 != ra1 * lb1) ++local;
      }
      if (local) os << "  random sweep found " << local << " inconsistent sample(s)\n";
    }
    sweep_failures += local;
    all_ok = all_ok && rep.ok() && local == 0;
    ordered_json jb;
    jb["name"] = b.name;
    jb["dim"] = b.mod.dim;
    jb["ok"] = rep.ok() && local == 0;
    ordered_json jv = ordered_json::array();
    for (const AxiomViolation& v : rep.violations) jv.push_back(v.axiom + ": " + v.detail);
    jb["violations"] = jv;
    jmods.push_back(jb);
  }
  r.json["bimodules"] = jmods;

  os << "random sweeps: " << kAlgebraSweeps << " per algebra, " << kBimoduleSweeps
     << " per bimodule, seed " << seed << "\n";
  os << "result: " << (all_ok ? "all objects valid" : "violations found") << "\n";
  ordered_json js;
  js["seed"] = seed;
  js["per_algebra"] = kAlgebraSweeps;
  js["per_bimodule"] = kBimoduleSweeps;
  js["failures"] = sweep_failures;
  r.json["random_sweeps"] = js;
  r.json["ok"] = all_ok;
  r.text = os.str();
  r.code = all_ok ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// gns

CommandResult cmd_gns(const WorkspaceSpec& w, const std::string& fname) {
  CommandResult r;
  std::ostringstream os;
  const NamedFunctional& nf = need_functional(w, fname);
  const NamedAlgebra& na = need_algebra(w, nf.algebra);
  const LinearFunctional& omega = nf.fn;
  os << "algebra: " << algebra_line(na) << "\n";
  os << "functional: " << nf.name << " = " << vector_literal(omega.values()) << "\n";
  r.json["algebra"] = na.name;
  r.json["functional"] = nf.name;
  r.json["values"] = jvec(omega.values());

  FunctionalPositivity pos = is_positive_functional(omega);
  os << "positive: " << (pos.positive ? "yes" : "no") << "\n";
  r.json["positive"] = pos.positive;
  if (!pos.positive) {
    const PositivityWitness& wit = *pos.witness;
    Complex check = omega(na.alg->multiply(na.alg->star(wit.element), wit.element));
    if (check != wit.value) throw std::logic_error("positivity witness does not re-verify");
    os << "witness element: " << vector_literal(wit.element) << "\n";
    os << "witness value omega(x* x) = " << wit.value.str() << "\n";
    os << "witness re-verified: yes\n";
    r.json["witness"] = jvec(wit.element);
    r.json["witness_value"] = wit.value.str();
    r.text = os.str();
    r.code = 1;
    return r;
  }

  GnsResult g = gns_construct(omega);
  os << "gram form:\n";
  put_rows(os, gram_form(omega));
  os << "gelfand ideal: dim " << g.gelfand.rows() << "\n";
  put_rows(os, g.gelfand);
  os << "carrier dimension: " << g.rep.space_dim() << "\n";
  DegeneracyReport deg = degeneracy_status(g.rep);
  os << "degeneracy: " << degeneracy_name(deg.status) << "\n";
  CMat kernel = representation_kernel(g.rep);
  os << "representation kernel: dim " << kernel.rows() << "\n";
  put_rows(os, kernel);
  bool inc1 = span_contains(g.gelfand, kernel);
  os << "kernel contained in gelfand ideal: " << (inc1 ? "yes" : "NO") << "\n";
  r.json["gram"] = jrows(gram_form(omega));
  r.json["gelfand"] = jrows(g.gelfand);
  r.json["carrier_dim"] = g.rep.space_dim();
  r.json["degeneracy"] = degeneracy_name(deg.status);
  r.json["kernel"] = jrows(kernel);
  r.json["kernel_in_gelfand"] = inc1;
  bool ok = inc1;

  if (g.rep.cyclic_vector()) {
    const std::vector<Complex>& cyc = *g.rep.cyclic_vector();
    os << "cyclic vector: " << vector_literal(cyc) << "\n";
    LinearFunctional recovered = vector_state(g.rep, cyc);
    bool rec = recovered.values() == omega.values();
    os << "cyclic vector state recovers functional: " << (rec ? "yes" : "NO") << "\n";
    bool inc2 = true;
    for (int i = 0; i < g.gelfand.rows(); ++i)
      if (!omega(g.gelfand.row(i)).is_zero()) inc2 = false;
    os << "gelfand ideal contained in ker omega: " << (inc2 ? "yes" : "NO") << "\n";
    r.json["cyclic"] = jvec(cyc);
    r.json["cyclic_recovers"] = rec;
    r.json["gelfand_in_ker_omega"] = inc2;
    ok = ok && rec && inc2;
  }
  r.text = os.str();
  r.code = ok ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// jmin / closure / lattice

CommandResult cmd_jmin(const WorkspaceSpec& w, const std::string& aname,
                       const std::string& freq) {
  CommandResult r;
  std::ostringstream os;
  const NamedAlgebra& na = need_algebra(w, aname);
  std::string fdesc;
  std::vector<LinearFunctional> fam = resolve_family(w, na, freq, &fdesc);
  JminResult res = jmin(na.alg, fam);
  os << "algebra: " << algebra_line(na) << "\n";
  os << "family: " << fdesc << "\n";
  os << "status: " << (res.status == SandwichStatus::Exact ? "exact" : "gap") << "\n";
  os << "lower bound: dim " << res.lower.dim() << "\n";
  put_rows(os, res.lower.basis());
  for (const std::string& reason : res.lower_reasons) os << "  via " << reason << "\n";
  os << "upper bound (intersection of GNS kernels): dim " << res.upper.dim() << "\n";
  put_rows(os, res.upper.basis());
  r.json["algebra"] = na.name;
  r.json["family"] = fdesc;
  r.json["status"] = res.status == SandwichStatus::Exact ? "exact" : "gap";
  r.json["lower"] = jrows(res.lower.basis());
  r.json["lower_reasons"] = res.lower_reasons;
  r.json["upper"] = jrows(res.upper.basis());
  if (res.status == SandwichStatus::Exact) {
    os << "minimal closed ideal: dim " << res.upper.dim() << "\n";
    os << "trivial: " << (res.upper.is_zero() ? "yes" : "no") << "\n";
    r.json["jmin"] = jrows(res.upper.basis());
    r.json["trivial"] = res.upper.is_zero();
    r.code = 0;
  } else {
    os << "minimal closed ideal: between dim " << res.lower.dim() << " and dim "
       << res.upper.dim() << " (family-relative upper bound)\n";
    r.code = 3;
  }
  r.text = os.str();
  return r;
}

CommandResult cmd_closure(const WorkspaceSpec& w, const std::string& iname,
                          const std::string& freq) {
  CommandResult r;
  std::ostringstream os;
  const NamedIdeal& ni = need_ideal(w, iname);
  const NamedAlgebra& na = need_algebra(w, ni.algebra);
  std::string fdesc;
  std::vector<LinearFunctional> fam = resolve_family(w, na, freq, &fdesc);
  std::vector<std::vector<Complex>> gens;
  for (int i = 0; i < ni.rows.rows(); ++i) gens.push_back(ni.rows.row(i));
  StarIdeal generated = ideal_generated_by(na.alg, gens);
  ClosureResult res = closure_of(na.alg, ni.rows, fam);
  os << "algebra: " << algebra_line(na) << "\n";
  os << "family: " << fdesc << "\n";
  os << "subset: " << ni.name << " (" << ni.rows.rows() << " generator row(s))\n";
  put_rows(os, ni.rows);
  os << "generated *-ideal: dim " << generated.dim() << "\n";
  os << "status: " << (res.status == SandwichStatus::Exact ? "exact" : "gap") << "\n";
  os << "closure: dim " << res.closed().dim() << "\n";
  put_rows(os, res.closed().basis());
  r.json["algebra"] = na.name;
  r.json["family"] = fdesc;
  r.json["subset"] = jrows(ni.rows);
  r.json["generated_dim"] = generated.dim();
  r.json["status"] = res.status == SandwichStatus::Exact ? "exact" : "gap";
  r.json["closure"] = jrows(res.closed().basis());
  std::string already = "unknown";
  if (res.status == SandwichStatus::Exact)
    already = res.closed() == generated && generated.dim() == row_space(ni.rows).rows()
                  ? "yes"
                  : "no";
  os << "subset already a closed ideal: " << already << "\n";
  r.json["already_closed"] = already;
  if (res.status == SandwichStatus::Gap) {
    os << "certified lower bound: dim " << res.lower.dim() << "\n";
    put_rows(os, res.lower.basis());
    r.json["lower"] = jrows(res.lower.basis());
    r.code = 3;
  }
  r.text = os.str();
  return r;
}

CommandResult cmd_lattice(const WorkspaceSpec& w, const std::string& aname,
                          const std::string& freq, const std::string& dot_path) {
  CommandResult r;
  std::ostringstream os;
  const NamedAlgebra& na = need_algebra(w, aname);
  std::string fdesc;
  std::vector<LinearFunctional> fam = resolve_family(w, na, freq, &fdesc);
  ClosedIdealLattice lat = enumerate_closed_lattice(na.alg, fam);
  os << "algebra: " << algebra_line(na) << "\n";
  os << "family: " << fdesc << "\n";
  os << "nodes: " << lat.nodes.size() << "\n";
  os << "completeness: "
     << (lat.completeness == LatticeCompleteness::Complete ? "complete" : "possibly incomplete")
     << "\n";
  if (!lat.note.empty()) os << "note: " << lat.note << "\n";
  ordered_json jnodes = ordered_json::array();
  for (size_t k = 0; k < lat.nodes.size(); ++k) {
    const StarIdeal& node = lat.nodes[k];
    os << "node " << k << ": dim " << node.dim() << ", hash " << node.short_hash() << "\n";
    put_rows(os, node.basis());
    ordered_json jn;
    jn["index"] = k;
    jn["dim"] = node.dim();
    jn["hash"] = node.short_hash();
    jn["basis"] = jrows(node.basis());
    jnodes.push_back(jn);
  }
  os << "cover relations:\n";
  if (lat.covers.empty()) os << "  (none)\n";
  ordered_json jcov = ordered_json::array();
  for (const auto& [lo, hi] : lat.covers) {
    os << "  " << lo << " < " << hi << "\n";
    jcov.push_back(ordered_json::array({lo, hi}));
  }
  os << "bottom: node " << lat.bottom_index() << ", top: node " << lat.top_index() << "\n";
  r.json["algebra"] = na.name;
  r.json["family"] = fdesc;
  r.json["completeness"] =
      lat.completeness == LatticeCompleteness::Complete ? "complete" : "possibly incomplete";
  if (!lat.note.empty()) r.json["note"] = lat.note;
  r.json["nodes"] = jnodes;
  r.json["covers"] = jcov;
  r.json["bottom"] = lat.bottom_index();
  r.json["top"] = lat.top_index();
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path, std::ios::binary);
    if (!dot) throw std::invalid_argument("cannot write DOT file '" + dot_path + "'");
    dot << export_hasse_dot(lat);
    os << "hasse diagram written to " << dot_path << "\n";
  }
  r.text = os.str();
  r.code = lat.completeness == LatticeCompleteness::Complete ? 0 : 3;
  return r;
}

// ---------------------------------------------------------------------------
// induce / phi

CommandResult cmd_induce(const WorkspaceSpec& w, const std::string& bname,
                         const std::string& fname) {
  CommandResult r;
  std::ostringstream os;
  const NamedBimodule& nb = need_bimodule(w, bname);
  const NamedFunctional& nf = need_functional(w, fname);
  const InnerProductBimodule& mod = nb.mod;
  if (!same_presentation(nf.fn.algebra(), mod.right_alg))
    throw std::invalid_argument("functional '" + fname +
                                "' does not live on the right algebra of '" + bname + "'");
  LinearFunctional omega(mod.right_alg, nf.fn.values());
  FunctionalPositivity pos = is_positive_functional(omega);
  if (!pos.positive)
    throw std::invalid_argument("functional '" + fname +
                                "' is not positive; there is no GNS representation to induce");
  GnsResult g = gns_construct(omega);
  os << "bimodule: " << mod.name << " (left " << mod.left_alg->name() << ", right "
     << mod.right_alg->name() << ", dim " << mod.dim << ")\n";
  os << "representation: GNS of " << nf.name << ", carrier dim " << g.rep.space_dim() << "\n";
  InducedResult ind = rieffel_induce(mod, g.rep);
  os << "induction: " << ind.note << "\n";
  os << "induced form positive: " << (ind.positive ? "yes" : "no") << "\n";
  r.json["bimodule"] = mod.name;
  r.json["functional"] = nf.name;
  r.json["rep_dim"] = g.rep.space_dim();
  r.json["note"] = ind.note;
  r.json["positive"] = ind.positive;
  if (!ind.positive) {
    os << "witness (coordinates in X tensor H): " << vector_literal(*ind.witness) << "\n";
    os << "witness value: " << ind.witness_value.str() << " (negative)\n";
    os << "witness re-verified against the free form: yes\n";
    r.json["witness"] = jvec(*ind.witness);
    r.json["witness_value"] = ind.witness_value.str();
    r.text = os.str();
    r.code = 1;
    return r;
  }
  const Representation& rep = *ind.rep;
  os << "induced representation: carrier dim " << rep.space_dim() << " over "
     << mod.left_alg->name() << "\n";
  os << "carrier gram:\n";
  put_rows(os, rep.gram());
  ordered_json jact = ordered_json::array();
  for (int i = 0; i < mod.left_alg->dim(); ++i) {
    os << "action of " << mod.left_alg->labels()[i] << ":\n";
    put_rows(os, rep.action(i));
    jact.push_back(jrows(rep.action(i)));
  }
  os << "validated: ok\n";
  r.json["induced_dim"] = rep.space_dim();
  r.json["gram"] = jrows(rep.gram());
  r.json["action"] = jact;
  r.text = os.str();
  r.code = 0;
  return r;
}

CommandResult cmd_phi(const WorkspaceSpec& w, const std::string& bname,
                      const std::string& iname) {
  CommandResult r;
  std::ostringstream os;
  const NamedBimodule& nb = need_bimodule(w, bname);
  const NamedIdeal& ni = need_ideal(w, iname);
  const NamedAlgebra& na = need_algebra(w, ni.algebra);
  const InnerProductBimodule& mod = nb.mod;
  if (!same_presentation(na.alg, mod.right_alg))
    throw std::invalid_argument("ideal '" + iname +
                                "' does not live in the right algebra of '" + bname + "'");
  std::vector<std::vector<Complex>> gens;
  for (int i = 0; i < ni.rows.rows(); ++i) gens.push_back(ni.rows.row(i));
  StarIdeal src = ideal_generated_by(mod.right_alg, gens);
  StarIdeal out = phi_map(mod, src);
  os << "bimodule: " << mod.name << " (left " << mod.left_alg->name() << ", right "
     << mod.right_alg->name() << ", dim " << mod.dim << ")\n";
  os << "source ideal (generated by " << ni.name << "): dim " << src.dim() << "\n";
  put_rows(os, src.basis());
  os << "transported ideal in " << mod.left_alg->name() << ": dim " << out.dim() << "\n";
  put_rows(os, out.basis());
  r.json["bimodule"] = mod.name;
  r.json["ideal"] = ni.name;
  r.json["source"] = jrows(src.basis());
  r.json["transported"] = jrows(out.basis());
  r.text = os.str();
  r.code = 0;
  return r;
}

// ---------------------------------------------------------------------------
// morita-verify / diff-invariants

CommandResult cmd_morita(const WorkspaceSpec& w, const std::string& bname,
                         const std::string& freq) {
  CommandResult r;
  std::ostringstream os;
  const NamedBimodule& nb = need_bimodule(w, bname);
  const InnerProductBimodule& mod = nb.mod;
  if (!freq.empty() && !w.find_family(freq))
    throw std::invalid_argument("unknown family '" + freq + "'");
  bool ml = false, mr = false;
  std::string dl, dr;
  std::vector<LinearFunctional> lf = side_family(w, mod.left_alg, freq, &ml, &dl);
  std::vector<LinearFunctional> rf = side_family(w, mod.right_alg, freq, &mr, &dr);
  if (!freq.empty() && !ml && !mr)
    throw std::invalid_argument("family '" + freq + "' does not match either side of '" +
                                bname + "'");
  MoritaReport rep = verify_equivalence(mod, lf, rf);
  os << "bimodule: " << mod.name << " (left " << mod.left_alg->name() << " dim "
     << mod.left_alg->dim() << ", right " << mod.right_alg->name() << " dim "
     << mod.right_alg->dim() << ", module dim " << mod.dim << ")\n";
  os << "left family: " << dl << "\n";
  os << "right family: " << dr << "\n";
  os << rep.str();
  if (rep.p_witness)
    os << "positivity witness (coordinates in X tensor H): " << vector_literal(*rep.p_witness)
       << "\n";
  r.json["bimodule"] = mod.name;
  r.json["left_family"] = dl;
  r.json["right_family"] = dr;
  r.json["verdict"] = morita_verdict_name(rep.verdict);
  r.json["axioms_ok"] = rep.axioms_ok;
  r.json["full_right"] = rep.full_right;
  r.json["full_left"] = rep.full_left;
  r.json["p_structural"] = rep.property_p_structural;
  r.json["q_structural"] = rep.property_q_structural;
  r.json["p_checked"] = rep.p_checked;
  r.json["q_checked"] = rep.q_checked;
  if (rep.p_witness) {
    r.json["p_witness"] = jvec(*rep.p_witness);
    if (rep.p_witness_rep) r.json["p_witness_rep"] = *rep.p_witness_rep;
  }
  if (rep.jmin_trivial_left) r.json["jmin_trivial_left"] = *rep.jmin_trivial_left;
  if (rep.jmin_trivial_right) r.json["jmin_trivial_right"] = *rep.jmin_trivial_right;
  r.json["notes"] = rep.notes;
  r.text = os.str();
  switch (rep.verdict) {
    case MoritaVerdict::Verified: r.code = 0; break;
    case MoritaVerdict::Refuted: r.code = 1; break;
    default: r.code = 3; break;
  }
  return r;
}

CommandResult cmd_diff(const WorkspaceSpec& w, const std::string& an, const std::string& bn,
                       const std::string& freq) {
  CommandResult r;
  std::ostringstream os;
  const NamedAlgebra& na = need_algebra(w, an);
  const NamedAlgebra& nb = need_algebra(w, bn);
  std::string reqa, reqb;
  if (!freq.empty()) {
    const NamedFamily* f = w.find_family(freq);
    if (!f) throw std::invalid_argument("unknown family '" + freq + "'");
    if (f->algebra == na.name) reqa = freq;
    if (f->algebra == nb.name) reqb = freq;
    if (reqa.empty() && reqb.empty())
      throw std::invalid_argument("family '" + freq + "' is declared over " + f->algebra +
                                  ", which is neither side");
  }
  std::string da, db;
  std::vector<LinearFunctional> fa = resolve_family(w, na, reqa, &da);
  std::vector<LinearFunctional> fb = resolve_family(w, nb, reqb, &db);
  InvariantDiff diff = diff_invariants(na.alg, fa, nb.alg, fb);
  os << "left: " << algebra_line(na) << ", family " << da << "\n";
  os << "right: " << algebra_line(nb) << ", family " << db << "\n";
  os << "hypotheses (idempotent, non-degenerate): "
     << (diff.hypotheses_ok ? "satisfied" : "not satisfied") << "\n";
  ordered_json jitems = ordered_json::array();
  bool all_settled = true;
  for (const InvariantItem& it : diff.items) {
    os << it.invariant << ": " << it.left_value << " vs " << it.right_value << " -- "
       << (it.agree ? "agree" : "differ") << " ("
       << (it.certified ? "certified" : "not certified") << ")\n";
    all_settled = all_settled && it.agree && it.certified;
    ordered_json ji;
    ji["invariant"] = it.invariant;
    ji["left"] = it.left_value;
    ji["right"] = it.right_value;
    ji["agree"] = it.agree;
    ji["certified"] = it.certified;
    jitems.push_back(ji);
  }
  os << "summary: " << diff.summary << "\n";
  r.json["left"] = na.name;
  r.json["right"] = nb.name;
  r.json["left_family"] = da;
  r.json["right_family"] = db;
  r.json["hypotheses_ok"] = diff.hypotheses_ok;
  r.json["fully_certified"] = diff.fully_certified;
  r.json["refuted"] = diff.refuted;
  r.json["items"] = jitems;
  r.json["summary"] = diff.summary;
  r.text = os.str();
  r.code = diff.refuted ? 1 : (all_settled ? 0 : 3);
  return r;
}

// ---------------------------------------------------------------------------
// run

CommandResult cmd_run(const WorkspaceSpec& w, uint64_t seed) {
  CommandResult r;
  std::ostringstream os;
  if (w.commands.empty()) {
    os << "workspace declares no commands\n";
    r.json["commands"] = ordered_json::array();
    r.text = os.str();
    return r;
  }
  ordered_json jcmds = ordered_json::array();
  int worst = 0;
  for (const std::vector<std::string>& tokens : w.commands) {
    const std::string& c = tokens[0];
    os << "=== " << join_tokens(tokens) << " ===\n";
    CommandResult sub;
    try {
      if (c == "validate") sub = cmd_validate(w, seed);
      else if (c == "gns") sub = cmd_gns(w, tokens[1]);
      else if (c == "jmin") sub = cmd_jmin(w, tokens[1], "");
      else if (c == "closure") sub = cmd_closure(w, tokens[1], "");
      else if (c == "lattice") sub = cmd_lattice(w, tokens[1], "", "");
      else if (c == "induce") sub = cmd_induce(w, tokens[1], tokens[2]);
      else if (c == "phi") sub = cmd_phi(w, tokens[1], tokens[2]);
      else if (c == "morita-verify") sub = cmd_morita(w, tokens[1], "");
      else if (c == "diff-invariants") sub = cmd_diff(w, tokens[1], tokens[2], "");
      else throw std::invalid_argument("unknown command '" + c + "'");
    } catch (const std::invalid_argument& e) {
      sub.text = std::string("error: ") + e.what() + "\n";
      sub.json = ordered_json::object();
      sub.json["error"] = e.what();
      sub.code = 2;
    }
    os << sub.text << "exit: " << sub.code << "\n";
    ordered_json jc;
    jc["command"] = join_tokens(tokens);
    jc["report"] = sub.json;
    jc["exit"] = sub.code;
    jcmds.push_back(jc);
    worst = std::max(worst, sub.code);
  }
  r.json["commands"] = jcmds;
  r.text = os.str();
  r.code = worst;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for finite-dimensional *-algebras over ordered rings"};
  app.fallthrough();
  app.set_version_flag("--version", std::string("starkit ") + kVersion);

  std::string workspace_path, ring_str, family, dot_path, json_path;
  uint64_t seed = 0;
  app.add_option("--workspace,-w", workspace_path, "workspace file to load")->required();
  app.add_option("--ring", ring_str, "override the workspace scalar ring")
      ->check(CLI::IsMember({"int", "rat", "ratfun"}));
  app.add_option("--family", family, "named functional family to use");
  app.add_option("--dot", dot_path, "write a Hasse diagram (lattice only)");
  app.add_option("--json", json_path, "write a JSON report to this path");
  app.add_option("--seed", seed, "seed for randomized validation sweeps");
  app.require_subcommand(1);

  std::string arg1, arg2;
  CLI::App* c_validate = app.add_subcommand("validate", "check every declared object's axioms");
  CLI::App* c_gns = app.add_subcommand("gns", "GNS representation of a functional");
  c_gns->add_option("functional", arg1, "functional name")->required();
  CLI::App* c_jmin = app.add_subcommand("jmin", "minimal closed *-ideal sandwich");
  c_jmin->add_option("algebra", arg1, "algebra name")->required();
  CLI::App* c_closure = app.add_subcommand("closure", "closure of a declared subset");
  c_closure->add_option("ideal", arg1, "ideal name")->required();
  CLI::App* c_lattice = app.add_subcommand("lattice", "lattice of closed *-ideals");
  c_lattice->add_option("algebra", arg1, "algebra name")->required();
  CLI::App* c_induce = app.add_subcommand("induce", "induce a GNS representation through a bimodule");
  c_induce->add_option("bimodule", arg1, "bimodule name")->required();
  c_induce->add_option("functional", arg2, "functional on the right algebra")->required();
  CLI::App* c_phi = app.add_subcommand("phi", "transport an ideal through a bimodule");
  c_phi->add_option("bimodule", arg1, "bimodule name")->required();
  c_phi->add_option("ideal", arg2, "ideal in the right algebra")->required();
  CLI::App* c_morita = app.add_subcommand("morita-verify", "equivalence-bimodule verdict");
  c_morita->add_option("bimodule", arg1, "bimodule name")->required();
  CLI::App* c_diff = app.add_subcommand("diff-invariants", "compare Morita invariants");
  c_diff->add_option("left", arg1, "first algebra")->required();
  c_diff->add_option("right", arg2, "second algebra")->required();
  CLI::App* c_run = app.add_subcommand("run", "execute the workspace command list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::optional<Ring> ring_override;
    if (ring_str == "int") ring_override = Ring::Integer;
    else if (ring_str == "rat") ring_override = Ring::Rational;
    else if (ring_str == "ratfun") ring_override = Ring::RatFun;

    if (!dot_path.empty() && !c_lattice->parsed())
      throw std::invalid_argument("--dot is only meaningful for the lattice command");
    if (!family.empty() && (c_validate->parsed() || c_gns->parsed() || c_induce->parsed() ||
                            c_phi->parsed() || c_run->parsed()))
      throw std::invalid_argument("--family is not meaningful for this command");

    WorkspaceSpec w = load_workspace(workspace_path, ring_override);

    CommandResult res;
    std::string cmdline;
    if (c_validate->parsed()) {
      cmdline = "validate";
      res = cmd_validate(w, seed);
    } else if (c_gns->parsed()) {
      cmdline = "gns " + arg1;
      res = cmd_gns(w, arg1);
    } else if (c_jmin->parsed()) {
      cmdline = "jmin " + arg1;
      res = cmd_jmin(w, arg1, family);
    } else if (c_closure->parsed()) {
      cmdline = "closure " + arg1;
      res = cmd_closure(w, arg1, family);
    } else if (c_lattice->parsed()) {
      cmdline = "lattice " + arg1;
      res = cmd_lattice(w, arg1, family, dot_path);
    } else if (c_induce->parsed()) {
      cmdline = "induce " + arg1 + " " + arg2;
      res = cmd_induce(w, arg1, arg2);
    } else if (c_phi->parsed()) {
      cmdline = "phi " + arg1 + " " + arg2;
      res = cmd_phi(w, arg1, arg2);
    } else if (c_morita->parsed()) {
      cmdline = "morita-verify " + arg1;
      res = cmd_morita(w, arg1, family);
    } else if (c_diff->parsed()) {
      cmdline = "diff-invariants " + arg1 + " " + arg2;
      res = cmd_diff(w, arg1, arg2, family);
    } else {
      cmdline = "run";
      res = cmd_run(w, seed);
    }

    std::ostringstream head;
    head << "# starkit " << kVersion << "\n";
    head << "command: " << cmdline << "\n";
    std::cout << head.str() << res.text << "exit: " << res.code << "\n";

    if (!json_path.empty()) {
      ordered_json out;
      out["tool"] = "starkit";
      out["version"] = kVersion;
      out["command"] = cmdline;
      out.update(res.json);
      out["exit"] = res.code;
      std::ofstream jf(json_path, std::ios::binary);
      if (!jf) throw std::invalid_argument("cannot write JSON file '" + json_path + "'");
      jf << out.dump(2) << "\n";
    }
    return res.code;
  } catch (const WorkspaceError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 2;
  }
}
