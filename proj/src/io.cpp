#include "starkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "starkit/positivity.hpp"

namespace starkit {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// Split at top-level commas, tracking () and [] nesting.
std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int_token(const std::string& t, int lo, int hi, const std::string& what) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + " expects an integer, got '" + t + "'");
  }
  if (pos != t.size()) throw std::invalid_argument(what + " expects an integer, got '" + t + "'");
  if (v < lo || v > hi)
    throw std::invalid_argument(what + " must be between " + std::to_string(lo) + " and " +
                                std::to_string(hi) + ", got " + t);
  return static_cast<int>(v);
}

}  // namespace

std::vector<Complex> parse_vector_literal(const std::string& text, int expected, Ring ring) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("expected a vector literal [a, b, ...], got '" + text + "'");
  std::string inner = trim(s.substr(1, s.size() - 2));
  std::vector<Complex> out;
  if (!inner.empty())
    for (const std::string& piece : split_commas(inner)) out.push_back(parse_complex_in(trim(piece), ring));
  if (expected >= 0 && static_cast<int>(out.size()) != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(out.size()));
  return out;
}

CMat parse_matrix_literal(const std::string& text, int rows, int cols, Ring ring) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("expected a matrix literal [[..], [..]], got '" + text + "'");
  std::string inner = trim(s.substr(1, s.size() - 2));
  std::vector<std::vector<Complex>> rws;
  if (!inner.empty())
    for (const std::string& piece : split_commas(inner))
      rws.push_back(parse_vector_literal(trim(piece), cols, ring));
  if (rows >= 0 && static_cast<int>(rws.size()) != rows)
    throw std::invalid_argument("expected " + std::to_string(rows) + " rows, got " +
                                std::to_string(rws.size()));
  if (rws.empty()) return CMat(0, std::max(cols, 0));
  return CMat::from_rows(rws);
}

std::string vector_literal(const std::vector<Complex>& v) {
  std::string out = "[";
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].str();
  }
  return out + "]";
}

std::string matrix_literal(const CMat& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += vector_literal(m.row(i));
  }
  return out + "]";
}

const NamedAlgebra* WorkspaceSpec::find_algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}
const NamedFunctional* WorkspaceSpec::find_functional(const std::string& name) const {
  for (const auto& f : functionals)
    if (f.name == name) return &f;
  return nullptr;
}
const NamedFamily* WorkspaceSpec::find_family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}
const NamedIdeal* WorkspaceSpec::find_ideal(const std::string& name) const {
  for (const auto& i : ideals)
    if (i.name == name) return &i;
  return nullptr;
}
const NamedBimodule* WorkspaceSpec::find_bimodule(const std::string& name) const {
  for (const auto& b : bimodules)
    if (b.name == name) return &b;
  return nullptr;
}

namespace {

// Canonical block lines for the custom constructions, regenerated from the
// parsed objects so serialization is a fixed point of parse + serialize.

std::vector<std::string> algebra_block_lines(const AlgebraPtr& a) {
  std::vector<std::string> out;
  for (int i = 0; i < a->dim(); ++i)
    if (a->labels()[i] != "b" + std::to_string(i + 1))
      out.push_back("label " + std::to_string(i + 1) + " " + a->labels()[i]);
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j) {
      const auto& c = a->structure(i, j);
      bool zero = std::all_of(c.begin(), c.end(), [](const Complex& z) { return z.is_zero(); });
      if (!zero)
        out.push_back("mult " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " = " +
                      vector_literal(c));
    }
  for (int i = 0; i < a->dim(); ++i)
    out.push_back("star " + std::to_string(i + 1) + " = " +
                  vector_literal(a->star_matrix().col(i)));
  return out;
}

std::vector<std::string> projection_block_lines(const InnerProductBimodule& mod) {
  const auto* tag = std::get_if<CompressionTag>(&mod.left_alg->provenance());
  if (!tag) throw std::logic_error("projection bimodule without compression provenance");
  std::vector<std::string> out;
  const int n = tag->n, nb = tag->base->dim();
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      std::vector<Complex> e(nb);
      bool zero = true;
      for (int m = 0; m < nb; ++m) {
        e[m] = tag->q_coords[(r * n + s) * nb + m];
        zero = zero && e[m].is_zero();
      }
      if (!zero)
        out.push_back("q " + std::to_string(r + 1) + " " + std::to_string(s + 1) + " = " +
                      vector_literal(e));
    }
  return out;
}

std::vector<std::string> bimodule_block_lines(const InnerProductBimodule& mod) {
  std::vector<std::string> out;
  for (size_t i = 0; i < mod.left_act.size(); ++i)
    out.push_back("left " + std::to_string(i + 1) + " = " + matrix_literal(mod.left_act[i]));
  for (size_t j = 0; j < mod.right_act.size(); ++j)
    out.push_back("right " + std::to_string(j + 1) + " = " + matrix_literal(mod.right_act[j]));
  for (int u = 0; u < mod.dim; ++u)
    for (int v = 0; v < mod.dim; ++v)
      out.push_back("iprod_a " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " = " +
                    vector_literal(mod.iprod_a[u][v]));
  if (mod.iprod_b)
    for (int u = 0; u < mod.dim; ++u)
      for (int v = 0; v < mod.dim; ++v)
        out.push_back("iprod_b " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " = " +
                      vector_literal((*mod.iprod_b)[u][v]));
  return out;
}

struct Parser {
  const std::string& file;
  WorkspaceSpec w;
  bool ring_locked = false;   // a scalar-bearing entry was seen
  bool ring_overridden = false;

  [[noreturn]] void fail(int ln, const std::string& msg) const {
    throw WorkspaceError(file, ln, msg);
  }

  template <class Fn>
  auto guarded(int ln, Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      fail(ln, e.what());
    }
  }

  void check_fresh(int ln, const std::string& kind, const std::string& name) {
    if (!valid_name(name)) fail(ln, "invalid " + kind + " name '" + name + "'");
    bool taken = false;
    if (kind == "algebra") taken = w.find_algebra(name);
    if (kind == "functional") taken = w.find_functional(name);
    if (kind == "family") taken = w.find_family(name);
    if (kind == "ideal") taken = w.find_ideal(name);
    if (kind == "bimodule") taken = w.find_bimodule(name);
    if (taken) fail(ln, kind + " '" + name + "' is already defined");
  }

  const NamedAlgebra& need_algebra(int ln, const std::string& name) {
    const NamedAlgebra* a = w.find_algebra(name);
    if (!a) fail(ln, "unknown algebra '" + name + "'");
    return *a;
  }
};

}  // namespace

WorkspaceSpec parse_workspace_text(const std::string& text, const std::string& filename,
                                   std::optional<Ring> ring_override) {
  Parser p{filename, {}, false, ring_override.has_value()};
  if (ring_override) p.w.ring = *ring_override;

  enum class Block { None, CustomAlgebra, Ideal, Projection, CustomBimodule, Commands };
  Block block = Block::None;
  int block_line = 0;

  // Pending block state.
  std::string pend_name;
  int pend_dim = 0, pend_n = 0;
  std::map<int, std::string> pend_labels;
  std::map<std::pair<int, int>, std::vector<Complex>> pend_mult, pend_q, pend_ipa, pend_ipb;
  std::map<int, std::vector<Complex>> pend_star;
  std::map<int, CMat> pend_left, pend_right;
  const NamedAlgebra* pend_alg = nullptr;
  const NamedAlgebra* pend_left_alg = nullptr;
  const NamedAlgebra* pend_right_alg = nullptr;
  std::vector<std::vector<Complex>> pend_rows;
  std::vector<std::pair<int, std::vector<std::string>>> pending_commands;

  auto reset_pending = [&] {
    pend_name.clear();
    pend_dim = pend_n = 0;
    pend_labels.clear();
    pend_mult.clear();
    pend_q.clear();
    pend_ipa.clear();
    pend_ipb.clear();
    pend_star.clear();
    pend_left.clear();
    pend_right.clear();
    pend_alg = pend_left_alg = pend_right_alg = nullptr;
    pend_rows.clear();
  };

  auto finish_block = [&](int ln) {
    switch (block) {
      case Block::CustomAlgebra: {
        std::vector<std::string> labels(pend_dim);
        for (int i = 0; i < pend_dim; ++i) {
          auto it = pend_labels.find(i);
          labels[i] = it == pend_labels.end() ? "b" + std::to_string(i + 1) : it->second;
        }
        std::vector<std::vector<std::vector<Complex>>> structure(
            pend_dim, std::vector<std::vector<Complex>>(pend_dim,
                                                        std::vector<Complex>(pend_dim)));
        for (const auto& [ij, v] : pend_mult) structure[ij.first][ij.second] = v;
        CMat star(pend_dim, pend_dim);
        for (int i = 0; i < pend_dim; ++i) {
          auto it = pend_star.find(i);
          if (it == pend_star.end()) {
            star.at(i, i) = Complex(1);
          } else {
            for (int k = 0; k < pend_dim; ++k) star.at(k, i) = it->second[k];
          }
        }
        AlgebraPtr alg = p.guarded(ln, [&] {
          return AlgebraPresentation::create(p.w.ring, pend_name, labels, structure, star,
                                             CustomTag{});
        });
        p.w.algebras.push_back(
            {pend_name, {"custom", std::to_string(pend_dim)}, algebra_block_lines(alg), alg});
        break;
      }
      case Block::Ideal: {
        CMat rows = pend_rows.empty() ? CMat(0, pend_alg->alg->dim())
                                      : CMat::from_rows(pend_rows);
        p.w.ideals.push_back({pend_name, pend_alg->name, rows});
        break;
      }
      case Block::Projection: {
        const AlgebraPtr& base = pend_alg->alg;
        const int nb = base->dim();
        std::vector<Complex> q(static_cast<size_t>(pend_n) * pend_n * nb);
        for (const auto& [rs, v] : pend_q)
          for (int m = 0; m < nb; ++m) q[(rs.first * pend_n + rs.second) * nb + m] = v[m];
        InnerProductBimodule mod = p.guarded(
            ln, [&] { return projection_bimodule(base, pend_n, q, pend_name); });
        p.w.bimodules.push_back({pend_name,
                                 {"projection", pend_alg->name, std::to_string(pend_n)},
                                 projection_block_lines(mod),
                                 std::move(mod)});
        break;
      }
      case Block::CustomBimodule: {
        InnerProductBimodule mod;
        mod.name = pend_name;
        mod.left_alg = pend_left_alg->alg;
        mod.right_alg = pend_right_alg->alg;
        mod.dim = pend_dim;
        for (int i = 0; i < mod.left_alg->dim(); ++i) {
          auto it = pend_left.find(i);
          mod.left_act.push_back(it == pend_left.end() ? CMat(pend_dim, pend_dim) : it->second);
        }
        for (int j = 0; j < mod.right_alg->dim(); ++j) {
          auto it = pend_right.find(j);
          mod.right_act.push_back(it == pend_right.end() ? CMat(pend_dim, pend_dim)
                                                         : it->second);
        }
        mod.iprod_a.assign(pend_dim, std::vector<std::vector<Complex>>(
                                         pend_dim, std::vector<Complex>(mod.right_alg->dim())));
        for (const auto& [uv, v] : pend_ipa) mod.iprod_a[uv.first][uv.second] = v;
        if (!pend_ipb.empty()) {
          ElementTable tb(pend_dim, std::vector<std::vector<Complex>>(
                                        pend_dim, std::vector<Complex>(mod.left_alg->dim())));
          for (const auto& [uv, v] : pend_ipb) tb[uv.first][uv.second] = v;
          mod.iprod_b = std::move(tb);
        }
        p.w.bimodules.push_back({pend_name,
                                 {"custom", pend_left_alg->name, pend_right_alg->name,
                                  std::to_string(pend_dim)},
                                 bimodule_block_lines(mod),
                                 std::move(mod)});
        break;
      }
      case Block::Commands:
        break;
      case Block::None:
        break;
    }
    block = Block::None;
    reset_pending();
  };

  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (block != Block::None) {
      if (line == "}") {
        finish_block(ln);
        continue;
      }
      std::string lhs = line, rhs;
      size_t eq = line.find('=');
      if (eq != std::string::npos) {
        lhs = trim(line.substr(0, eq));
        rhs = trim(line.substr(eq + 1));
      }
      std::vector<std::string> t = split_ws(lhs);
      switch (block) {
        case Block::CustomAlgebra: {
          if (t.empty()) p.fail(ln, "empty directive");
          if (t[0] == "label" && t.size() == 3 && rhs.empty()) {
            int i = p.guarded(ln, [&] { return parse_int_token(t[1], 1, pend_dim, "label index"); });
            if (!valid_name(t[2])) p.fail(ln, "invalid label '" + t[2] + "'");
            pend_labels[i - 1] = t[2];
          } else if (t[0] == "mult" && t.size() == 3 && !rhs.empty()) {
            int i = p.guarded(ln, [&] { return parse_int_token(t[1], 1, pend_dim, "mult index"); });
            int j = p.guarded(ln, [&] { return parse_int_token(t[2], 1, pend_dim, "mult index"); });
            pend_mult[{i - 1, j - 1}] =
                p.guarded(ln, [&] { return parse_vector_literal(rhs, pend_dim, p.w.ring); });
          } else if (t[0] == "star" && t.size() == 2 && !rhs.empty()) {
            int i = p.guarded(ln, [&] { return parse_int_token(t[1], 1, pend_dim, "star index"); });
            pend_star[i - 1] =
                p.guarded(ln, [&] { return parse_vector_literal(rhs, pend_dim, p.w.ring); });
          } else {
            p.fail(ln, "expected 'label i name', 'mult i j = [..]' or 'star i = [..]'");
          }
          break;
        }
        case Block::Ideal: {
          if (rhs.empty() && line.front() == '[') {
            pend_rows.push_back(p.guarded(
                ln, [&] { return parse_vector_literal(line, pend_alg->alg->dim(), p.w.ring); }));
          } else {
            p.fail(ln, "expected a vector literal row");
          }
          break;
        }
        case Block::Projection: {
          if (t.size() == 3 && t[0] == "q" && !rhs.empty()) {
            int r = p.guarded(ln, [&] { return parse_int_token(t[1], 1, pend_n, "projection row"); });
            int s = p.guarded(
                ln, [&] { return parse_int_token(t[2], 1, pend_n, "projection column"); });
            pend_q[{r - 1, s - 1}] = p.guarded(
                ln, [&] { return parse_vector_literal(rhs, pend_alg->alg->dim(), p.w.ring); });
          } else {
            p.fail(ln, "expected 'q r s = [..]'");
          }
          break;
        }
        case Block::CustomBimodule: {
          if (t.size() == 2 && (t[0] == "left" || t[0] == "right") && !rhs.empty()) {
            const bool left = t[0] == "left";
            int n = left ? pend_left_alg->alg->dim() : pend_right_alg->alg->dim();
            int i = p.guarded(ln, [&] { return parse_int_token(t[1], 1, n, "basis index"); });
            CMat m = p.guarded(
                ln, [&] { return parse_matrix_literal(rhs, pend_dim, pend_dim, p.w.ring); });
            (left ? pend_left : pend_right)[i - 1] = m;
          } else if (t.size() == 3 && (t[0] == "iprod_a" || t[0] == "iprod_b") && !rhs.empty()) {
            int u = p.guarded(ln, [&] { return parse_int_token(t[1], 1, pend_dim, "module index"); });
            int v = p.guarded(ln, [&] { return parse_int_token(t[2], 1, pend_dim, "module index"); });
            int n = t[0] == "iprod_a" ? pend_right_alg->alg->dim() : pend_left_alg->alg->dim();
            auto& slot = t[0] == "iprod_a" ? pend_ipa : pend_ipb;
            slot[{u - 1, v - 1}] =
                p.guarded(ln, [&] { return parse_vector_literal(rhs, n, p.w.ring); });
          } else {
            p.fail(ln, "expected 'left i = [[..]]', 'right j = [[..]]' or 'iprod_a u v = [..]'");
          }
          break;
        }
        case Block::Commands:
          pending_commands.emplace_back(ln, split_ws(line));
          break;
        case Block::None:
          break;
      }
      continue;
    }

    // Top level.
    bool opens_block = false;
    if (line.back() == '{') {
      opens_block = true;
      line = trim(line.substr(0, line.size() - 1));
    }
    std::vector<std::string> t = split_ws(line);
    if (t.empty()) p.fail(ln, "stray '{'");
    const std::string& head = t[0];

    if (head == "ring") {
      if (opens_block || t.size() != 2) p.fail(ln, "expected 'ring int|rat|ratfun'");
      if (p.ring_locked) p.fail(ln, "ring must be declared before any other entry");
      Ring r;
      if (t[1] == "int") r = Ring::Integer;
      else if (t[1] == "rat") r = Ring::Rational;
      else if (t[1] == "ratfun") r = Ring::RatFun;
      else p.fail(ln, "unknown ring '" + t[1] + "' (use int, rat or ratfun)");
      if (!p.ring_overridden) p.w.ring = r;
      p.ring_locked = true;
    } else if (head == "algebra") {
      p.ring_locked = true;
      if (t.size() < 3) p.fail(ln, "expected 'algebra <name> <construction> ...'");
      p.check_fresh(ln, "algebra", t[1]);
      const std::string& kind = t[2];
      if (kind == "custom") {
        if (!opens_block || t.size() != 4) p.fail(ln, "expected 'algebra <name> custom <dim> {'");
        pend_name = t[1];
        pend_dim = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 64, "dimension"); });
        block = Block::CustomAlgebra;
        block_line = ln;
        continue;
      }
      if (opens_block) p.fail(ln, "only custom algebras take a block");
      AlgebraPtr alg;
      std::vector<std::string> recipe(t.begin() + 2, t.end());
      if (kind == "matrix" && t.size() == 4) {
        int n = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 16, "matrix size"); });
        alg = make_matrix_algebra(n, p.w.ring);
      } else if (kind == "function_points" && t.size() == 4) {
        int k = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 64, "point count"); });
        alg = make_function_points(k, p.w.ring);
      } else if (kind == "grassmann" && t.size() == 4) {
        int n = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 10, "generator count"); });
        alg = make_grassmann(n, p.w.ring);
      } else if (kind == "zero_mult" && t.size() == 4) {
        int k = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 64, "dimension"); });
        alg = make_zero_mult(k, p.w.ring);
      } else if (kind == "matrix_over" && t.size() == 5) {
        const NamedAlgebra& base = p.need_algebra(ln, t[3]);
        int n = p.guarded(ln, [&] { return parse_int_token(t[4], 1, 8, "matrix size"); });
        if (base.alg->dim() * n * n > 512) p.fail(ln, "matrix_over result is too large");
        alg = make_matrix_over(base.alg, n);
      } else if (kind == "direct_sum" && t.size() == 5) {
        const NamedAlgebra& a = p.need_algebra(ln, t[3]);
        const NamedAlgebra& b = p.need_algebra(ln, t[4]);
        alg = make_direct_sum(a.alg, b.alg);
      } else if (kind == "quotient" && t.size() == 5) {
        const NamedAlgebra& a = p.need_algebra(ln, t[3]);
        const NamedIdeal* gen = p.w.find_ideal(t[4]);
        if (!gen) p.fail(ln, "unknown ideal '" + t[4] + "'");
        if (gen->algebra != a.name)
          p.fail(ln, "ideal '" + t[4] + "' lives in " + gen->algebra + ", not " + a.name);
        alg = p.guarded(ln, [&] {
          std::vector<std::vector<Complex>> gens;
          for (int i = 0; i < gen->rows.rows(); ++i) gens.push_back(gen->rows.row(i));
          StarIdeal ideal = ideal_generated_by(a.alg, gens);
          return quotient_by_star_ideal(a.alg, ideal.basis()).algebra;
        });
      } else {
        p.fail(ln, "unknown algebra construction '" + kind + "'");
      }
      p.w.algebras.push_back({t[1], std::move(recipe), {}, std::move(alg)});
    } else if (head == "functional") {
      p.ring_locked = true;
      size_t eq = raw.find('=');
      if (opens_block || eq == std::string::npos) p.fail(ln, "expected 'functional <name> <algebra> = [..]'");
      std::string before = raw.substr(0, eq);
      size_t cm = before.find('#');
      if (cm != std::string::npos) before = before.substr(0, cm);
      std::vector<std::string> lhs = split_ws(trim(before));
      if (lhs.size() != 3) p.fail(ln, "expected 'functional <name> <algebra> = [..]'");
      p.check_fresh(ln, "functional", lhs[1]);
      const NamedAlgebra& a = p.need_algebra(ln, lhs[2]);
      std::string rhs = trim(line.substr(line.find('=') + 1));
      std::vector<Complex> vals =
          p.guarded(ln, [&] { return parse_vector_literal(rhs, a.alg->dim(), p.w.ring); });
      p.w.functionals.push_back({lhs[1], lhs[2], LinearFunctional(a.alg, std::move(vals))});
    } else if (head == "family") {
      p.ring_locked = true;
      if (opens_block) p.fail(ln, "family entries do not take a block");
      size_t eq = line.find('=');
      if (eq == std::string::npos) {
        if (t.size() != 4 || t[3] != "builtin")
          p.fail(ln, "expected 'family <name> <algebra> builtin' or '... = f1 f2'");
        p.check_fresh(ln, "family", t[1]);
        const NamedAlgebra& a = p.need_algebra(ln, t[2]);
        p.guarded(ln, [&] { return builtin_functional_family(a.alg); });
        p.w.families.push_back({t[1], t[2], true, {}});
      } else {
        std::vector<std::string> lhs = split_ws(trim(line.substr(0, eq)));
        if (lhs.size() != 3) p.fail(ln, "expected 'family <name> <algebra> = f1 f2 ...'");
        p.check_fresh(ln, "family", lhs[1]);
        const NamedAlgebra& a = p.need_algebra(ln, lhs[2]);
        std::string rhs = trim(line.substr(eq + 1));
        std::replace(rhs.begin(), rhs.end(), ',', ' ');
        std::vector<std::string> members = split_ws(rhs);
        if (members.empty()) p.fail(ln, "family needs at least one functional");
        for (const std::string& m : members) {
          const NamedFunctional* f = p.w.find_functional(m);
          if (!f) p.fail(ln, "unknown functional '" + m + "'");
          if (f->algebra != a.name)
            p.fail(ln, "functional '" + m + "' lives on " + f->algebra + ", not " + a.name);
        }
        p.w.families.push_back({lhs[1], lhs[2], false, std::move(members)});
      }
    } else if (head == "ideal") {
      p.ring_locked = true;
      if (!opens_block || t.size() != 3) p.fail(ln, "expected 'ideal <name> <algebra> {'");
      p.check_fresh(ln, "ideal", t[1]);
      pend_name = t[1];
      pend_alg = &p.need_algebra(ln, t[2]);
      block = Block::Ideal;
      block_line = ln;
    } else if (head == "bimodule") {
      p.ring_locked = true;
      if (t.size() < 3) p.fail(ln, "expected 'bimodule <name> <construction> ...'");
      p.check_fresh(ln, "bimodule", t[1]);
      const std::string& kind = t[2];
      if (kind == "std" && t.size() == 4 && !opens_block) {
        int n = p.guarded(ln, [&] { return parse_int_token(t[3], 1, 8, "module dimension"); });
        InnerProductBimodule mod =
            p.guarded(ln, [&] { return std_bimodule(n, p.w.ring, t[1]); });
        p.w.bimodules.push_back({t[1], {"std", t[3]}, {}, std::move(mod)});
      } else if (kind == "conjugate" && t.size() == 4 && !opens_block) {
        const NamedBimodule* other = p.w.find_bimodule(t[3]);
        if (!other) p.fail(ln, "unknown bimodule '" + t[3] + "'");
        InnerProductBimodule mod =
            p.guarded(ln, [&] { return conjugate_bimodule(other->mod); });
        mod.name = t[1];
        p.w.bimodules.push_back({t[1], {"conjugate", t[3]}, {}, std::move(mod)});
      } else if (kind == "projection" && t.size() == 5 && opens_block) {
        pend_name = t[1];
        pend_alg = &p.need_algebra(ln, t[3]);
        pend_n = p.guarded(ln, [&] { return parse_int_token(t[4], 1, 8, "matrix size"); });
        if (pend_alg->alg->dim() * pend_n * pend_n > 512)
          p.fail(ln, "projection ambient is too large");
        block = Block::Projection;
        block_line = ln;
      } else if (kind == "custom" && t.size() == 6 && opens_block) {
        pend_name = t[1];
        pend_left_alg = &p.need_algebra(ln, t[3]);
        pend_right_alg = &p.need_algebra(ln, t[4]);
        pend_dim = p.guarded(ln, [&] { return parse_int_token(t[5], 0, 64, "module dimension"); });
        block = Block::CustomBimodule;
        block_line = ln;
      } else {
        p.fail(ln, "expected std <n>, conjugate <other>, projection <base> <n> { or custom "
                   "<left> <right> <dim> {");
      }
    } else if (head == "commands") {
      if (!opens_block || t.size() != 1) p.fail(ln, "expected 'commands {'");
      if (!p.w.commands.empty() || !pending_commands.empty())
        p.fail(ln, "only one commands block is allowed");
      block = Block::Commands;
      block_line = ln;
    } else {
      p.fail(ln, "unknown entry '" + head + "'");
    }
  }
  if (block != Block::None) p.fail(block_line, "unterminated block");

  // Resolve command references now so diagnostics carry line numbers.
  for (const auto& [cln, toks] : pending_commands) {
    const std::string& c = toks[0];
    auto want = [&](size_t n, const std::string& usage) {
      if (toks.size() != n + 1) p.fail(cln, "usage: " + usage);
    };
    if (c == "validate") {
      want(0, "validate");
    } else if (c == "gns") {
      want(1, "gns <functional>");
      if (!p.w.find_functional(toks[1])) p.fail(cln, "unknown functional '" + toks[1] + "'");
    } else if (c == "jmin" || c == "lattice") {
      want(1, c + " <algebra>");
      p.need_algebra(cln, toks[1]);
    } else if (c == "closure") {
      want(1, "closure <ideal>");
      if (!p.w.find_ideal(toks[1])) p.fail(cln, "unknown ideal '" + toks[1] + "'");
    } else if (c == "induce") {
      want(2, "induce <bimodule> <functional>");
      const NamedBimodule* b = p.w.find_bimodule(toks[1]);
      if (!b) p.fail(cln, "unknown bimodule '" + toks[1] + "'");
      const NamedFunctional* f = p.w.find_functional(toks[2]);
      if (!f) p.fail(cln, "unknown functional '" + toks[2] + "'");
      if (!same_presentation(f->fn.algebra(), b->mod.right_alg))
        p.fail(cln, "functional '" + toks[2] + "' does not live on the right algebra of '" +
                        toks[1] + "'");
    } else if (c == "phi") {
      want(2, "phi <bimodule> <ideal>");
      const NamedBimodule* b = p.w.find_bimodule(toks[1]);
      if (!b) p.fail(cln, "unknown bimodule '" + toks[1] + "'");
      const NamedIdeal* i = p.w.find_ideal(toks[2]);
      if (!i) p.fail(cln, "unknown ideal '" + toks[2] + "'");
      const NamedAlgebra* ia = p.w.find_algebra(i->algebra);
      if (!same_presentation(ia->alg, b->mod.right_alg))
        p.fail(cln, "ideal '" + toks[2] + "' does not live in the right algebra of '" +
                        toks[1] + "'");
    } else if (c == "morita-verify") {
      want(1, "morita-verify <bimodule>");
      if (!p.w.find_bimodule(toks[1])) p.fail(cln, "unknown bimodule '" + toks[1] + "'");
    } else if (c == "diff-invariants") {
      want(2, "diff-invariants <algebra> <algebra>");
      p.need_algebra(cln, toks[1]);
      p.need_algebra(cln, toks[2]);
    } else {
      p.fail(cln, "unknown command '" + c + "'");
    }
    p.w.commands.push_back(toks);
  }
  return p.w;
}

WorkspaceSpec load_workspace(const std::string& path, std::optional<Ring> ring_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WorkspaceError(path, 0, "cannot open workspace file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workspace_text(buf.str(), path, ring_override);
}

std::string serialize_workspace(const WorkspaceSpec& w) {
  std::ostringstream out;
  out << "ring " << ring_name(w.ring) << "\n";
  auto emit_block = [&out](const std::vector<std::string>& lines) {
    out << " {\n";
    for (const std::string& l : lines) out << "  " << l << "\n";
    out << "}\n";
  };
  std::set<std::string> ideals_done;
  auto emit_ideal = [&out](const NamedIdeal& i) {
    out << "ideal " << i.name << " " << i.algebra << " {\n";
    for (int r = 0; r < i.rows.rows(); ++r) out << "  " << vector_literal(i.rows.row(r)) << "\n";
    out << "}\n";
  };
  if (!w.algebras.empty()) out << "\n";
  for (const NamedAlgebra& a : w.algebras) {
    // an ideal consumed by a quotient recipe must be declared first
    if (a.recipe[0] == "quotient" && a.recipe.size() == 3 && !ideals_done.count(a.recipe[2]))
      for (const NamedIdeal& i : w.ideals)
        if (i.name == a.recipe[2]) {
          emit_ideal(i);
          ideals_done.insert(i.name);
        }
    out << "algebra " << a.name;
    for (const std::string& r : a.recipe) out << " " << r;
    if (a.recipe[0] == "custom") emit_block(a.block);
    else out << "\n";
  }
  if (!w.functionals.empty()) out << "\n";
  for (const NamedFunctional& f : w.functionals)
    out << "functional " << f.name << " " << f.algebra << " = " << vector_literal(f.fn.values())
        << "\n";
  if (!w.families.empty()) out << "\n";
  for (const NamedFamily& f : w.families) {
    out << "family " << f.name << " " << f.algebra;
    if (f.builtin) {
      out << " builtin\n";
    } else {
      out << " =";
      for (const std::string& m : f.members) out << " " << m;
      out << "\n";
    }
  }
  if (w.ideals.size() > ideals_done.size()) out << "\n";
  for (const NamedIdeal& i : w.ideals)
    if (!ideals_done.count(i.name)) emit_ideal(i);
  if (!w.bimodules.empty()) out << "\n";
  for (const NamedBimodule& b : w.bimodules) {
    out << "bimodule " << b.name;
    for (const std::string& r : b.recipe) out << " " << r;
    if (b.recipe[0] == "projection" || b.recipe[0] == "custom") emit_block(b.block);
    else out << "\n";
  }
  if (!w.commands.empty()) {
    out << "\ncommands {\n";
    for (const auto& c : w.commands) {
      out << " ";
      for (const std::string& t : c) out << " " << t;
      out << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::vector<LinearFunctional> materialize_family(const WorkspaceSpec& w, const NamedFamily& f) {
  const NamedAlgebra* a = w.find_algebra(f.algebra);
  if (!a) throw std::invalid_argument("family '" + f.name + "' references unknown algebra");
  if (f.builtin) return builtin_functional_family(a->alg);
  std::vector<LinearFunctional> out;
  for (const std::string& m : f.members) {
    const NamedFunctional* fn = w.find_functional(m);
    if (!fn) throw std::invalid_argument("family member '" + m + "' is not defined");
    out.push_back(fn->fn);
  }
  return out;
}

std::vector<LinearFunctional> resolve_family(const WorkspaceSpec& w, const NamedAlgebra& a,
                                             const std::string& requested, std::string* desc) {
  const NamedFamily* pick = nullptr;
  if (!requested.empty()) {
    pick = w.find_family(requested);
    if (!pick) throw std::invalid_argument("unknown family '" + requested + "'");
    if (pick->algebra != a.name)
      throw std::invalid_argument("family '" + requested + "' is declared over " +
                                  pick->algebra + ", not " + a.name);
  } else {
    for (const NamedFamily& f : w.families)
      if (f.algebra == a.name) {
        if (pick)
          throw std::invalid_argument("several families are declared over " + a.name +
                                      "; pass --family to choose one");
        pick = &f;
      }
  }
  std::vector<LinearFunctional> fam;
  std::string label;
  if (pick) {
    fam = materialize_family(w, *pick);
    label = pick->builtin ? pick->name + " (builtin)" : pick->name;
  } else {
    fam = builtin_functional_family(a.alg);
    label = "builtin";
  }
  if (desc)
    *desc = label + ", " + std::to_string(fam.size()) + " functional(s), fingerprint " +
            family_fingerprint(fam);
  return fam;
}

}  // namespace starkit
