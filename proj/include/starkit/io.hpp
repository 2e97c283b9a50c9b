#pragma once

// The workspace file format: named algebras, functionals, families, ideals
// and bimodules plus a command list, in a line-oriented UTF-8 syntax with
// `#` comments.  Parsing normalizes every entry, so serialize(parse(text))
// is a fixed point; diagnostics carry file:line.

#include <stdexcept>

#include "starkit/morita.hpp"

namespace starkit {

class WorkspaceError : public std::runtime_error {
 public:
  WorkspaceError(const std::string& file, int line, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg) {}
};

struct NamedAlgebra {
  std::string name;
  std::vector<std::string> recipe;  // construction tokens, e.g. {"matrix", "2"}
  std::vector<std::string> block;   // canonical block lines (custom algebras)
  AlgebraPtr alg;
};

struct NamedFunctional {
  std::string name;
  std::string algebra;
  LinearFunctional fn;
};

struct NamedFamily {
  std::string name;
  std::string algebra;
  bool builtin = false;
  std::vector<std::string> members;  // functional names when not builtin
};

struct NamedIdeal {
  std::string name;
  std::string algebra;
  CMat rows;  // generator rows as written, not reduced
};

struct NamedBimodule {
  std::string name;
  std::vector<std::string> recipe;
  std::vector<std::string> block;
  InnerProductBimodule mod;
};

struct WorkspaceSpec {
  Ring ring = Ring::Rational;
  std::vector<NamedAlgebra> algebras;
  std::vector<NamedFunctional> functionals;
  std::vector<NamedFamily> families;
  std::vector<NamedIdeal> ideals;
  std::vector<NamedBimodule> bimodules;
  std::vector<std::vector<std::string>> commands;

  const NamedAlgebra* find_algebra(const std::string& name) const;
  const NamedFunctional* find_functional(const std::string& name) const;
  const NamedFamily* find_family(const std::string& name) const;
  const NamedIdeal* find_ideal(const std::string& name) const;
  const NamedBimodule* find_bimodule(const std::string& name) const;
};

/// Parse a workspace; `ring_override` replaces the file's ring line before
/// any scalar is read.  Throws WorkspaceError with file:line diagnostics.
WorkspaceSpec parse_workspace_text(const std::string& text, const std::string& filename,
                                   std::optional<Ring> ring_override = std::nullopt);
WorkspaceSpec load_workspace(const std::string& path,
                             std::optional<Ring> ring_override = std::nullopt);

/// Canonical serialization; parse_workspace_text(serialize_workspace(w))
/// reproduces w, and serializing again reproduces the same bytes.
std::string serialize_workspace(const WorkspaceSpec& w);

/// `[a, b, c]` with the scalar syntax inside; expected == -1 accepts any
/// length.  Exposed for tests and the CLI.
std::vector<Complex> parse_vector_literal(const std::string& text, int expected, Ring ring);
CMat parse_matrix_literal(const std::string& text, int rows, int cols, Ring ring);
std::string vector_literal(const std::vector<Complex>& v);
std::string matrix_literal(const CMat& m);

/// The functionals of a named family, materialized in declaration order
/// (built-in families come from the algebra's provenance).
std::vector<LinearFunctional> materialize_family(const WorkspaceSpec& w, const NamedFamily& f);

/// Family for an algebra: the named one when `requested` is nonempty (it
/// must be declared over this algebra), else the unique family declared over
/// the algebra, else the built-in family.  `desc` receives a printable
/// description including the fingerprint.
std::vector<LinearFunctional> resolve_family(const WorkspaceSpec& w, const NamedAlgebra& a,
                                             const std::string& requested, std::string* desc);

}  // namespace starkit
