#pragma once

// Finite-dimensional associative *-algebras over C = R(i), presented by
// structure constants on an ordered basis together with the matrix of the
// antilinear involution.  Presentations are immutable and shared; derived
// constructions (matrices over a base, direct sums, quotients, compressions
// by a projection) remember how they were built so that functional families
// and ideal machinery can be derived structurally.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "starkit/matrix.hpp"

namespace starkit {

class AlgebraPresentation;
using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

enum class StandardKind { Matrix, FunctionPoints, Grassmann, ZeroMult };

struct CustomTag {};
struct StandardTag {
  StandardKind kind;
  int n;
};
struct MatrixOverTag {
  AlgebraPtr base;
  int n;
};
struct DirectSumTag {
  AlgebraPtr left;
  AlgebraPtr right;
};
struct QuotientTag {
  AlgebraPtr parent;
  CMat ideal;  // canonical row basis in parent coordinates
  CMat lift;   // dim x parent_dim: row t lifts quotient basis vector t
  CMat proj;   // dim x parent_dim as a matrix: class coords = proj * parent coords
};
struct CompressionTag {  // B = Q M_N(base) Q for a projection Q
  AlgebraPtr base;
  int n = 0;
  AlgebraPtr ambient;            // matrix_over(base, n)
  CMat embed;                    // dim x ambient_dim: rows embed the basis
  std::vector<Complex> q_coords; // Q as an ambient element
};
using Provenance =
    std::variant<CustomTag, StandardTag, MatrixOverTag, DirectSumTag, QuotientTag,
                 CompressionTag>;

struct AxiomViolation {
  std::string axiom;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

class AlgebraPresentation {
 public:
  /// structure[i][j] is the coefficient vector of b_i * b_j; star_matrix has
  /// the coefficients of b_i^* in column i, so star(z) = S * conj(z).
  /// Shapes and ring containment are enforced here; the algebra axioms are
  /// checked by validate() so that deliberately broken presentations can be
  /// constructed and then reported with witnesses.
  static AlgebraPtr create(Ring ring, std::string name, std::vector<std::string> labels,
                           std::vector<std::vector<std::vector<Complex>>> structure,
                           CMat star_matrix, Provenance prov);

  int dim() const { return n_; }
  Ring ring() const { return ring_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Complex>& structure(int i, int j) const { return c_[i][j]; }
  const CMat& star_matrix() const { return star_; }
  const Provenance& provenance() const { return prov_; }

  std::vector<Complex> zero() const { return std::vector<Complex>(n_); }
  std::vector<Complex> basis_vector(int i) const;
  std::vector<Complex> multiply(const std::vector<Complex>& x,
                                const std::vector<Complex>& y) const;
  std::vector<Complex> star(const std::vector<Complex>& x) const;

  bool has_unit() const { return has_unit_; }
  const std::vector<Complex>& unit() const;
  /// Finite-dimensional unital algebras are their own approximate identity;
  /// that is the only case this workbench certifies.
  bool has_approximate_identity() const { return has_unit_; }
  bool is_idempotent() const { return is_idempotent_; }
  bool is_nondegenerate() const { return is_nondegenerate_; }

  /// Matrix of y -> x*y (resp. x -> x*y) on coefficient vectors.
  CMat left_mult(const std::vector<Complex>& x) const;
  CMat right_mult(const std::vector<Complex>& y) const;

  ValidationReport validate() const;

  /// R-basis of the Hermitian elements {A : A^* = A}.
  std::vector<std::vector<Complex>> hermitian_basis() const;

  std::string element_str(const std::vector<Complex>& x) const;

 private:
  AlgebraPresentation() = default;
  void compute_flags();

  int n_ = 0;
  Ring ring_ = Ring::Rational;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::vector<Complex>>> c_;
  CMat star_;
  Provenance prov_;

  bool has_unit_ = false;
  std::vector<Complex> unit_;
  bool is_idempotent_ = false;
  bool is_nondegenerate_ = false;
};

/// Structural identity of presentations: same ring, dimension, structure
/// constants and star matrix.  Names, labels and provenance are ignored, so
/// independently constructed copies of one algebra compare equal.
bool same_presentation(const AlgebraPtr& a, const AlgebraPtr& b);

/// Thin value wrapper used by tests and the CLI for readable element algebra.
struct Element {
  AlgebraPtr alg;
  std::vector<Complex> c;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element scaled(const Complex& z) const;
  Element star() const;
  bool is_zero() const;
  std::string str() const { return alg->element_str(c); }
};

Element make_element(AlgebraPtr a, std::vector<Complex> coeffs);

// Standard constructors.
AlgebraPtr make_matrix_algebra(int n, Ring ring);
AlgebraPtr make_function_points(int k, Ring ring);
AlgebraPtr make_grassmann(int n, Ring ring);
AlgebraPtr make_zero_mult(int k, Ring ring);
AlgebraPtr make_matrix_over(AlgebraPtr base, int n);
AlgebraPtr make_direct_sum(AlgebraPtr a, AlgebraPtr b);

struct QuotientResult {
  AlgebraPtr algebra;
  CMat proj;  // quotient_dim x parent_dim
  CMat lift;  // quotient_dim x parent_dim (rows are coset representatives)
};

/// Quotient by a two-sided *-closed ideal given by spanning rows; throws
/// std::invalid_argument when the span is not such an ideal.  The coset
/// representatives are the non-pivot standard basis vectors of the canonical
/// ideal basis (deterministic complement).
QuotientResult quotient_by_star_ideal(AlgebraPtr a, const CMat& ideal_rows);

std::vector<Complex> conj_vector(const std::vector<Complex>& v);

}  // namespace starkit
