#pragma once

// Positivity over the ordered scalar tower: linear functionals and their Gram
// forms, exact PSD certification of Hermitian matrices by recursive symmetric
// elimination (every verdict carries a finite certificate that re-verifies by
// direct evaluation), built-in positive functional families for the standard
// constructions, and the two element cones: algebraically positive sums
// A = sum a_k B_k^* B_k and the dual cone cut out by all positive functionals.

#include <optional>

#include "starkit/algebra.hpp"

namespace starkit {

class LinearFunctional {
 public:
  LinearFunctional(AlgebraPtr alg, std::vector<Complex> values);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Complex>& values() const { return w_; }
  Complex operator()(const std::vector<Complex>& x) const;
  bool is_zero() const;
  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::vector<Complex> w_;
};

/// G[i][j] = omega(b_i^* b_j).
CMat gram_form(const LinearFunctional& omega);

enum class PsdStatus { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct PsdVerdict {
  PsdStatus status = PsdStatus::PositiveDefinite;

  // Indefinite: an exact vector with witness^dagger G witness < 0.
  std::vector<Complex> witness;
  Ordered witness_value;

  // PSD / PD: positive pivots d_k and unit rows u_k with
  // G = sum_k d_k u_k^dagger u_k (outer products of the recorded rows).
  std::vector<Ordered> pivots;
  std::vector<std::vector<Complex>> pivot_rows;

  // PSD: canonical rows spanning {v : G v = 0}; empty for PD.
  CMat radical;

  bool is_psd() const { return status != PsdStatus::Indefinite; }
};

/// Exact PSD check by symmetric elimination.  Throws std::invalid_argument
/// on non-Hermitian input.
PsdVerdict psd_check(const CMat& g);

struct PositivityWitness {
  std::vector<Complex> element;  // A with omega(A^*A) negative or non-real
  Complex value;
};

struct FunctionalPositivity {
  bool positive = false;
  std::optional<PsdVerdict> gram_verdict;    // present when the Gram form is Hermitian
  std::optional<PositivityWitness> witness;  // present when not positive
};

FunctionalPositivity is_positive_functional(const LinearFunctional& omega);

/// Canonical row basis of the Gel'fand ideal {A : omega(A^*A) = 0} of a
/// positive functional (the radical of its Gram form).  Throws when omega is
/// not positive.
CMat gelfand_ideal(const LinearFunctional& omega);

/// omega_B(x) = omega(B^* x B); positive whenever omega is.
LinearFunctional conjugated_functional(const LinearFunctional& omega,
                                       const std::vector<Complex>& b);

LinearFunctional zero_functional(AlgebraPtr a);

/// The built-in positive family for standard constructions and everything
/// derived from them (matrices over a base, direct sums, quotients,
/// compressions).  Throws std::invalid_argument for custom presentations.
std::vector<LinearFunctional> builtin_functional_family(const AlgebraPtr& a);

/// Push a family through a quotient presentation (provenance must be a
/// QuotientTag): keep the members vanishing on the ideal and compose with the
/// coset lift; falls back to the zero functional when nothing survives, so
/// the result is never empty.
std::vector<LinearFunctional> push_forward_family(const std::vector<LinearFunctional>& family,
                                                  const AlgebraPtr& quotient);

std::string family_fingerprint(const std::vector<LinearFunctional>& family);

enum class ConeMembership { CertifiedMember, CertifiedNonMember, Unknown };

struct ConeDecomposition {
  // x = sum_k coeff_k * term_k^* term_k with coeff_k > 0.
  std::vector<std::pair<Ordered, std::vector<Complex>>> terms;
};

struct ConeStatus {
  ConeMembership membership = ConeMembership::Unknown;
  std::optional<ConeDecomposition> decomposition;     // membership certificate
  std::optional<LinearFunctional> separating;         // positive omega with omega(x) < 0
  std::string note;
};

struct PositiveElementReport {
  ConeStatus algebraically_positive;  // sums of squares cone
  ConeStatus positive;                // dual cone of all positive functionals
};

/// Decide membership of x in the two positivity cones as far as exact
/// certificates allow; never claims more than it can certify.
PositiveElementReport positive_element_status(const AlgebraPtr& a,
                                              const std::vector<Complex>& x,
                                              unsigned search_effort = 40);

/// Re-verify a decomposition certificate by direct expansion.
bool verify_cone_decomposition(const AlgebraPtr& a, const std::vector<Complex>& x,
                               const ConeDecomposition& dec);

}  // namespace starkit
