#pragma once

// GNS construction and *-representations on finite-dimensional inner-product
// spaces.  A representation carries its carrier Gram matrix (positive
// definite by construction) and one action matrix per algebra basis element;
// adjointability is with respect to the carrier form.

#include "starkit/positivity.hpp"

namespace starkit {

enum class Degeneracy { StronglyNonDegenerate, NonDegenerate, Degenerate };

class Representation {
 public:
  /// Shapes and positive definiteness of the carrier form are enforced here;
  /// multiplicativity and adjointability are reported by validate().
  static Representation create(AlgebraPtr alg, CMat gram, std::vector<CMat> action,
                               std::string name);

  const AlgebraPtr& algebra() const { return alg_; }
  int space_dim() const { return m_; }
  const CMat& gram() const { return gram_; }
  const CMat& action(int i) const { return act_[i]; }
  const std::string& name() const { return name_; }

  CMat represent(const std::vector<Complex>& x) const;
  Complex inner(const std::vector<Complex>& phi, const std::vector<Complex>& psi) const;

  ValidationReport validate() const;

  const std::optional<std::vector<Complex>>& cyclic_vector() const { return cyclic_; }
  void set_cyclic_vector(std::vector<Complex> v);

 private:
  Representation() = default;
  AlgebraPtr alg_;
  int m_ = 0;
  CMat gram_;
  std::vector<CMat> act_;
  std::string name_;
  std::optional<std::vector<Complex>> cyclic_;
};

struct GnsResult {
  Representation rep;
  CMat gelfand;    // canonical rows of J_omega in algebra coordinates
  CMat class_map;  // space_dim x dim: coordinates of the coset of an element
  CMat lift;       // space_dim x dim: coset representatives
};

/// GNS representation of a positive functional: carrier A / J_omega with
/// <[B],[C]> = omega(B^* C) and pi(A)[B] = [AB].  Throws when omega is not
/// positive (the witness is in the message).
GnsResult gns_construct(const LinearFunctional& omega);

/// Canonical rows of {x : pi(x) = 0}; always a closed two-sided *-ideal.
CMat representation_kernel(const Representation& rep);

/// omega_phi(x) = <phi, pi(x) phi>; positive for any vector phi.
LinearFunctional vector_state(const Representation& rep, const std::vector<Complex>& phi);

Representation direct_sum_reps(const std::vector<Representation>& reps);

struct DegeneracyReport {
  Degeneracy status = Degeneracy::Degenerate;
  /// Rows spanning pi(A)H, the essential subspace, in carrier coordinates.
  CMat essential;
};

DegeneracyReport degeneracy_status(const Representation& rep);

/// Restriction of the representation to the essential subspace pi(A)H.
Representation restrict_to_essential(const Representation& rep, const DegeneracyReport& deg);

}  // namespace starkit
