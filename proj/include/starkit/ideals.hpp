#pragma once

// Closed *-ideals (kernels of *-representations), the minimal closed ideal
// J_min as a certified sandwich between a generator scan (lower bound) and an
// intersection of GNS kernels (upper bound), closures, and the lattice of
// closed ideals with Hasse export.  Every ideal is carried as a canonical
// RREF row basis, so ideal equality is matrix equality.

#include "starkit/gns.hpp"

namespace starkit {

class StarIdeal {
 public:
  /// Validating constructor: the span must be a star-closed two-sided ideal.
  static StarIdeal from_span(AlgebraPtr a, const CMat& rows);
  /// Trusted constructor for spans that are ideals by construction (kernels,
  /// intersections of ideals); still canonicalizes.
  static StarIdeal from_kernel(AlgebraPtr a, const CMat& rows);
  static StarIdeal zero(AlgebraPtr a);
  static StarIdeal whole(AlgebraPtr a);

  const AlgebraPtr& algebra() const { return alg_; }
  int dim() const { return basis_.rows(); }
  const CMat& basis() const { return basis_; }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == alg_->dim(); }

  bool contains_vector(const std::vector<Complex>& v) const;
  bool contains(const StarIdeal& o) const;
  bool operator==(const StarIdeal& o) const;
  bool operator!=(const StarIdeal& o) const { return !(*this == o); }

  /// Canonical serialization (deterministic across runs) and a short hash of
  /// it for diagram labels.
  std::string key() const;
  std::string short_hash() const;

 private:
  StarIdeal(AlgebraPtr a, CMat basis) : alg_(std::move(a)), basis_(std::move(basis)) {}
  AlgebraPtr alg_;
  CMat basis_;
};

/// Smallest two-sided *-closed ideal containing the generators.
StarIdeal ideal_generated_by(const AlgebraPtr& a,
                             const std::vector<std::vector<Complex>>& generators);

enum class SandwichStatus { Exact, Gap };

struct JminResult {
  StarIdeal lower;  // certified subset of J_min (elements forced into every closed ideal)
  StarIdeal upper;  // intersection of GNS kernels over the family
  SandwichStatus status = SandwichStatus::Gap;
  std::vector<std::string> lower_reasons;
  std::string family_fp;
};

/// Sandwich J_min between a structural lower bound (scan for A with A^*A = 0
/// or A^*A = 0 reversed, and normal nilpotents, closed up to an ideal) and
/// the intersection of the GNS kernels of the family.  Exact when the bounds
/// meet.  The family must be nonempty and positive.
JminResult jmin(const AlgebraPtr& a, const std::vector<LinearFunctional>& family);

struct ClosureResult {
  StarIdeal lower;  // contained in the true closure
  StarIdeal upper;  // contains the true closure; reported as the closure
  SandwichStatus status = SandwichStatus::Gap;
  const StarIdeal& closed() const { return upper; }
};

/// Closure of a subset: smallest closed ideal containing it, computed as the
/// preimage of the J_min sandwich of the quotient by the generated ideal.
ClosureResult closure_of(const AlgebraPtr& a, const CMat& subset_rows,
                         const std::vector<LinearFunctional>& family);

enum class TriState { Yes, No, Unknown };
std::string tristate_name(TriState t);

TriState is_closed(const StarIdeal& ideal, const std::vector<LinearFunctional>& family);

StarIdeal meet_ideals(const StarIdeal& x, const StarIdeal& y);
ClosureResult join_ideals(const StarIdeal& x, const StarIdeal& y,
                          const std::vector<LinearFunctional>& family);
bool ideal_leq(const StarIdeal& x, const StarIdeal& y);

enum class LatticeCompleteness { Complete, PossiblyIncomplete };

struct ClosedIdealLattice {
  AlgebraPtr alg;
  std::vector<StarIdeal> nodes;  // sorted by (dim, key)
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<int, int>> covers;  // (lower index, upper index)
  std::vector<std::vector<int>> meet_table;
  std::vector<std::vector<int>> join_table;
  LatticeCompleteness completeness = LatticeCompleteness::PossiblyIncomplete;
  std::string note;

  int bottom_index() const;
  int top_index() const;
  int index_of(const StarIdeal& ideal) const;  // -1 when absent
};

/// Enumerate closed ideals: seed with the GNS kernels of the family and the
/// whole algebra, then close under meet (intersection) and join (closure of
/// the sum).  Completeness is certified against an independently constructed
/// expected lattice where the provenance supports one.
ClosedIdealLattice enumerate_closed_lattice(const AlgebraPtr& a,
                                            const std::vector<LinearFunctional>& family);

/// Expected complete closed-ideal lattice from the structure of the
/// construction, where known (standard kinds, matrices over them, direct
/// sums, quotients by certified subsets of J_min, compressions over point
/// algebras).  Used for completeness certification; nullopt when no
/// structural description applies.
std::optional<std::vector<StarIdeal>> expected_closed_ideals(const AlgebraPtr& a);

std::string export_hasse_dot(const ClosedIdealLattice& lat);

/// Order isomorphism between two finite lattices (backtracking on the order
/// relation); returns the node mapping when one exists.
std::optional<std::vector<int>> lattice_isomorphism(const ClosedIdealLattice& x,
                                                    const ClosedIdealLattice& y);
bool lattices_isomorphic(const ClosedIdealLattice& x, const ClosedIdealLattice& y);

}  // namespace starkit
