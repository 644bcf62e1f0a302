#pragma once

#include <optional>
#include <vector>

#include "cqg/quantum_group.hpp"

namespace cqg {

struct EntryResidual {
  int i = 0;
  int j = 0;
  double value = 0.0;
  void update(int ei, int ej, double v) {
    if (v > value) {
      i = ei;
      j = ej;
      value = v;
    }
  }
};

struct ActionReport {
  EntryResidual projection;     // ‖a_ij² − a_ij‖
  EntryResidual self_adjoint;   // ‖a_ij* − a_ij‖
  EntryResidual row_sum;        // ‖Σ_j a_ij − 1‖ (j = 0 in the offender)
  EntryResidual column_sum;     // ‖Σ_i a_ij − 1‖ (i = 0 in the offender)
  EntryResidual coaction;       // ‖Δ(a_ij) − Σ_k a_ik⊗a_kj‖
  EntryResidual counit;         // |ε(a_ij) − δ_ij|
  double max_residual() const;
  bool pass(const Tolerances& tol = {}) const {
    return max_residual() <= tol.residual;
  }
};

/// An action of a finite quantum group on X_n, given by its magic unitary
/// grid a_ij = (ev_i⊗id)α(e_j). Construction performs the full invariant
/// check and stores the residual report; operations require it to pass.
class FiniteAction {
 public:
  FiniteAction(QuantumGroupPtr group, int points, std::vector<Element> grid);

  const QuantumGroupPtr& group() const { return group_; }
  int points() const { return points_; }
  const Element& entry(int i, int j) const { return grid_[i * points_ + j]; }
  const std::vector<Element>& grid() const { return grid_; }

  const AlgebraPtr& space() const { return space_; }  // C(X_n)
  const TensorStructure& space_tensor() const { return tensor_; }  // B⊗A
  const LinearMap& coaction() const { return coaction_; }  // α

  const ActionReport& report() const { return report_; }
  bool valid(const Tolerances& tol = {}) const { return report_.pass(tol); }

  /// The grid viewed as a corepresentation on ℂ^n (its corep laws are the
  /// action's coaction/counit laws; magic unitaries are unitary).
  Corepresentation magic_unitary() const;

 private:
  QuantumGroupPtr group_;
  int points_;
  std::vector<Element> grid_;
  AlgebraPtr space_;
  TensorStructure tensor_;
  LinearMap coaction_;
  ActionReport report_;
};

/// Factory form: the action is present iff every invariant holds.
struct ActionVerification {
  std::optional<FiniteAction> action;
  ActionReport report;
};
ActionVerification verify_action(const QuantumGroupPtr& group,
                                 std::vector<Element> grid,
                                 const Tolerances& tol = {});

struct OrbitPartition {
  std::vector<std::vector<int>> blocks;  // sorted by smallest member
  std::vector<int> block_of;             // point → block index
  std::vector<int> orbit_size;           // m_i per point
  Eigen::MatrixXd haar_values;           // h(a_ij)
};

/// Orbits computed two independent ways (zero pattern of the grid; equality
/// of Haar rows) and cross-checked, along with h(a_ij) ∈ {0, 1/m_i}.
OrbitPartition orbit_partition(const FiniteAction& act,
                               const Tolerances& tol = {});

struct FixedPointAlgebra {
  Mat basis;                                 // n×k orthonormal basis of B^α
  std::vector<std::vector<int>> level_sets;  // the partition Y_α of points
  double subspace_mismatch = 0.0;  // kernel route vs (id⊗h)α image route
  int dimension() const { return static_cast<int>(basis.cols()); }
};
FixedPointAlgebra fixed_point_algebra(const FiniteAction& act,
                                      const Tolerances& tol = {});

struct InvariantStatePolytope {
  int functional_dim = 0;  // dim of the space of invariant functionals
  int affine_dim = 0;      // functional_dim − 1
  Eigen::MatrixXd vertices;  // one vertex per row
  bool enumerated = false;   // brute-force vertex enumeration cross-check ran
  double max_invariance_residual = 0.0;  // over the listed vertices
};

/// Affine slice of invariant functionals intersected with the simplex.
/// Asserts duality with dim B^α and that the polytope is the hull of the
/// uniform measures on orbits (brute-force enumerated for n ≤ 12).
InvariantStatePolytope invariant_state_polytope(const FiniteAction& act,
                                                const Tolerances& tol = {});

struct ErgodicityReport {
  bool fixed_points_trivial = false;       // dim B^α == 1
  bool haar_uniform = false;               // h(a_ij) = 1/n everywhere
  bool entries_nonzero = false;            // all a_ij ≠ 0
  bool invariant_state_unique_uniform = false;  // polytope = {uniform}
  bool ergodic = false;
  double haar_deviation = 0.0;
  double min_entry_norm = 0.0;
};

/// Four independently computed ergodicity criteria; asserts they agree.
ErgodicityReport ergodicity_report(const FiniteAction& act,
                                   const Tolerances& tol = {});

struct SubsetReport {
  std::vector<int> subset;
  bool invariant = false;
  bool minimal = false;
  int orbit_point = -1;     // an x with Y = Orb_x, when the subset is one
  bool equals_orbit = false;
  bool equals_m_set = false;
  bool equals_support = false;
};

struct InvariantSubsets {
  std::vector<SubsetReport> subsets;
  bool enumerated_all = false;
};

/// All invariant subsets (full 2^n scan with the flag, n ≤ 20), or the
/// orbit-generated lattice. Asserts lattice closure and that minimal
/// invariant subsets are exactly the orbits.
InvariantSubsets invariant_subsets(const FiniteAction& act, bool enumerate_all,
                                   const Tolerances& tol = {});

struct SupportChain {
  std::vector<int> support;  // supp μ_x
  std::vector<int> m_set;    // ℳ_x
  std::vector<int> orbit;    // Orb_x
  bool equal = false;
  bool haar_faithful = false;
};

/// supp μ_x ⊆ ℳ_x ⊆ Orb_x, with equality under a faithful Haar.
SupportChain support_sets(const FiniteAction& act, int x,
                          const Tolerances& tol = {});

struct InjectivityReport {
  std::vector<int> x_alpha;
  bool injective = false;
  bool covers_all = false;
};

/// X_α = ∪_x ℳ_x and injectivity of α, computed independently and compared.
InjectivityReport injectivity_and_x_alpha(const FiniteAction& act,
                                          const Tolerances& tol = {});

/// Restriction of the action to an invariant subset.
FiniteAction induced_action(const FiniteAction& act,
                            const std::vector<int>& subset,
                            const Tolerances& tol = {});

struct FaithfulnessReport {
  bool faithful = false;
  int generated_rank = 0;
  int algebra_dim = 0;
};

/// Faithful iff the grid entries generate all of A.
FaithfulnessReport faithfulness_check(const FiniteAction& act,
                                      const Tolerances& tol = {});

struct ActionSpectrum {
  IrrepDecomposition decomposition;
  int trivial_multiplicity = 0;
  bool conjugate_closed = false;  // mul(γ)>0 ⇒ mul(γ^c)>0
  double max_f_deviation = 0.0;   // max ‖F^γ − id‖ over occurring γ
  bool kac_consequence = false;   // every occurring F^γ = id
};

/// Spectral decomposition of the magic unitary with the Kac-consequence
/// check (a tracial invariant state forces F^γ = id on the spectrum).
ActionSpectrum multiplicities(const FiniteAction& act, std::uint64_t seed = 1,
                              const Tolerances& tol = {});

}  // namespace cqg
