#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cqg/algebra.hpp"

namespace cqg {

struct HopfReport {
  HomomorphismReport coproduct_homomorphism;
  double coassociativity = 0.0;
  double counit_left = 0.0;
  double counit_right = 0.0;
  double antipode_left = 0.0;
  double antipode_right = 0.0;
  double max_residual() const;
  bool pass(const Tolerances& tol = {}) const {
    return max_residual() <= tol.residual;
  }
};

/// A finite-dimensional Hopf *-algebra (A, Δ, ε, κ) on a multi-matrix
/// algebra. The Haar state is computed once on demand and cached; the cache
/// is the only mutation and is idempotent.
class FiniteQuantumGroup {
 public:
  FiniteQuantumGroup(AlgebraPtr algebra, LinearMap coproduct, Functional counit,
                     LinearMap antipode);

  const AlgebraPtr& algebra() const { return algebra_; }
  const LinearMap& coproduct() const { return coproduct_; }
  const Functional& counit() const { return counit_; }
  const LinearMap& antipode() const { return antipode_; }

  /// The A⊗A structure used by Δ (and most checks).
  const TensorStructure& square() const { return square_; }

  /// The Haar state. Solves the bi-invariance system on first use; throws
  /// InvariantViolation when the solution space is not one-dimensional or
  /// the solution is not a state.
  const Functional& haar(const Tolerances& tol = {}) const;

  bool haar_computed() const;

 private:
  AlgebraPtr algebra_;
  TensorStructure square_;
  LinearMap coproduct_;
  Functional counit_;
  LinearMap antipode_;

  mutable std::mutex haar_mutex_;
  mutable std::optional<Functional> haar_;
};

using QuantumGroupPtr = std::shared_ptr<const FiniteQuantumGroup>;

/// Checks every Hopf *-algebra axiom and reports residuals.
HopfReport verify_hopf(const FiniteQuantumGroup& g);

struct HaarReport {
  int solution_dim = 0;  // dimension of the invariance solution space
  double invariance_left = 0.0;
  double invariance_right = 0.0;
  StateCheck state;
  bool ok() const { return solution_dim == 1 && state.is_state; }
};

/// Solves {(h⊗id)Δ(b) = (id⊗h)Δ(b) = h(b)1, h(1)=1} and certifies the result.
/// Throws InvariantViolation if the report fails (the input is then not a
/// quantum group). The result is also cached on g.
Functional haar_state(const FiniteQuantumGroup& g, HaarReport* report = nullptr,
                      const Tolerances& tol = {});

/// Orthonormal basis of N_φ = {a : φ(a*a) = 0} (kernel of the Gram matrix).
Mat null_ideal(const FiniteQuantumGroup& g, const Functional& phi,
               const Tolerances& tol = {});

struct ReducedQuotient {
  QuantumGroupPtr group;
  LinearMap projection;  // π_r : A → A_r
  int removed_dimension = 0;
};

/// A_r = A/N_h with the induced Hopf structure; verified before returning.
ReducedQuotient reduced_quotient(const QuantumGroupPtr& g,
                                 const Tolerances& tol = {});

/// A matrix corepresentation: a d×d grid over A with Δ(u_ij) = Σ u_ik⊗u_kj
/// and ε(u_ij) = δ_ij.
class Corepresentation {
 public:
  Corepresentation(QuantumGroupPtr group, int degree,
                   std::vector<Element> entries);

  const QuantumGroupPtr& group() const { return group_; }
  int degree() const { return degree_; }
  const Element& at(int i, int j) const { return entries_[i * degree_ + j]; }
  const std::vector<Element>& entries() const { return entries_; }

 private:
  QuantumGroupPtr group_;
  int degree_;
  std::vector<Element> entries_;
};

struct CorepReport {
  double coaction = 0.0;   // max ‖Δ(u_ij) − Σ_k u_ik⊗u_kj‖
  double counit = 0.0;     // max |ε(u_ij) − δ_ij|
  double unitarity = 0.0;  // max over both products ‖Σ_k ... − δ_ij 1‖
  bool corep(const Tolerances& tol = {}) const {
    return coaction <= tol.residual && counit <= tol.residual;
  }
  bool unitary(const Tolerances& tol = {}) const {
    return corep(tol) && unitarity <= tol.residual;
  }
};

CorepReport verify_corepresentation(const Corepresentation& u);

/// Basis of Mor(U1,U2) = {T : (T⊗1)U1 = U2(T⊗1)}; columns are d2×d1 matrices
/// flattened row-major.
Mat intertwiner_space(const Corepresentation& u1, const Corepresentation& u2,
                      const Tolerances& tol = {});

struct FMatrixReport {
  Mat f;                       // positive invertible, tr F = tr F^{-1}
  double quantum_dimension = 0.0;  // M_γ = tr F
  double pattern_residual = 0.0;   // deviation of the Gram tensor from δ_mn
  double inverse_residual = 0.0;   // deviation of the h(u* u) tensor from F^{-1}
  double trace_symmetry = 0.0;     // |tr F − tr F^{-1}|
};

/// Recovers F^γ and the quantum dimension of an irreducible unitary
/// corepresentation from the Haar orthogonality tensor.
FMatrixReport f_matrix(const Corepresentation& irrep,
                       const Tolerances& tol = {});

/// Entrywise involution u_ij ↦ u_ij*.
Corepresentation conjugate_corep(const Corepresentation& u);

struct IrrepClass {
  Corepresentation rep;  // unitary representative
  int multiplicity = 0;
  FMatrixReport f;
  Vec character;  // coordinates of Σ_i u_ii (basis-independent per class)
};

struct IrrepDecomposition {
  std::vector<IrrepClass> classes;
  /// Unitary C with C† U C block-diagonal; blocks follow `classes` order,
  /// each class repeated `multiplicity` times and equal to its representative.
  Mat change_of_basis;
  int degree = 0;
  std::uint64_t seed = 0;
};

/// Splits a unitary corepresentation into irreducibles along spectral
/// projections of random Hermitian intertwiners (seeded), groups equivalent
/// pieces, and computes per-class F-matrices.
IrrepDecomposition decompose_corep(const Corepresentation& u,
                                   std::uint64_t seed = 1,
                                   const Tolerances& tol = {});

/// The right regular corepresentation on A itself: entries u_rp are read off
/// the coproduct's structure constants. Invertible but not unitary in general.
Corepresentation regular_corepresentation(const QuantumGroupPtr& g);

/// Haar-average an invertible corepresentation to an equivalent unitary one:
/// V = (C^{1/2}⊗1) U (C^{-1/2}⊗1) with C = (id⊗h)(U*U).
Corepresentation unitarize(const Corepresentation& u,
                           const Tolerances& tol = {});

/// Every irreducible corepresentation of g, with multiplicities, obtained by
/// decomposing the unitarized regular corepresentation.
IrrepDecomposition all_irreps(const QuantumGroupPtr& g, std::uint64_t seed = 1,
                              const Tolerances& tol = {});

struct KacReport {
  double tracial_residual = 0.0;    // max |h(ab) − h(ba)| over basis pairs
  double antipode_square_residual = 0.0;  // max |(κ² − id)| entry
  double f_matrix_residual = 0.0;   // max over irreps ‖F^γ − id‖
  bool tracial = false;
  bool antipode_involutive = false;
  bool f_trivial = false;
  std::uint64_t seed = 0;
  bool kac() const { return tracial && antipode_involutive && f_trivial; }
};

/// Evaluates the three Kac conditions independently and asserts they agree.
KacReport is_kac(const QuantumGroupPtr& g, std::uint64_t seed = 1,
                 const Tolerances& tol = {});

}  // namespace cqg
