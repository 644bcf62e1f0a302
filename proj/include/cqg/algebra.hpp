#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cqg/types.hpp"

namespace cqg {

/// A finite-dimensional C*-algebra in canonical multi-matrix form
/// ⊕_b M_{d_b}(ℂ). The coordinate basis is the matrix units, blocks in
/// declaration order and row-major within each block.
class FiniteStarAlgebra {
 public:
  explicit FiniteStarAlgebra(std::vector<int> block_sizes);

  int dim() const { return dim_; }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int block_count() const { return static_cast<int>(block_sizes_.size()); }
  int block_offset(int b) const { return offsets_[b]; }
  int block_size(int b) const { return block_sizes_[b]; }

  /// Flat coordinate index of the matrix unit e^{(b)}_{ij}.
  int basis_index(int b, int i, int j) const {
    return offsets_[b] + i * block_sizes_[b] + j;
  }

  struct BasisLabel {
    int block;
    int row;
    int col;
  };
  const BasisLabel& label(int index) const { return labels_[index]; }

  /// Same block structure (operations between elements only require this,
  /// not pointer identity, so independently built copies interoperate).
  bool same_structure(const FiniteStarAlgebra& other) const {
    return block_sizes_ == other.block_sizes_;
  }

  bool commutative() const;

 private:
  std::vector<int> block_sizes_;
  std::vector<int> offsets_;
  std::vector<BasisLabel> labels_;
  int dim_ = 0;
};

using AlgebraPtr = std::shared_ptr<const FiniteStarAlgebra>;

AlgebraPtr make_algebra(std::vector<int> block_sizes);

class Element {
 public:
  Element(AlgebraPtr parent, Vec coords);

  static Element zero(const AlgebraPtr& parent);
  static Element unit(const AlgebraPtr& parent);
  static Element basis(const AlgebraPtr& parent, int index);

  const AlgebraPtr& parent() const { return parent_; }
  const Vec& coords() const { return coords_; }

  /// Copy of block b as a dense matrix (row-major coordinates unpacked).
  Mat block(int b) const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator*(Complex scalar) const;

 private:
  AlgebraPtr parent_;
  Vec coords_;
};

Element operator*(Complex scalar, const Element& a);

/// Blockwise matrix product. Throws StructuralError on mismatched parents.
Element multiply(const Element& a, const Element& b);

/// Blockwise conjugate transpose.
Element involute(const Element& a);

/// C*-norm: max over blocks of the largest singular value.
double operator_norm(const Element& a);

/// Product of two basis matrix units is another unit or zero:
/// e^{(b)}_{ij} e^{(b')}_{kl} = δ_{bb'} δ_{jk} e^{(b)}_{il}.
std::optional<int> basis_product(const FiniteStarAlgebra& alg, int p, int q);

/// Index of the adjoint of a basis unit (coefficient is real, so this is the
/// whole involution on the basis).
int basis_adjoint(const FiniteStarAlgebra& alg, int p);

/// A linear map between algebras, stored as a dense matrix acting on
/// coordinates (codomain-dim × domain-dim).
class LinearMap {
 public:
  LinearMap(AlgebraPtr domain, AlgebraPtr codomain, Mat matrix);

  static LinearMap identity(const AlgebraPtr& algebra);

  const AlgebraPtr& domain() const { return domain_; }
  const AlgebraPtr& codomain() const { return codomain_; }
  const Mat& matrix() const { return matrix_; }

  Element operator()(const Element& a) const;
  Vec apply(const Vec& coords) const { return matrix_ * coords; }

 private:
  AlgebraPtr domain_;
  AlgebraPtr codomain_;
  Mat matrix_;
};

/// A linear functional on an algebra (row vector on coordinates).
class Functional {
 public:
  Functional(AlgebraPtr domain, RVec coeffs);

  const AlgebraPtr& domain() const { return domain_; }
  const RVec& coeffs() const { return coeffs_; }

  Complex operator()(const Element& a) const;
  Complex apply(const Vec& coords) const { return (coeffs_ * coords)(0); }

 private:
  AlgebraPtr domain_;
  RVec coeffs_;
};

/// Tensor product A⊗B in canonical form: one block per block pair (b,b') in
/// left-factor-major order, of size d_b·d_{b'}. Carries the bijection between
/// basis pairs of the factors and the basis of the product.
class TensorStructure {
 public:
  TensorStructure(AlgebraPtr left, AlgebraPtr right);

  const AlgebraPtr& left() const { return left_; }
  const AlgebraPtr& right() const { return right_; }
  const AlgebraPtr& product() const { return product_; }

  /// Product-basis index of b_p ⊗ b_q.
  int pair_index(int p, int q) const {
    return index_[static_cast<std::size_t>(p) * right_->dim() + q];
  }

  Element tensor(const Element& a, const Element& b) const;

  /// View a product-coordinate vector as the dimL×dimR coefficient matrix
  /// V[p][q] of Σ V[p][q] b_p⊗b_q, and back.
  Mat unpack(const Vec& v) const;
  Vec pack(const Mat& coeffs) const;

  /// Apply f⊗g to a vector of this product, landing in `out`'s product.
  Vec apply_pair(const LinearMap& f, const LinearMap& g, const Vec& v,
                 const TensorStructure& out) const;

 private:
  AlgebraPtr left_;
  AlgebraPtr right_;
  AlgebraPtr product_;
  std::vector<int> index_;
};

struct HomomorphismReport {
  double unit = 0.0;            // ‖f(1) − 1‖
  double multiplicativity = 0.0;  // max over basis pairs ‖f(ab) − f(a)f(b)‖
  double star = 0.0;            // max over basis ‖f(a*) − f(a)*‖
  double max_residual() const;
  bool pass(const Tolerances& tol = {}) const {
    return max_residual() <= tol.residual;
  }
};

/// Certifies that f is a unital *-homomorphism, up to tolerance.
HomomorphismReport verify_star_homomorphism(const LinearMap& f);

/// Orthonormal coordinate basis (columns) of the smallest unital *-subalgebra
/// containing the generators. Span growth with rank-revealing SVD; terminates
/// in at most dim iterations.
Mat subalgebra_generated(const std::vector<Element>& generators,
                         const Tolerances& tol = {});

/// a ≥ 0: each block Hermitian with min eigenvalue ≥ −tolerance.
bool positivity_check(const Element& a, const Tolerances& tol = {});

/// Gram matrix G[p][q] = φ(b_p* b_q) of a functional.
Mat gram_matrix(const Functional& phi);

struct StateCheck {
  double unit_defect = 0.0;     // |φ(1) − 1|
  double hermitian_defect = 0.0;  // ‖G − G*‖ of the Gram matrix
  double min_gram_eigenvalue = 0.0;
  bool is_state = false;
};

/// φ is a state iff φ(1)=1 and the Gram form b ↦ φ(b*b) is PSD.
StateCheck state_check(const Functional& phi, const Tolerances& tol = {});

// Shared dense-linear-algebra helpers (rank decisions use the cutoff relative
// to the largest singular value, floored at 1).

/// Orthonormal basis of the column space of M.
Mat orthonormal_columns(const Mat& m, double cutoff);

/// Orthonormal basis of the kernel of M.
Mat nullspace(const Mat& m, double cutoff);

int rank_of(const Mat& m, double cutoff);

}  // namespace cqg
