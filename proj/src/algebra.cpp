#include "cqg/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace cqg {

namespace {

void require_same_parent(const Element& a, const Element& b, const char* op) {
  if (!a.parent()->same_structure(*b.parent())) {
    std::ostringstream msg;
    msg << op << ": elements live in structurally different algebras";
    throw StructuralError(msg.str());
  }
}

}  // namespace

FiniteStarAlgebra::FiniteStarAlgebra(std::vector<int> block_sizes)
    : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) {
    throw StructuralError("algebra needs at least one block");
  }
  offsets_.reserve(block_sizes_.size());
  for (int d : block_sizes_) {
    if (d <= 0) throw StructuralError("block sizes must be positive");
    offsets_.push_back(dim_);
    dim_ += d * d;
  }
  labels_.resize(dim_);
  for (int b = 0; b < block_count(); ++b) {
    const int d = block_sizes_[b];
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        labels_[basis_index(b, i, j)] = BasisLabel{b, i, j};
      }
    }
  }
}

bool FiniteStarAlgebra::commutative() const {
  return std::all_of(block_sizes_.begin(), block_sizes_.end(),
                     [](int d) { return d == 1; });
}

AlgebraPtr make_algebra(std::vector<int> block_sizes) {
  return std::make_shared<const FiniteStarAlgebra>(std::move(block_sizes));
}

Element::Element(AlgebraPtr parent, Vec coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (coords_.size() != parent_->dim()) {
    throw StructuralError("coordinate length does not match algebra dim");
  }
}

Element Element::zero(const AlgebraPtr& parent) {
  return Element(parent, Vec::Zero(parent->dim()));
}

Element Element::unit(const AlgebraPtr& parent) {
  Vec c = Vec::Zero(parent->dim());
  for (int b = 0; b < parent->block_count(); ++b) {
    for (int i = 0; i < parent->block_size(b); ++i) {
      c[parent->basis_index(b, i, i)] = 1.0;
    }
  }
  return Element(parent, std::move(c));
}

Element Element::basis(const AlgebraPtr& parent, int index) {
  Vec c = Vec::Zero(parent->dim());
  c[index] = 1.0;
  return Element(parent, std::move(c));
}

Mat Element::block(int b) const {
  const int d = parent_->block_size(b);
  const int off = parent_->block_offset(b);
  Mat m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(i, j) = coords_[off + i * d + j];
    }
  }
  return m;
}

Element Element::operator+(const Element& other) const {
  require_same_parent(*this, other, "add");
  return Element(parent_, coords_ + other.coords_);
}

Element Element::operator-(const Element& other) const {
  require_same_parent(*this, other, "subtract");
  return Element(parent_, coords_ - other.coords_);
}

Element Element::operator*(Complex scalar) const {
  return Element(parent_, coords_ * scalar);
}

Element operator*(Complex scalar, const Element& a) { return a * scalar; }

Element multiply(const Element& a, const Element& b) {
  require_same_parent(a, b, "multiply");
  const auto& alg = *a.parent();
  Vec out = Vec::Zero(alg.dim());
  for (int blk = 0; blk < alg.block_count(); ++blk) {
    const int d = alg.block_size(blk);
    const int off = alg.block_offset(blk);
    if (d == 1) {
      out[off] = a.coords()[off] * b.coords()[off];
      continue;
    }
    Mat prod = a.block(blk) * b.block(blk);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        out[off + i * d + j] = prod(i, j);
      }
    }
  }
  return Element(a.parent(), std::move(out));
}

Element involute(const Element& a) {
  const auto& alg = *a.parent();
  Vec out(alg.dim());
  for (int p = 0; p < alg.dim(); ++p) {
    const auto& l = alg.label(p);
    out[alg.basis_index(l.block, l.col, l.row)] = std::conj(a.coords()[p]);
  }
  return Element(a.parent(), std::move(out));
}

double operator_norm(const Element& a) {
  const auto& alg = *a.parent();
  double norm = 0.0;
  for (int b = 0; b < alg.block_count(); ++b) {
    if (alg.block_size(b) == 1) {
      norm = std::max(norm, std::abs(a.coords()[alg.block_offset(b)]));
    } else {
      Eigen::JacobiSVD<Mat> svd(a.block(b));
      norm = std::max(norm, svd.singularValues()(0));
    }
  }
  return norm;
}

std::optional<int> basis_product(const FiniteStarAlgebra& alg, int p, int q) {
  const auto& lp = alg.label(p);
  const auto& lq = alg.label(q);
  if (lp.block != lq.block || lp.col != lq.row) return std::nullopt;
  return alg.basis_index(lp.block, lp.row, lq.col);
}

int basis_adjoint(const FiniteStarAlgebra& alg, int p) {
  const auto& l = alg.label(p);
  return alg.basis_index(l.block, l.col, l.row);
}

LinearMap::LinearMap(AlgebraPtr domain, AlgebraPtr codomain, Mat matrix)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_->dim() || matrix_.cols() != domain_->dim()) {
    throw StructuralError("linear map matrix shape does not match algebras");
  }
}

LinearMap LinearMap::identity(const AlgebraPtr& algebra) {
  return LinearMap(algebra, algebra, Mat::Identity(algebra->dim(), algebra->dim()));
}

Element LinearMap::operator()(const Element& a) const {
  if (!a.parent()->same_structure(*domain_)) {
    throw StructuralError("linear map applied outside its domain");
  }
  return Element(codomain_, matrix_ * a.coords());
}

Functional::Functional(AlgebraPtr domain, RVec coeffs)
    : domain_(std::move(domain)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != domain_->dim()) {
    throw StructuralError("functional coefficient length does not match dim");
  }
}

Complex Functional::operator()(const Element& a) const {
  if (!a.parent()->same_structure(*domain_)) {
    throw StructuralError("functional applied outside its domain");
  }
  return apply(a.coords());
}

TensorStructure::TensorStructure(AlgebraPtr left, AlgebraPtr right)
    : left_(std::move(left)), right_(std::move(right)) {
  std::vector<int> sizes;
  sizes.reserve(left_->block_count() * right_->block_count());
  for (int b1 = 0; b1 < left_->block_count(); ++b1) {
    for (int b2 = 0; b2 < right_->block_count(); ++b2) {
      sizes.push_back(left_->block_size(b1) * right_->block_size(b2));
    }
  }
  product_ = make_algebra(std::move(sizes));
  index_.assign(static_cast<std::size_t>(left_->dim()) * right_->dim(), -1);
  for (int b1 = 0; b1 < left_->block_count(); ++b1) {
    const int d1 = left_->block_size(b1);
    for (int b2 = 0; b2 < right_->block_count(); ++b2) {
      const int d2 = right_->block_size(b2);
      const int blk = b1 * right_->block_count() + b2;
      for (int i1 = 0; i1 < d1; ++i1) {
        for (int j1 = 0; j1 < d1; ++j1) {
          const int p = left_->basis_index(b1, i1, j1);
          for (int i2 = 0; i2 < d2; ++i2) {
            for (int j2 = 0; j2 < d2; ++j2) {
              const int q = right_->basis_index(b2, i2, j2);
              const int r =
                  product_->basis_index(blk, i1 * d2 + i2, j1 * d2 + j2);
              index_[static_cast<std::size_t>(p) * right_->dim() + q] = r;
            }
          }
        }
      }
    }
  }
}

Element TensorStructure::tensor(const Element& a, const Element& b) const {
  if (!a.parent()->same_structure(*left_) ||
      !b.parent()->same_structure(*right_)) {
    throw StructuralError("tensor: factors do not match the structure");
  }
  Vec out = Vec::Zero(product_->dim());
  for (int p = 0; p < left_->dim(); ++p) {
    const Complex ap = a.coords()[p];
    if (ap == Complex(0.0)) continue;
    for (int q = 0; q < right_->dim(); ++q) {
      const Complex bq = b.coords()[q];
      if (bq == Complex(0.0)) continue;
      out[pair_index(p, q)] += ap * bq;
    }
  }
  return Element(product_, std::move(out));
}

Mat TensorStructure::unpack(const Vec& v) const {
  Mat coeffs(left_->dim(), right_->dim());
  for (int p = 0; p < left_->dim(); ++p) {
    for (int q = 0; q < right_->dim(); ++q) {
      coeffs(p, q) = v[pair_index(p, q)];
    }
  }
  return coeffs;
}

Vec TensorStructure::pack(const Mat& coeffs) const {
  Vec v(product_->dim());
  for (int p = 0; p < left_->dim(); ++p) {
    for (int q = 0; q < right_->dim(); ++q) {
      v[pair_index(p, q)] = coeffs(p, q);
    }
  }
  return v;
}

Vec TensorStructure::apply_pair(const LinearMap& f, const LinearMap& g,
                                const Vec& v, const TensorStructure& out) const {
  // (f⊗g)(Σ V[p][q] b_p⊗b_q) has coefficient matrix Mf·V·Mg^T.
  Mat w = f.matrix() * unpack(v) * g.matrix().transpose();
  return out.pack(w);
}

double HomomorphismReport::max_residual() const {
  return std::max(unit, std::max(multiplicativity, star));
}

HomomorphismReport verify_star_homomorphism(const LinearMap& f) {
  const auto& dom = *f.domain();
  const auto& cod = f.codomain();
  const int n = dom.dim();
  HomomorphismReport report;

  std::vector<Element> images;
  images.reserve(n);
  for (int p = 0; p < n; ++p) {
    images.push_back(Element(cod, f.matrix().col(p)));
  }

  report.unit =
      operator_norm(f(Element::unit(f.domain())) - Element::unit(cod));

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Element lhs = basis_product(dom, p, q)
                        ? images[*basis_product(dom, p, q)]
                        : Element::zero(cod);
      Element rhs = multiply(images[p], images[q]);
      report.multiplicativity =
          std::max(report.multiplicativity, operator_norm(lhs - rhs));
    }
    Element star_lhs = images[basis_adjoint(dom, p)];
    report.star =
        std::max(report.star, operator_norm(star_lhs - involute(images[p])));
  }
  return report;
}

Mat orthonormal_columns(const Mat& m, double cutoff) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat nullspace(const Mat& m, double cutoff) {
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int rank_of(const Mat& m, double cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, sv(0));
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return rank;
}

Mat subalgebra_generated(const std::vector<Element>& generators,
                         const Tolerances& tol) {
  if (generators.empty()) {
    throw PreconditionError("subalgebra_generated needs at least one generator");
  }
  const AlgebraPtr alg = generators.front().parent();
  const int n = alg->dim();

  Mat seed(n, 1 + 2 * static_cast<Eigen::Index>(generators.size()));
  seed.col(0) = Element::unit(alg).coords();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (!generators[k].parent()->same_structure(*alg)) {
      throw StructuralError("generators live in different algebras");
    }
    seed.col(1 + 2 * k) = generators[k].coords();
    seed.col(2 + 2 * k) = involute(generators[k]).coords();
  }
  Mat basis = orthonormal_columns(seed, tol.rank_cutoff);

  for (int round = 0; round <= n; ++round) {
    const int r = static_cast<int>(basis.cols());
    Mat grown(n, r + r * r);
    grown.leftCols(r) = basis;
    int col = r;
    for (int u = 0; u < r; ++u) {
      Element eu(alg, basis.col(u));
      for (int v = 0; v < r; ++v) {
        grown.col(col++) = multiply(eu, Element(alg, basis.col(v))).coords();
      }
    }
    Mat next = orthonormal_columns(grown, tol.rank_cutoff);
    if (next.cols() == basis.cols()) return next;
    basis = std::move(next);
  }
  throw InvariantViolation("subalgebra span growth failed to stabilize");
}

bool positivity_check(const Element& a, const Tolerances& tol) {
  const auto& alg = *a.parent();
  for (int b = 0; b < alg.block_count(); ++b) {
    Mat blk = a.block(b);
    if ((blk - blk.adjoint()).cwiseAbs().maxCoeff() > tol.residual) return false;
    Eigen::SelfAdjointEigenSolver<Mat> eig((blk + blk.adjoint()) / 2.0);
    if (eig.eigenvalues().minCoeff() < -tol.residual) return false;
  }
  return true;
}

Mat gram_matrix(const Functional& phi) {
  const auto& alg = *phi.domain();
  const int n = alg.dim();
  Mat g(n, n);
  for (int p = 0; p < n; ++p) {
    const int ps = basis_adjoint(alg, p);
    for (int q = 0; q < n; ++q) {
      auto idx = basis_product(alg, ps, q);
      g(p, q) = idx ? phi.coeffs()(*idx) : Complex(0.0);
    }
  }
  return g;
}

StateCheck state_check(const Functional& phi, const Tolerances& tol) {
  StateCheck check;
  check.unit_defect = std::abs(phi(Element::unit(phi.domain())) - Complex(1.0));
  Mat g = gram_matrix(phi);
  check.hermitian_defect = (g - g.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> eig((g + g.adjoint()) / 2.0);
  check.min_gram_eigenvalue = eig.eigenvalues().minCoeff();
  check.is_state = check.unit_defect <= tol.residual &&
                   check.hermitian_defect <= tol.residual &&
                   check.min_gram_eigenvalue >= -tol.residual;
  return check;
}

}  // namespace cqg
