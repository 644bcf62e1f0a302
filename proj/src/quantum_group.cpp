#include "cqg/quantum_group.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cqg {

namespace {

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Mat hermitian_power(const Mat& m, double exponent) {
  Eigen::SelfAdjointEigenSolver<Mat> eig((m + m.adjoint()) / 2.0);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw InvariantViolation("matrix is not positive definite");
  }
  Eigen::VectorXd powered =
      eig.eigenvalues().array().pow(exponent).matrix();
  return eig.eigenvectors() * powered.asDiagonal() *
         eig.eigenvectors().adjoint();
}

}  // namespace

double HopfReport::max_residual() const {
  double r = coproduct_homomorphism.max_residual();
  r = std::max(r, coassociativity);
  r = std::max(r, std::max(counit_left, counit_right));
  r = std::max(r, std::max(antipode_left, antipode_right));
  return r;
}

FiniteQuantumGroup::FiniteQuantumGroup(AlgebraPtr algebra, LinearMap coproduct,
                                       Functional counit, LinearMap antipode)
    : algebra_(std::move(algebra)),
      square_(algebra_, algebra_),
      coproduct_(algebra_, square_.product(), coproduct.matrix()),
      counit_(algebra_, counit.coeffs()),
      antipode_(algebra_, algebra_, antipode.matrix()) {
  if (!coproduct.domain()->same_structure(*algebra_) ||
      !coproduct.codomain()->same_structure(*square_.product())) {
    throw StructuralError("coproduct must map A into A⊗A");
  }
  if (!antipode.domain()->same_structure(*algebra_) ||
      !antipode.codomain()->same_structure(*algebra_)) {
    throw StructuralError("antipode must map A to A");
  }
  if (!counit.domain()->same_structure(*algebra_)) {
    throw StructuralError("counit must be a functional on A");
  }
}

bool FiniteQuantumGroup::haar_computed() const {
  std::lock_guard<std::mutex> lock(haar_mutex_);
  return haar_.has_value();
}

const Functional& FiniteQuantumGroup::haar(const Tolerances& tol) const {
  {
    std::lock_guard<std::mutex> lock(haar_mutex_);
    if (haar_) return *haar_;
  }
  Functional h = haar_state(*this, nullptr, tol);
  std::lock_guard<std::mutex> lock(haar_mutex_);
  if (!haar_) haar_.emplace(std::move(h));
  return *haar_;
}

HopfReport verify_hopf(const FiniteQuantumGroup& g) {
  const auto& alg = g.algebra();
  const auto& sq = g.square();
  const int n = alg->dim();
  HopfReport report;

  report.coproduct_homomorphism = verify_star_homomorphism(g.coproduct());

  TensorStructure left_assoc(sq.product(), alg);
  TensorStructure right_assoc(alg, sq.product());
  LinearMap id = LinearMap::identity(alg);

  const RVec unit_row = Element::unit(alg).coords().transpose();
  std::vector<Element> antipode_cols;
  antipode_cols.reserve(n);
  for (int p = 0; p < n; ++p) {
    antipode_cols.push_back(Element(alg, g.antipode().matrix().col(p)));
  }

  for (int p = 0; p < n; ++p) {
    const Vec delta_p = g.coproduct().matrix().col(p);
    // (Δ⊗id)Δ and (id⊗Δ)Δ land in identically-indexed triple products.
    Vec lhs = sq.apply_pair(g.coproduct(), id, delta_p, left_assoc);
    Vec rhs = sq.apply_pair(id, g.coproduct(), delta_p, right_assoc);
    report.coassociativity =
        std::max(report.coassociativity, (lhs - rhs).cwiseAbs().maxCoeff());

    Mat v = sq.unpack(delta_p);
    RVec counit_l = g.counit().coeffs() * v;
    Vec counit_r = v * g.counit().coeffs().transpose();
    RVec expect_row = RVec::Zero(n);
    expect_row(p) = 1.0;
    report.counit_left = std::max(
        report.counit_left, (counit_l - expect_row).cwiseAbs().maxCoeff());
    report.counit_right =
        std::max(report.counit_right,
                 (counit_r - expect_row.transpose()).cwiseAbs().maxCoeff());

    // m(κ⊗id)Δ(b_p) = m(id⊗κ)Δ(b_p) = ε(b_p)·1
    Element expected = Element::unit(alg) * g.counit().coeffs()(p);
    Element acc_left = Element::zero(alg);
    Element acc_right = Element::zero(alg);
    for (int r = 0; r < n; ++r) {
      acc_left = acc_left +
                 multiply(antipode_cols[r], Element(alg, v.row(r).transpose()));
      acc_right = acc_right + multiply(Element(alg, v.col(r)), antipode_cols[r]);
    }
    report.antipode_left =
        std::max(report.antipode_left, operator_norm(acc_left - expected));
    report.antipode_right =
        std::max(report.antipode_right, operator_norm(acc_right - expected));
  }
  return report;
}

Functional haar_state(const FiniteQuantumGroup& g, HaarReport* report,
                      const Tolerances& tol) {
  const auto& alg = g.algebra();
  const auto& sq = g.square();
  const int n = alg->dim();
  const Vec unit = Element::unit(alg).coords();

  Mat system(2 * n * n, n);
  Eigen::Index row = 0;
  for (int m = 0; m < n; ++m) {
    Mat v = sq.unpack(g.coproduct().matrix().col(m));
    for (int q = 0; q < n; ++q) {
      for (int p = 0; p < n; ++p) {
        system(row, p) = v(p, q) - (p == m ? unit[q] : Complex(0.0));
      }
      ++row;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        system(row, q) = v(p, q) - (q == m ? unit[p] : Complex(0.0));
      }
      ++row;
    }
  }

  Mat solutions = nullspace(system, tol.rank_cutoff);
  HaarReport local;
  local.solution_dim = static_cast<int>(solutions.cols());
  if (local.solution_dim != 1) {
    if (report) *report = local;
    std::ostringstream msg;
    msg << "Haar invariance system has solution space of dimension "
        << local.solution_dim << " (expected 1): not a quantum group";
    throw InvariantViolation(msg.str());
  }

  Vec h0 = solutions.col(0);
  Complex at_unit = (unit.transpose() * h0)(0);
  if (std::abs(at_unit) < tol.rank_cutoff) {
    throw InvariantViolation("Haar solution vanishes on the unit");
  }
  RVec h = (h0 / at_unit).transpose();

  Functional haar(alg, h);
  for (int m = 0; m < n; ++m) {
    Mat v = sq.unpack(g.coproduct().matrix().col(m));
    Vec left = (h * v).transpose() - h(m) * unit;
    Vec right = v * h.transpose() - h(m) * unit;
    local.invariance_left =
        std::max(local.invariance_left, operator_norm(Element(alg, left)));
    local.invariance_right =
        std::max(local.invariance_right, operator_norm(Element(alg, right)));
  }
  local.state = state_check(haar, tol);
  if (report) *report = local;
  if (!local.state.is_state) {
    std::ostringstream msg;
    msg << "Haar solution is not a state (unit defect "
        << local.state.unit_defect << ", min Gram eigenvalue "
        << local.state.min_gram_eigenvalue << ")";
    throw InvariantViolation(msg.str());
  }
  return haar;
}

Mat null_ideal(const FiniteQuantumGroup& g, const Functional& phi,
               const Tolerances& tol) {
  if (!phi.domain()->same_structure(*g.algebra())) {
    throw StructuralError("functional does not live on the group algebra");
  }
  auto check = state_check(phi, tol);
  if (!check.is_state) {
    throw PreconditionError("null_ideal requires a state");
  }
  return nullspace(gram_matrix(phi), tol.rank_cutoff);
}

ReducedQuotient reduced_quotient(const QuantumGroupPtr& g,
                                 const Tolerances& tol) {
  const auto& alg = g->algebra();
  const int n = alg->dim();
  const Functional& h = g->haar(tol);
  Mat gram = gram_matrix(h);
  Mat null_basis = nullspace(gram, tol.rank_cutoff);

  if (null_basis.cols() == 0) {
    return ReducedQuotient{g, LinearMap::identity(alg), 0};
  }

  // A two-sided ideal of a multi-matrix algebra is a sub-sum of blocks; a
  // basis unit lies in N_h exactly when its Gram diagonal vanishes.
  std::vector<int> live_blocks;
  int dead_dim = 0;
  for (int b = 0; b < alg->block_count(); ++b) {
    const int d = alg->block_size(b);
    int dead_units = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const int p = alg->basis_index(b, i, j);
        if (std::abs(gram(p, p)) <= tol.zero) ++dead_units;
      }
    }
    if (dead_units == 0) {
      live_blocks.push_back(b);
    } else if (dead_units == d * d) {
      dead_dim += d * d;
    } else {
      throw InvariantViolation("N_h is not a sum of blocks: corrupted data");
    }
  }
  if (dead_dim != null_basis.cols()) {
    throw InvariantViolation("N_h dimension does not match dead blocks");
  }

  std::vector<int> sizes;
  std::vector<int> live_indices;
  for (int b : live_blocks) {
    sizes.push_back(alg->block_size(b));
    const int d = alg->block_size(b);
    for (int k = 0; k < d * d; ++k) {
      live_indices.push_back(alg->block_offset(b) + k);
    }
  }
  AlgebraPtr reduced = make_algebra(sizes);
  const int m = reduced->dim();

  Mat projection = Mat::Zero(m, n);
  for (int r = 0; r < m; ++r) projection(r, live_indices[r]) = 1.0;

  TensorStructure reduced_sq(reduced, reduced);
  Mat delta_r(m * m, m);
  for (int r = 0; r < m; ++r) {
    Mat v = g->square().unpack(g->coproduct().matrix().col(live_indices[r]));
    Mat vr(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b2 = 0; b2 < m; ++b2) {
        vr(a, b2) = v(live_indices[a], live_indices[b2]);
      }
    }
    delta_r.col(r) = reduced_sq.pack(vr);
  }
  RVec eps_r(m);
  Mat kappa_r(m, m);
  for (int r = 0; r < m; ++r) {
    eps_r(r) = g->counit().coeffs()(live_indices[r]);
    for (int a = 0; a < m; ++a) {
      kappa_r(a, r) = g->antipode().matrix()(live_indices[a], live_indices[r]);
    }
  }

  auto quotient = std::make_shared<const FiniteQuantumGroup>(
      reduced, LinearMap(reduced, reduced_sq.product(), delta_r),
      Functional(reduced, eps_r), LinearMap(reduced, reduced, kappa_r));
  HopfReport check = verify_hopf(*quotient);
  if (!check.pass(tol)) {
    std::ostringstream msg;
    msg << "induced Hopf maps on A/N_h fail verification (max residual "
        << check.max_residual() << "): corrupted data";
    throw StructuralError(msg.str());
  }
  // h must factor through the quotient Haar.
  const Functional& hr = quotient->haar(tol);
  double factor_residual =
      (hr.coeffs() * projection - h.coeffs()).cwiseAbs().maxCoeff();
  if (factor_residual > tol.residual) {
    throw InvariantViolation("Haar does not factor through the reduction");
  }
  return ReducedQuotient{quotient, LinearMap(alg, reduced, projection),
                         static_cast<int>(null_basis.cols())};
}

Corepresentation::Corepresentation(QuantumGroupPtr group, int degree,
                                   std::vector<Element> entries)
    : group_(std::move(group)), degree_(degree), entries_(std::move(entries)) {
  if (degree_ <= 0 ||
      entries_.size() != static_cast<std::size_t>(degree_) * degree_) {
    throw StructuralError("corepresentation grid must be d×d");
  }
  for (const auto& e : entries_) {
    if (!e.parent()->same_structure(*group_->algebra())) {
      throw StructuralError("corepresentation entries must live in A");
    }
  }
}

CorepReport verify_corepresentation(const Corepresentation& u) {
  const auto& g = *u.group();
  const auto& alg = g.algebra();
  const auto& sq = g.square();
  const int d = u.degree();
  CorepReport report;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Element expected = Element::zero(sq.product());
      for (int k = 0; k < d; ++k) {
        expected = expected + sq.tensor(u.at(i, k), u.at(k, j));
      }
      Element actual = g.coproduct()(u.at(i, j));
      report.coaction = std::max(report.coaction,
                                 operator_norm(actual - expected));
      report.counit = std::max(
          report.counit,
          std::abs(g.counit()(u.at(i, j)) - Complex(i == j ? 1.0 : 0.0)));

      Element row_sum = Element::zero(alg);
      Element col_sum = Element::zero(alg);
      for (int k = 0; k < d; ++k) {
        row_sum = row_sum + multiply(u.at(i, k), involute(u.at(j, k)));
        col_sum = col_sum + multiply(involute(u.at(k, i)), u.at(k, j));
      }
      Element delta = (i == j) ? Element::unit(alg) : Element::zero(alg);
      report.unitarity = std::max(report.unitarity,
                                  operator_norm(row_sum - delta));
      report.unitarity = std::max(report.unitarity,
                                  operator_norm(col_sum - delta));
    }
  }
  return report;
}

Mat intertwiner_space(const Corepresentation& u1, const Corepresentation& u2,
                      const Tolerances& tol) {
  if (!u1.group()->algebra()->same_structure(*u2.group()->algebra())) {
    throw StructuralError("intertwiners need corepresentations over one group");
  }
  const int d1 = u1.degree();
  const int d2 = u2.degree();
  const int n = u1.group()->algebra()->dim();
  // (T⊗1)U1 = U2(T⊗1), unknown T of shape d2×d1 flattened row-major.
  Mat system = Mat::Zero(static_cast<Eigen::Index>(d2) * d1 * n, d2 * d1);
  Eigen::Index row = 0;
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d1; ++j) {
      for (int r = 0; r < n; ++r) {
        for (int k = 0; k < d1; ++k) {
          system(row + r, i * d1 + k) += u1.at(k, j).coords()[r];
        }
        for (int k = 0; k < d2; ++k) {
          system(row + r, k * d1 + j) -= u2.at(i, k).coords()[r];
        }
      }
      row += n;
    }
  }
  return nullspace(system, tol.rank_cutoff);
}

Corepresentation conjugate_corep(const Corepresentation& u) {
  std::vector<Element> entries;
  entries.reserve(u.entries().size());
  for (const auto& e : u.entries()) entries.push_back(involute(e));
  return Corepresentation(u.group(), u.degree(), std::move(entries));
}

namespace {

Mat reshape_intertwiner(const Vec& flat, int d2, int d1) {
  Mat t(d2, d1);
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d1; ++j) t(i, j) = flat[i * d1 + j];
  }
  return t;
}

/// Compress a corepresentation to an invariant subspace spanned by the
/// orthonormal columns of q.
Corepresentation restrict_corep(const Corepresentation& u, const Mat& q) {
  const int d = u.degree();
  const int m = static_cast<int>(q.cols());
  const auto& alg = u.group()->algebra();
  std::vector<Element> entries;
  entries.reserve(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Vec coords = Vec::Zero(alg->dim());
      for (int k = 0; k < d; ++k) {
        const Complex qa = std::conj(q(k, a));
        if (qa == Complex(0.0)) continue;
        for (int l = 0; l < d; ++l) {
          const Complex qb = q(l, b);
          if (qb == Complex(0.0)) continue;
          coords += qa * qb * u.at(k, l).coords();
        }
      }
      entries.push_back(Element(alg, std::move(coords)));
    }
  }
  return Corepresentation(u.group(), m, std::move(entries));
}

struct IrreduciblePiece {
  Mat columns;  // carrier columns inside the original corepresentation
  Corepresentation rep;
};

void split_recursively(const Corepresentation& u, const Mat& columns,
                       std::mt19937_64& rng, const Tolerances& tol,
                       std::vector<IrreduciblePiece>& out) {
  Mat mor = intertwiner_space(u, u, tol);
  const int m = static_cast<int>(mor.cols());
  if (m <= 0) {
    throw InvariantViolation("self-intertwiner space lost the identity");
  }
  if (m == 1) {
    out.push_back(IrreduciblePiece{columns, u});
    return;
  }
  const int d = u.degree();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Mat t = Mat::Zero(d, d);
    for (int i = 0; i < m; ++i) {
      t += Complex(gauss(rng), gauss(rng)) * reshape_intertwiner(mor.col(i), d, d);
    }
    Mat h = (t + t.adjoint()) / 2.0;
    double scale = max_abs(h);
    if (scale < 1e-10) continue;
    h /= scale;
    Eigen::SelfAdjointEigenSolver<Mat> eig(h);
    const auto& vals = eig.eigenvalues();
    std::vector<int> starts{0};
    for (int i = 1; i < d; ++i) {
      if (vals(i) - vals(i - 1) > 1e-6) starts.push_back(i);
    }
    if (starts.size() < 2) continue;
    starts.push_back(d);
    for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
      const int begin = starts[c];
      const int len = starts[c + 1] - begin;
      Mat q = eig.eigenvectors().middleCols(begin, len);
      split_recursively(restrict_corep(u, q), columns * q, rng, tol, out);
    }
    return;
  }
  throw InvariantViolation(
      "failed to split a reducible corepresentation after 32 draws");
}

/// Unitary T with T V T† = R, or nothing if V and R are inequivalent.
std::optional<Mat> unitary_equivalence(const Corepresentation& v,
                                       const Corepresentation& r,
                                       const Tolerances& tol) {
  if (v.degree() != r.degree()) return std::nullopt;
  Mat mor = intertwiner_space(v, r, tol);
  if (mor.cols() == 0) return std::nullopt;
  if (mor.cols() > 1) {
    throw InvariantViolation("two irreducibles with Mor dimension > 1");
  }
  Mat t = reshape_intertwiner(mor.col(0), r.degree(), v.degree());
  Mat tt = t.adjoint() * t;
  Complex c = tt.trace() / static_cast<double>(v.degree());
  if (std::abs(c) < tol.rank_cutoff ||
      max_abs(tt - c * Mat::Identity(v.degree(), v.degree())) >
          1e-6 * std::abs(c)) {
    throw InvariantViolation("irreducible intertwiner is not a scaled unitary");
  }
  return t / std::sqrt(std::abs(c));
}

Vec character_of(const Corepresentation& u) {
  Vec chi = Vec::Zero(u.group()->algebra()->dim());
  for (int i = 0; i < u.degree(); ++i) chi += u.at(i, i).coords();
  return chi;
}

std::vector<std::pair<long long, long long>> character_key(const Vec& chi) {
  std::vector<std::pair<long long, long long>> key;
  key.reserve(chi.size());
  for (Eigen::Index i = 0; i < chi.size(); ++i) {
    key.emplace_back(std::llround(chi[i].real() * 1e6),
                     std::llround(chi[i].imag() * 1e6));
  }
  return key;
}

}  // namespace

IrrepDecomposition decompose_corep(const Corepresentation& u,
                                   std::uint64_t seed, const Tolerances& tol) {
  CorepReport check = verify_corepresentation(u);
  if (!check.corep(tol)) {
    std::ostringstream msg;
    msg << "not a corepresentation (coaction residual " << check.coaction
        << ", counit residual " << check.counit << ")";
    throw PreconditionError(msg.str());
  }
  if (!check.unitary(tol)) {
    std::ostringstream msg;
    msg << "decompose_corep requires a unitary corepresentation (residual "
        << check.unitarity << ")";
    throw PreconditionError(msg.str());
  }

  const int d = u.degree();
  std::mt19937_64 rng(seed);
  std::vector<IrreduciblePiece> pieces;
  split_recursively(u, Mat::Identity(d, d), rng, tol, pieces);

  struct ClassBucket {
    Corepresentation rep;
    Vec character;
    std::vector<Mat> occurrences;
  };
  std::vector<ClassBucket> buckets;
  for (auto& piece : pieces) {
    bool placed = false;
    for (auto& bucket : buckets) {
      auto t = unitary_equivalence(piece.rep, bucket.rep, tol);
      if (t) {
        bucket.occurrences.push_back(piece.columns * t->adjoint());
        placed = true;
        break;
      }
    }
    if (!placed) {
      buckets.push_back(ClassBucket{piece.rep, character_of(piece.rep),
                                    {piece.columns}});
    }
  }

  std::stable_sort(buckets.begin(), buckets.end(),
                   [](const ClassBucket& a, const ClassBucket& b) {
                     if (a.rep.degree() != b.rep.degree()) {
                       return a.rep.degree() < b.rep.degree();
                     }
                     return character_key(a.character) <
                            character_key(b.character);
                   });

  IrrepDecomposition result;
  result.degree = d;
  result.seed = seed;
  Mat basis(d, d);
  int col = 0;
  int total = 0;
  for (auto& bucket : buckets) {
    IrrepClass cls{bucket.rep, static_cast<int>(bucket.occurrences.size()),
                   f_matrix(bucket.rep, tol), bucket.character};
    total += cls.multiplicity * bucket.rep.degree();
    for (const Mat& occ : bucket.occurrences) {
      basis.middleCols(col, occ.cols()) = occ;
      col += static_cast<int>(occ.cols());
    }
    result.classes.push_back(std::move(cls));
  }
  if (total != d || col != d) {
    throw InvariantViolation("irreducible dimensions do not sum to the degree");
  }
  result.change_of_basis = std::move(basis);

  // Round-trip: conjugating by the basis must reproduce the representatives
  // on the diagonal blocks and zero elsewhere.
  Corepresentation conjugated = restrict_corep(u, result.change_of_basis);
  double residual = 0.0;
  int offset_i = 0;
  for (const auto& ci : result.classes) {
    for (int mi = 0; mi < ci.multiplicity; ++mi) {
      int offset_j = 0;
      for (const auto& cj : result.classes) {
        for (int mj = 0; mj < cj.multiplicity; ++mj) {
          for (int a = 0; a < ci.rep.degree(); ++a) {
            for (int b = 0; b < cj.rep.degree(); ++b) {
              Element actual = conjugated.at(offset_i + a, offset_j + b);
              Element expected =
                  (offset_i == offset_j)
                      ? ci.rep.at(a, b)
                      : Element::zero(u.group()->algebra());
              residual = std::max(residual, operator_norm(actual - expected));
            }
          }
          offset_j += cj.rep.degree();
        }
      }
      offset_i += ci.rep.degree();
    }
  }
  if (residual > tol.residual) {
    std::ostringstream msg;
    msg << "block-diagonalization round trip failed (residual " << residual
        << ")";
    throw InvariantViolation(msg.str());
  }
  return result;
}

FMatrixReport f_matrix(const Corepresentation& irrep, const Tolerances& tol) {
  const auto& g = *irrep.group();
  const Functional& h = g.haar(tol);
  const int d = irrep.degree();

  // Gram tensor of the first orthogonality relation:
  // h(u_mk u*_nl) = δ_mn F_lk / M.
  std::vector<Mat> slices;  // slices[m](k,l) for the diagonal m == n
  double pattern = 0.0;
  std::vector<Mat> cross(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      Mat s(d, d);
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          s(k, l) = h(multiply(irrep.at(m, k), involute(irrep.at(n, l))));
        }
      }
      cross[static_cast<std::size_t>(m) * d + n] = s;
      if (m != n) pattern = std::max(pattern, max_abs(s));
    }
  }
  int base = -1;
  for (int m = 0; m < d; ++m) {
    const Mat& s = cross[static_cast<std::size_t>(m) * d + m];
    if (base < 0 && max_abs(s) > tol.zero) base = m;
  }
  if (base < 0) {
    throw InvariantViolation("orthogonality Gram tensor is identically zero");
  }
  const Mat& s0 = cross[static_cast<std::size_t>(base) * d + base];
  for (int m = 0; m < d; ++m) {
    pattern = std::max(
        pattern, max_abs(cross[static_cast<std::size_t>(m) * d + m] - s0));
  }
  if (pattern > tol.residual) {
    std::ostringstream msg;
    msg << "Gram tensor violates the δ pattern (residual " << pattern << ")";
    throw InvariantViolation(msg.str());
  }

  Mat g0 = s0.transpose();  // = F / M up to the scale fixed below
  Eigen::SelfAdjointEigenSolver<Mat> eig((g0 + g0.adjoint()) / 2.0);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw InvariantViolation("orthogonality slice is not positive definite");
  }
  const double tr = eig.eigenvalues().sum();
  const double tr_inv = eig.eigenvalues().cwiseInverse().sum();
  const double scale = std::sqrt(tr_inv / tr);

  FMatrixReport report;
  report.f = scale * (g0 + g0.adjoint()) / 2.0;
  report.quantum_dimension = scale * tr;
  report.pattern_residual = pattern;
  report.trace_symmetry = std::abs(scale * tr - tr_inv / scale);

  Mat f_inv = hermitian_power(report.f, -1.0);
  double inverse = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          Complex val =
              h(multiply(involute(irrep.at(k, m)), irrep.at(l, n)));
          Complex expected = (m == n)
                                 ? f_inv(l, k) / report.quantum_dimension
                                 : Complex(0.0);
          inverse = std::max(inverse, std::abs(val - expected));
        }
      }
    }
  }
  report.inverse_residual = inverse;
  if (inverse > tol.residual) {
    std::ostringstream msg;
    msg << "second orthogonality relation fails (residual " << inverse << ")";
    throw InvariantViolation(msg.str());
  }
  return report;
}

Corepresentation regular_corepresentation(const QuantumGroupPtr& g) {
  const auto& alg = g->algebra();
  const auto& sq = g->square();
  const int n = alg->dim();
  std::vector<Element> entries(static_cast<std::size_t>(n) * n,
                               Element::zero(alg));
  for (int p = 0; p < n; ++p) {
    Mat v = sq.unpack(g->coproduct().matrix().col(p));
    for (int r = 0; r < n; ++r) {
      entries[static_cast<std::size_t>(r) * n + p] =
          Element(alg, v.row(r).transpose());
    }
  }
  return Corepresentation(g, n, std::move(entries));
}

Corepresentation unitarize(const Corepresentation& u, const Tolerances& tol) {
  const auto& g = *u.group();
  const Functional& h = g.haar(tol);
  const int d = u.degree();
  Mat c(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < d; ++k) {
        acc += h(multiply(involute(u.at(k, i)), u.at(k, j)));
      }
      c(i, j) = acc;
    }
  }
  Mat c_half = hermitian_power(c, 0.5);
  Mat c_inv_half = hermitian_power(c, -0.5);

  const auto& alg = g.algebra();
  std::vector<Element> entries(static_cast<std::size_t>(d) * d,
                               Element::zero(alg));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Vec coords = Vec::Zero(alg->dim());
      for (int k = 0; k < d; ++k) {
        if (c_half(i, k) == Complex(0.0)) continue;
        for (int l = 0; l < d; ++l) {
          coords += c_half(i, k) * c_inv_half(l, j) * u.at(k, l).coords();
        }
      }
      entries[static_cast<std::size_t>(i) * d + j] = Element(alg, coords);
    }
  }
  Corepresentation v(u.group(), d, std::move(entries));
  CorepReport check = verify_corepresentation(v);
  if (!check.unitary(tol)) {
    std::ostringstream msg;
    msg << "Haar averaging did not produce a unitary corepresentation "
        << "(residual " << check.unitarity << ")";
    throw InvariantViolation(msg.str());
  }
  return v;
}

IrrepDecomposition all_irreps(const QuantumGroupPtr& g, std::uint64_t seed,
                              const Tolerances& tol) {
  return decompose_corep(unitarize(regular_corepresentation(g), tol), seed,
                         tol);
}

KacReport is_kac(const QuantumGroupPtr& g, std::uint64_t seed,
                 const Tolerances& tol) {
  const auto& alg = g->algebra();
  const Functional& h = g->haar(tol);
  const int n = alg->dim();
  KacReport report;
  report.seed = seed;

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < p; ++q) {
      auto pq = basis_product(*alg, p, q);
      auto qp = basis_product(*alg, q, p);
      Complex forward = pq ? h.coeffs()(*pq) : Complex(0.0);
      Complex backward = qp ? h.coeffs()(*qp) : Complex(0.0);
      report.tracial_residual =
          std::max(report.tracial_residual, std::abs(forward - backward));
    }
  }

  Mat kappa_sq = g->antipode().matrix() * g->antipode().matrix();
  report.antipode_square_residual =
      max_abs(kappa_sq - Mat::Identity(n, n));

  IrrepDecomposition irreps = all_irreps(g, seed, tol);
  for (const auto& cls : irreps.classes) {
    report.f_matrix_residual = std::max(
        report.f_matrix_residual,
        max_abs(cls.f.f - Mat::Identity(cls.rep.degree(), cls.rep.degree())));
  }

  report.tracial = report.tracial_residual <= tol.residual;
  report.antipode_involutive = report.antipode_square_residual <= tol.residual;
  report.f_trivial = report.f_matrix_residual <= tol.residual;
  if (report.tracial != report.antipode_involutive ||
      report.tracial != report.f_trivial) {
    std::ostringstream msg;
    msg << "Kac criteria disagree: tracial=" << report.tracial
        << " antipode_involutive=" << report.antipode_involutive
        << " f_trivial=" << report.f_trivial;
    throw InvariantViolation(msg.str());
  }
  return report;
}

}  // namespace cqg
