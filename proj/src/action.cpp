#include "cqg/action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cqg {

namespace {

void require_valid(const FiniteAction& act, const Tolerances& tol,
                   const char* op) {
  if (!act.valid(tol)) {
    std::ostringstream msg;
    msg << op << " requires a valid action (max residual "
        << act.report().max_residual() << ")";
    throw PreconditionError(msg.str());
  }
}

std::vector<int> sorted_points(std::uint32_t mask, int n) {
  std::vector<int> pts;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) pts.push_back(i);
  }
  return pts;
}

Eigen::MatrixXd entry_norms(const FiniteAction& act) {
  const int n = act.points();
  Eigen::MatrixXd norms(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      norms(i, j) = operator_norm(act.entry(i, j));
    }
  }
  return norms;
}

/// Partition blocks sorted by their smallest member, blocks themselves sorted.
std::vector<std::vector<int>> canonical_blocks(const std::vector<int>& root,
                                               int n) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (block_index[root[i]] < 0) {
      block_index[root[i]] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_index[root[i]]].push_back(i);
  }
  return blocks;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> canonical_roots() {
    std::vector<int> roots(parent.size());
    // root = smallest member of the class
    std::vector<int> smallest(parent.size(), -1);
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
      int r = find(i);
      if (smallest[r] < 0) smallest[r] = i;
    }
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
      roots[i] = smallest[find(i)];
    }
    return roots;
  }
};

}  // namespace

double ActionReport::max_residual() const {
  double r = projection.value;
  r = std::max(r, self_adjoint.value);
  r = std::max(r, row_sum.value);
  r = std::max(r, column_sum.value);
  r = std::max(r, coaction.value);
  r = std::max(r, counit.value);
  return r;
}

FiniteAction::FiniteAction(QuantumGroupPtr group, int points,
                           std::vector<Element> grid)
    : group_(std::move(group)),
      points_(points),
      grid_(std::move(grid)),
      space_(make_algebra(std::vector<int>(points, 1))),
      tensor_(space_, group_->algebra()),
      coaction_(space_, tensor_.product(),
                Mat::Zero(tensor_.product()->dim(), points)) {
  if (points_ <= 0 ||
      grid_.size() != static_cast<std::size_t>(points_) * points_) {
    throw StructuralError("action grid must be n×n");
  }
  const auto& alg = group_->algebra();
  for (const auto& e : grid_) {
    if (!e.parent()->same_structure(*alg)) {
      throw StructuralError("grid entries must live in the group algebra");
    }
  }

  // α(e_j) = Σ_i e_i ⊗ a_ij
  Mat alpha = Mat::Zero(tensor_.product()->dim(), points_);
  for (int j = 0; j < points_; ++j) {
    for (int i = 0; i < points_; ++i) {
      const Vec& a = entry(i, j).coords();
      for (int r = 0; r < alg->dim(); ++r) {
        alpha(tensor_.pair_index(i, r), j) += a[r];
      }
    }
  }
  coaction_ = LinearMap(space_, tensor_.product(), std::move(alpha));

  const auto& g = *group_;
  const auto& sq = g.square();
  for (int i = 0; i < points_; ++i) {
    for (int j = 0; j < points_; ++j) {
      const Element& a = entry(i, j);
      report_.projection.update(i, j, operator_norm(multiply(a, a) - a));
      report_.self_adjoint.update(i, j, operator_norm(involute(a) - a));

      Element coact = Element::zero(sq.product());
      for (int k = 0; k < points_; ++k) {
        coact = coact + sq.tensor(entry(i, k), entry(k, j));
      }
      report_.coaction.update(i, j,
                              operator_norm(g.coproduct()(a) - coact));
      report_.counit.update(
          i, j, std::abs(g.counit()(a) - Complex(i == j ? 1.0 : 0.0)));
    }
    Element row = Element::zero(alg);
    Element col = Element::zero(alg);
    for (int k = 0; k < points_; ++k) {
      row = row + entry(i, k);
      col = col + entry(k, i);
    }
    report_.row_sum.update(i, 0, operator_norm(row - Element::unit(alg)));
    report_.column_sum.update(0, i, operator_norm(col - Element::unit(alg)));
  }
}

Corepresentation FiniteAction::magic_unitary() const {
  return Corepresentation(group_, points_, grid_);
}

ActionVerification verify_action(const QuantumGroupPtr& group,
                                 std::vector<Element> grid,
                                 const Tolerances& tol) {
  const int n = static_cast<int>(
      std::llround(std::sqrt(static_cast<double>(grid.size()))));
  FiniteAction act(group, n, std::move(grid));
  ActionVerification out{std::nullopt, act.report()};
  if (act.valid(tol)) out.action.emplace(std::move(act));
  return out;
}

OrbitPartition orbit_partition(const FiniteAction& act, const Tolerances& tol) {
  require_valid(act, tol, "orbit_partition");
  const int n = act.points();
  const Functional& h = act.group()->haar(tol);

  Eigen::MatrixXd norms = entry_norms(act);
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (norms(i, j) > tol.zero) uf.unite(i, j);
    }
  }
  std::vector<int> roots = uf.canonical_roots();

  Eigen::MatrixXd haar_values(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex v = h(act.entry(i, j));
      if (std::abs(v.imag()) > tol.residual) {
        throw InvariantViolation("Haar value of a projection is not real");
      }
      haar_values(i, j) = v.real();
    }
  }
  // Second, independent route: points share an orbit iff their Haar rows
  // (ev_x⊗h)α agree.
  std::vector<int> haar_roots(n);
  for (int i = 0; i < n; ++i) {
    haar_roots[i] = i;
    for (int j = 0; j < i; ++j) {
      if ((haar_values.row(i) - haar_values.row(j)).cwiseAbs().maxCoeff() <=
          tol.residual) {
        haar_roots[i] = haar_roots[j];
        break;
      }
    }
  }
  if (roots != haar_roots) {
    throw InvariantViolation(
        "zero-pattern orbits disagree with Haar-row orbits");
  }

  OrbitPartition part;
  part.blocks = canonical_blocks(roots, n);
  part.block_of.assign(n, -1);
  part.orbit_size.assign(n, 0);
  for (int b = 0; b < static_cast<int>(part.blocks.size()); ++b) {
    for (int p : part.blocks[b]) {
      part.block_of[p] = b;
      part.orbit_size[p] = static_cast<int>(part.blocks[b].size());
    }
  }
  part.haar_values = std::move(haar_values);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double expected =
          (part.block_of[i] == part.block_of[j]) ? 1.0 / part.orbit_size[i]
                                                 : 0.0;
      if (std::abs(part.haar_values(i, j) - expected) > tol.residual) {
        std::ostringstream msg;
        msg << "h(a_" << i + 1 << j + 1 << ") = " << part.haar_values(i, j)
            << " but the orbit of size " << part.orbit_size[i] << " requires "
            << expected;
        throw InvariantViolation(msg.str());
      }
    }
  }
  return part;
}

FixedPointAlgebra fixed_point_algebra(const FiniteAction& act,
                                      const Tolerances& tol) {
  require_valid(act, tol, "fixed_point_algebra");
  const int n = act.points();
  const auto& alg = act.group()->algebra();
  const Functional& h = act.group()->haar(tol);

  // Route 1: kernel of α − (·)⊗1.
  Mat embed = Mat::Zero(act.space_tensor().product()->dim(), n);
  const Vec unit = Element::unit(alg).coords();
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < alg->dim(); ++r) {
      embed(act.space_tensor().pair_index(j, r), j) = unit[r];
    }
  }
  Mat kernel = nullspace(act.coaction().matrix() - embed, tol.rank_cutoff);

  // Route 2: image of (id⊗h)α.
  Mat averaged(n, n);
  for (int j = 0; j < n; ++j) {
    Mat v = act.space_tensor().unpack(act.coaction().matrix().col(j));
    averaged.col(j) = v * h.coeffs().transpose();
  }
  Mat image = orthonormal_columns(averaged, tol.rank_cutoff);

  FixedPointAlgebra fp;
  fp.basis = kernel;
  if (kernel.cols() != image.cols()) {
    throw InvariantViolation(
        "fixed-point kernel and Haar-average image have different dimensions");
  }
  Mat p1 = kernel * kernel.adjoint();
  Mat p2 = image * image.adjoint();
  fp.subspace_mismatch = (p1 - p2).cwiseAbs().maxCoeff();
  if (fp.subspace_mismatch > tol.residual) {
    throw InvariantViolation("fixed-point subspaces disagree");
  }

  // Y_α: level sets of B^α. Functions in B^α separate exactly the orbits, so
  // equal rows of the projection identify the classes.
  std::vector<int> roots(n);
  for (int i = 0; i < n; ++i) {
    roots[i] = i;
    for (int j = 0; j < i; ++j) {
      if ((p1.row(i) - p1.row(j)).cwiseAbs().maxCoeff() <= tol.residual &&
          std::abs(p1(i, i) - p1(j, j)) <= tol.residual) {
        roots[i] = roots[j];
        break;
      }
    }
  }
  fp.level_sets = canonical_blocks(roots, n);
  return fp;
}

namespace {

/// Real linear system for invariant functionals: Σ_i p_i a_ij = p_j 1 for
/// all j, with complex coordinate rows split into re/im.
Eigen::MatrixXd invariance_system(const FiniteAction& act) {
  const int n = act.points();
  const auto& alg = act.group()->algebra();
  const int d = alg->dim();
  const Vec unit = Element::unit(alg).coords();
  Eigen::MatrixXd sys(2 * n * d, n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < d; ++r) {
      for (int i = 0; i < n; ++i) {
        Complex c = act.entry(i, j).coords()[r] -
                    (i == j ? unit[r] : Complex(0.0));
        sys(2 * (j * d + r), i) = c.real();
        sys(2 * (j * d + r) + 1, i) = c.imag();
      }
    }
  }
  return sys;
}

Eigen::MatrixXd real_nullspace(const Eigen::MatrixXd& m, double cutoff) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double invariance_residual(const FiniteAction& act, const Eigen::VectorXd& p) {
  const auto& alg = act.group()->algebra();
  double res = 0.0;
  for (int j = 0; j < act.points(); ++j) {
    Element acc = Element::unit(alg) * Complex(-p(j));
    for (int i = 0; i < act.points(); ++i) {
      acc = acc + act.entry(i, j) * Complex(p(i));
    }
    res = std::max(res, operator_norm(acc));
  }
  return res;
}

}  // namespace

InvariantStatePolytope invariant_state_polytope(const FiniteAction& act,
                                                const Tolerances& tol) {
  require_valid(act, tol, "invariant_state_polytope");
  const int n = act.points();
  OrbitPartition orbits = orbit_partition(act, tol);
  const int k = static_cast<int>(orbits.blocks.size());

  Eigen::MatrixXd sys = invariance_system(act);
  InvariantStatePolytope pol;
  pol.functional_dim =
      static_cast<int>(real_nullspace(sys, tol.rank_cutoff).cols());
  pol.affine_dim = pol.functional_dim - 1;

  FixedPointAlgebra fp = fixed_point_algebra(act, tol);
  if (pol.functional_dim != fp.dimension()) {
    std::ostringstream msg;
    msg << "invariant-functional space has dimension " << pol.functional_dim
        << " but B^α has dimension " << fp.dimension();
    throw InvariantViolation(msg.str());
  }
  if (pol.functional_dim != k) {
    throw InvariantViolation(
        "invariant-functional dimension differs from the orbit count");
  }

  // With the dimension pinned, the polytope is the hull of the uniform
  // measures on orbits (their supports are disjoint); they are its vertices.
  pol.vertices = Eigen::MatrixXd::Zero(k, n);
  for (int b = 0; b < k; ++b) {
    for (int p : orbits.blocks[b]) {
      pol.vertices(b, p) = 1.0 / static_cast<double>(orbits.blocks[b].size());
    }
  }
  for (int b = 0; b < k; ++b) {
    pol.max_invariance_residual =
        std::max(pol.max_invariance_residual,
                 invariance_residual(act, pol.vertices.row(b).transpose()));
  }
  if (pol.max_invariance_residual > tol.residual) {
    throw InvariantViolation("an orbit-uniform measure is not invariant");
  }

  // Independent brute-force vertex enumeration over zero sets, small n only.
  if (n <= 12) {
    Eigen::MatrixXd affine(sys.rows() + 1, n);
    affine.topRows(sys.rows()) = sys;
    affine.bottomRows(1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(affine.rows());
    rhs(affine.rows() - 1) = 1.0;
    Eigen::VectorXd base =
        affine.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    if ((affine * base - rhs).cwiseAbs().maxCoeff() > 1e-8) {
      throw InvariantViolation("invariant-state system is infeasible");
    }
    Eigen::MatrixXd dir = real_nullspace(affine, tol.rank_cutoff);
    const int da = static_cast<int>(dir.cols());

    std::vector<Eigen::VectorXd> found;
    if (da == 0) {
      if (base.minCoeff() < -1e-8) {
        throw InvariantViolation("unique invariant state is not positive");
      }
      found.push_back(base);
    }
    for (std::uint32_t mask = 0; da > 0 && mask < (1u << n); ++mask) {
      std::vector<int> zeros = sorted_points(mask, n);
      if (static_cast<int>(zeros.size()) < da) continue;  // cannot pin a point
      Eigen::MatrixXd dz(zeros.size(), da);
      Eigen::VectorXd bz(zeros.size());
      for (std::size_t z = 0; z < zeros.size(); ++z) {
        dz.row(z) = dir.row(zeros[z]);
        bz(z) = -base(zeros[z]);
      }
      Eigen::BDCSVD<Eigen::MatrixXd> svd(
          dz, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      int rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-9) ++rank;
      if (rank < da) continue;  // zero set does not pin a point
      Eigen::VectorXd t = svd.solve(bz);
      if ((dz * t - bz).cwiseAbs().maxCoeff() > 1e-8) {
        continue;  // zero set incompatible with the affine subspace
      }
      Eigen::VectorXd p = base + dir * t;
      if (p.minCoeff() < -1e-8) continue;
      bool dup = false;
      for (const auto& q : found) {
        if ((p - q).cwiseAbs().maxCoeff() <= 1e-7) dup = true;
      }
      if (!dup) found.push_back(p);
    }
    if (static_cast<int>(found.size()) != k) {
      std::ostringstream msg;
      msg << "vertex enumeration found " << found.size() << " vertices, "
          << "expected " << k << " orbit-uniform measures";
      throw InvariantViolation(msg.str());
    }
    for (const auto& p : found) {
      bool matched = false;
      for (int b = 0; b < k; ++b) {
        if ((p.transpose() - pol.vertices.row(b)).cwiseAbs().maxCoeff() <=
            1e-7) {
          matched = true;
        }
      }
      if (!matched) {
        throw InvariantViolation(
            "enumerated vertex is not an orbit-uniform measure");
      }
    }
    pol.enumerated = true;
  }
  return pol;
}

ErgodicityReport ergodicity_report(const FiniteAction& act,
                                   const Tolerances& tol) {
  require_valid(act, tol, "ergodicity_report");
  const int n = act.points();

  ErgodicityReport report;
  FixedPointAlgebra fp = fixed_point_algebra(act, tol);
  report.fixed_points_trivial = fp.dimension() == 1;

  OrbitPartition orbits = orbit_partition(act, tol);
  report.haar_deviation =
      (orbits.haar_values.array() - 1.0 / n).abs().maxCoeff();
  report.haar_uniform = report.haar_deviation <= tol.residual;

  report.min_entry_norm = entry_norms(act).minCoeff();
  report.entries_nonzero = report.min_entry_norm > tol.zero;

  InvariantStatePolytope pol = invariant_state_polytope(act, tol);
  report.invariant_state_unique_uniform =
      pol.functional_dim == 1 &&
      (pol.vertices.row(0).array() - 1.0 / n).abs().maxCoeff() <= tol.residual;

  const bool verdict = report.fixed_points_trivial;
  if (report.haar_uniform != verdict || report.entries_nonzero != verdict ||
      report.invariant_state_unique_uniform != verdict) {
    std::ostringstream msg;
    msg << "ergodicity criteria disagree: fixed=" << report.fixed_points_trivial
        << " haar=" << report.haar_uniform
        << " nonzero=" << report.entries_nonzero
        << " state=" << report.invariant_state_unique_uniform;
    throw InvariantViolation(msg.str());
  }
  report.ergodic = verdict;
  return report;
}

namespace {

std::uint32_t mask_of(const std::vector<int>& points) {
  std::uint32_t mask = 0;
  for (int p : points) mask |= (1u << p);
  return mask;
}

}  // namespace

InvariantSubsets invariant_subsets(const FiniteAction& act, bool enumerate_all,
                                   const Tolerances& tol) {
  require_valid(act, tol, "invariant_subsets");
  const int n = act.points();
  OrbitPartition orbits = orbit_partition(act, tol);
  const int k = static_cast<int>(orbits.blocks.size());

  Eigen::MatrixXd norms = entry_norms(act);
  std::vector<std::uint32_t> reach(n, 0);  // reach[x] = {y : a_xy ≠ 0}
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (norms(x, y) > tol.zero) reach[x] |= (1u << y);
    }
  }
  auto is_invariant = [&](std::uint32_t mask) {
    for (int x = 0; x < n; ++x) {
      if ((mask & (1u << x)) && (reach[x] & ~mask)) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> orbit_masks(k);
  for (int b = 0; b < k; ++b) orbit_masks[b] = mask_of(orbits.blocks[b]);

  std::vector<std::uint32_t> members;
  if (enumerate_all) {
    if (n > 20) {
      throw PreconditionError(
          "full 2^n enumeration is guarded at n ≤ 20; drop the flag to get "
          "the orbit-generated lattice");
    }
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (is_invariant(static_cast<std::uint32_t>(mask))) {
        members.push_back(static_cast<std::uint32_t>(mask));
      }
    }
  } else {
    if (k > 20) {
      throw PreconditionError("orbit lattice has more than 2^20 members");
    }
    for (std::uint64_t sel = 0; sel < (1ull << k); ++sel) {
      std::uint32_t mask = 0;
      for (int b = 0; b < k; ++b) {
        if (sel & (1ull << b)) mask |= orbit_masks[b];
      }
      if (!is_invariant(mask)) {
        throw InvariantViolation("a union of orbits fails the invariance test");
      }
      members.push_back(mask);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }

  // Every invariant subset must be a union of orbits, and the nonempty
  // minimal ones must be exactly the orbits.
  for (std::uint32_t mask : members) {
    std::uint32_t rebuilt = 0;
    for (int b = 0; b < k; ++b) {
      if (mask & orbit_masks[b]) rebuilt |= orbit_masks[b];
    }
    if (rebuilt != mask) {
      throw InvariantViolation("an invariant subset is not a union of orbits");
    }
  }
  if (members.size() <= 1024) {
    for (std::uint32_t a : members) {
      for (std::uint32_t b : members) {
        if (!is_invariant(a | b) || !is_invariant(a & b)) {
          throw InvariantViolation(
              "invariant subsets are not closed under union/intersection");
        }
      }
    }
  }

  InvariantSubsets out;
  out.enumerated_all = enumerate_all;
  for (std::uint32_t mask : members) {
    SubsetReport report;
    report.subset = sorted_points(mask, n);
    report.invariant = true;
    int contained_orbits = 0;
    int the_block = -1;
    for (int b = 0; b < k; ++b) {
      if (mask & orbit_masks[b]) {
        ++contained_orbits;
        the_block = b;
      }
    }
    report.minimal = contained_orbits == 1 && mask == orbit_masks[the_block];
    if (report.minimal) {
      const int x = orbits.blocks[the_block].front();
      SupportChain chain = support_sets(act, x, tol);
      report.orbit_point = x;
      report.equals_orbit = chain.orbit == report.subset;
      report.equals_m_set = chain.m_set == report.subset;
      report.equals_support = chain.support == report.subset;
    }
    out.subsets.push_back(std::move(report));
  }

  std::vector<std::uint32_t> minimal_masks;
  for (const auto& r : out.subsets) {
    if (r.minimal) minimal_masks.push_back(mask_of(r.subset));
  }
  std::sort(minimal_masks.begin(), minimal_masks.end());
  std::vector<std::uint32_t> sorted_orbits = orbit_masks;
  std::sort(sorted_orbits.begin(), sorted_orbits.end());
  if (minimal_masks != sorted_orbits) {
    throw InvariantViolation("minimal invariant subsets are not the orbits");
  }
  return out;
}

SupportChain support_sets(const FiniteAction& act, int x,
                          const Tolerances& tol) {
  require_valid(act, tol, "support_sets");
  if (x < 0 || x >= act.points()) {
    throw PreconditionError("point index out of range");
  }
  OrbitPartition orbits = orbit_partition(act, tol);

  SupportChain chain;
  for (int y = 0; y < act.points(); ++y) {
    if (orbits.haar_values(x, y) > tol.zero) chain.support.push_back(y);
    if (operator_norm(act.entry(x, y)) > tol.zero) chain.m_set.push_back(y);
  }
  chain.orbit = orbits.blocks[orbits.block_of[x]];

  auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  if (!contains(chain.m_set, chain.support) ||
      !contains(chain.orbit, chain.m_set)) {
    throw InvariantViolation("supp μ_x ⊆ ℳ_x ⊆ Orb_x fails");
  }
  chain.haar_faithful =
      nullspace(gram_matrix(act.group()->haar(tol)), tol.rank_cutoff).cols() ==
      0;
  chain.equal = chain.support == chain.orbit;
  if (chain.haar_faithful && !chain.equal) {
    throw InvariantViolation(
        "faithful Haar requires supp μ_x = ℳ_x = Orb_x on finite spaces");
  }
  return chain;
}

InjectivityReport injectivity_and_x_alpha(const FiniteAction& act,
                                          const Tolerances& tol) {
  require_valid(act, tol, "injectivity_and_x_alpha");
  const int n = act.points();
  Eigen::MatrixXd norms = entry_norms(act);

  InjectivityReport report;
  for (int y = 0; y < n; ++y) {
    bool hit = false;
    for (int x = 0; x < n; ++x) {
      if (norms(x, y) > tol.zero) hit = true;
    }
    if (hit) report.x_alpha.push_back(y);
  }
  report.covers_all = static_cast<int>(report.x_alpha.size()) == n;
  report.injective =
      nullspace(act.coaction().matrix(), tol.rank_cutoff).cols() == 0;
  if (report.injective != report.covers_all) {
    throw InvariantViolation("X_α = X and injectivity of α disagree");
  }
  return report;
}

FiniteAction induced_action(const FiniteAction& act,
                            const std::vector<int>& subset,
                            const Tolerances& tol) {
  require_valid(act, tol, "induced_action");
  const int n = act.points();
  for (int p : subset) {
    if (p < 0 || p >= n) throw PreconditionError("subset point out of range");
  }
  Eigen::MatrixXd norms = entry_norms(act);
  std::uint32_t mask = mask_of(subset);
  for (int x = 0; x < n; ++x) {
    if (!(mask & (1u << x))) continue;
    for (int y = 0; y < n; ++y) {
      if (!(mask & (1u << y)) && norms(x, y) > tol.zero) {
        std::ostringstream msg;
        msg << "subset is not invariant: a_" << x + 1 << y + 1
            << " has norm " << norms(x, y);
        throw PreconditionError(msg.str());
      }
    }
  }

  std::vector<int> pts = sorted_points(mask, n);
  const int m = static_cast<int>(pts.size());
  if (m == 0) throw PreconditionError("cannot restrict to the empty subset");
  std::vector<Element> sub;
  sub.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      sub.push_back(act.entry(pts[i], pts[j]));
    }
  }
  FiniteAction restricted(act.group(), m, std::move(sub));
  if (!restricted.valid(tol)) {
    throw InvariantViolation("restriction to an invariant subset is invalid");
  }

  OrbitPartition orbits = orbit_partition(act, tol);
  if (orbits.blocks[orbits.block_of[pts[0]]] == pts) {
    if (!ergodicity_report(restricted, tol).ergodic) {
      throw InvariantViolation("restriction to a single orbit is not ergodic");
    }
  }
  return restricted;
}

FaithfulnessReport faithfulness_check(const FiniteAction& act,
                                      const Tolerances& tol) {
  require_valid(act, tol, "faithfulness_check");
  Mat basis = subalgebra_generated(act.grid(), tol);
  FaithfulnessReport report;
  report.generated_rank = static_cast<int>(basis.cols());
  report.algebra_dim = act.group()->algebra()->dim();
  report.faithful = report.generated_rank == report.algebra_dim;
  return report;
}

ActionSpectrum multiplicities(const FiniteAction& act, std::uint64_t seed,
                              const Tolerances& tol) {
  require_valid(act, tol, "multiplicities");
  ActionSpectrum spectrum;
  spectrum.decomposition = decompose_corep(act.magic_unitary(), seed, tol);

  const auto& alg = act.group()->algebra();
  const Element unit = Element::unit(alg);
  spectrum.conjugate_closed = true;
  for (const auto& cls : spectrum.decomposition.classes) {
    if (cls.rep.degree() == 1 &&
        operator_norm(cls.rep.at(0, 0) - unit) <= tol.residual) {
      spectrum.trivial_multiplicity = cls.multiplicity;
    }
    spectrum.max_f_deviation = std::max(
        spectrum.max_f_deviation,
        (cls.f.f - Mat::Identity(cls.rep.degree(), cls.rep.degree()))
            .cwiseAbs()
            .maxCoeff());

    Corepresentation conj = conjugate_corep(cls.rep);
    bool has_conjugate = false;
    for (const auto& other : spectrum.decomposition.classes) {
      if (other.rep.degree() != conj.degree()) continue;
      if (intertwiner_space(conj, other.rep, tol).cols() > 0) {
        has_conjugate = true;
        break;
      }
    }
    spectrum.conjugate_closed = spectrum.conjugate_closed && has_conjugate;
  }
  if (!spectrum.conjugate_closed) {
    throw InvariantViolation(
        "an occurring irreducible has no occurring contragredient");
  }
  spectrum.kac_consequence = spectrum.max_f_deviation <= tol.residual;
  if (!spectrum.kac_consequence) {
    throw InvariantViolation(
        "an occurring irreducible has F ≠ id despite the tracial invariant "
        "state");
  }
  return spectrum;
}

}  // namespace cqg
