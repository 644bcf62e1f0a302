#include "cqg/examples.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cqg {

GroupTable::GroupTable(std::vector<std::vector<int>> table)
    : order_(static_cast<int>(table.size())), table_(std::move(table)) {
  if (order_ == 0) throw StructuralError("group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != order_) {
      throw StructuralError("group table is not square");
    }
    for (int v : row) {
      if (v < 0 || v >= order_) {
        throw StructuralError("group table entry out of range");
      }
    }
  }
  for (int e = 0; e < order_; ++e) {
    bool left = true, right = true;
    for (int g = 0; g < order_; ++g) {
      left = left && table_[e][g] == g;
      right = right && table_[g][e] == g;
    }
    if (left && right) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw StructuralError("group table has no identity");
  inverse_.assign(order_, -1);
  for (int g = 0; g < order_; ++g) {
    for (int h = 0; h < order_; ++h) {
      if (table_[g][h] == identity_ && table_[h][g] == identity_) {
        inverse_[g] = h;
      }
    }
    if (inverse_[g] < 0) throw StructuralError("group table has no inverses");
  }
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      for (int c = 0; c < order_; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw StructuralError("group table is not associative");
        }
      }
    }
  }
}

int GroupTable::element_order(int g) const {
  int x = g, k = 1;
  while (x != identity_) {
    x = table_[x][g];
    ++k;
  }
  return k;
}

GroupTable trivial_group() {
  return GroupTable(std::vector<std::vector<int>>{{0}});
}

GroupTable cyclic_group(int n) {
  if (n <= 0) throw PreconditionError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return GroupTable(std::move(t));
}

GroupTable dihedral_group(int k) {
  if (k < 1) throw PreconditionError("dihedral index must be at least 1");
  const int n = 2 * k;
  auto mod = [k](int x) { return ((x % k) + k) % k; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  // element i<k: rotation r^i; element k+i: reflection r^i s
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool fa = a >= k, fb = b >= k;
      const int ia = fa ? a - k : a, ib = fb ? b - k : b;
      int rot = fa ? mod(ia - ib) : mod(ia + ib);
      t[a][b] = rot + ((fa != fb) ? k : 0);
    }
  }
  return GroupTable(std::move(t));
}

GroupTable symmetric_group(int n) {
  if (n < 1 || n > 5) {
    throw PreconditionError("symmetric_group supports 1 ≤ n ≤ 5");
  }
  std::vector<int> swap01(n), cycle(n);
  std::iota(swap01.begin(), swap01.end(), 0);
  if (n >= 2) std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return permutation_group(n, {swap01, cycle}, fact).table;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const int n = a.order() * b.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto id = [&](int x, int y) { return x * b.order() + y; };
  for (int x1 = 0; x1 < a.order(); ++x1) {
    for (int y1 = 0; y1 < b.order(); ++y1) {
      for (int x2 = 0; x2 < a.order(); ++x2) {
        for (int y2 = 0; y2 < b.order(); ++y2) {
          t[id(x1, y1)][id(x2, y2)] = id(a.product(x1, x2), b.product(y1, y2));
        }
      }
    }
  }
  return GroupTable(std::move(t));
}

PermutationGroup permutation_group(int points,
                                   const std::vector<std::vector<int>>& gens,
                                   int max_order) {
  std::vector<int> id(points);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : gens) {
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw StructuralError("generator is not a permutation");
  }

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elements{id};
  index[id] = 0;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> prod(points);
      for (int x = 0; x < points; ++x) prod[x] = g[elements[head][x]];
      if (index.emplace(prod, elements.size()).second) {
        elements.push_back(prod);
        if (static_cast<int>(elements.size()) > max_order) {
          throw PreconditionError("permutation closure exceeds the order cap");
        }
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(points);
      for (int x = 0; x < points; ++x) prod[x] = elements[a][elements[b][x]];
      table[a][b] = index.at(prod);
    }
  }
  return PermutationGroup{GroupTable(std::move(table)), std::move(elements)};
}

namespace {

bool extend_isomorphism(const GroupTable& a, const GroupTable& b,
                        std::vector<int>& map, std::vector<bool>& used,
                        int next) {
  const int n = a.order();
  if (next == n) return true;
  if (map[next] >= 0) return extend_isomorphism(a, b, map, used, next + 1);
  for (int img = 0; img < n; ++img) {
    if (used[img] || a.element_order(next) != b.element_order(img)) continue;
    std::vector<int> trial = map;
    std::vector<bool> trial_used = used;
    trial[next] = img;
    trial_used[img] = true;
    bool ok = true;
    // close the partial map under products with everything already mapped
    for (int g = 0; g < n && ok; ++g) {
      if (trial[g] < 0) continue;
      for (int h = 0; h < n && ok; ++h) {
        if (trial[h] < 0) continue;
        const int prod = a.product(g, h);
        const int img_prod = b.product(trial[g], trial[h]);
        if (trial[prod] < 0) {
          if (trial_used[img_prod]) {
            ok = false;
          } else {
            trial[prod] = img_prod;
            trial_used[img_prod] = true;
          }
        } else if (trial[prod] != img_prod) {
          ok = false;
        }
      }
    }
    if (ok && extend_isomorphism(a, b, trial, trial_used, next + 1)) {
      map = trial;
      return true;
    }
  }
  return false;
}

}  // namespace

bool isomorphic(const GroupTable& a, const GroupTable& b) {
  if (a.order() != b.order()) return false;
  std::vector<int> orders_a, orders_b;
  for (int g = 0; g < a.order(); ++g) {
    orders_a.push_back(a.element_order(g));
    orders_b.push_back(b.element_order(g));
  }
  std::sort(orders_a.begin(), orders_a.end());
  std::sort(orders_b.begin(), orders_b.end());
  if (orders_a != orders_b) return false;

  std::vector<int> map(a.order(), -1);
  std::vector<bool> used(a.order(), false);
  map[a.identity()] = b.identity();
  used[b.identity()] = true;
  return extend_isomorphism(a, b, map, used, 0);
}

QuantumGroupPtr classical_quantum_group(const GroupTable& table,
                                        const Tolerances& tol) {
  const int n = table.order();
  AlgebraPtr alg = make_algebra(std::vector<int>(n, 1));
  TensorStructure sq(alg, alg);

  Mat delta = Mat::Zero(n * n, n);
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) {
      delta(sq.pair_index(h, k), table.product(h, k)) = 1.0;
    }
  }
  RVec eps = RVec::Zero(n);
  eps(table.identity()) = 1.0;
  Mat kappa = Mat::Zero(n, n);
  for (int g = 0; g < n; ++g) kappa(table.inverse(g), g) = 1.0;

  auto group = std::make_shared<const FiniteQuantumGroup>(
      alg, LinearMap(alg, sq.product(), std::move(delta)),
      Functional(alg, std::move(eps)), LinearMap(alg, alg, std::move(kappa)));
  HopfReport check = verify_hopf(*group);
  if (!check.pass(tol)) {
    throw StructuralError("function algebra of the group fails Hopf axioms");
  }
  return group;
}

DualGroupAlgebra dual_quantum_group(const GroupTable& table, std::uint64_t seed,
                                    const Tolerances& tol) {
  const int n = table.order();
  QuantumGroupPtr classical = classical_quantum_group(table, tol);
  IrrepDecomposition irreps =
      decompose_corep(unitarize(regular_corepresentation(classical), tol),
                      seed, tol);

  std::vector<int> sizes;
  int check_dim = 0;
  for (const auto& cls : irreps.classes) {
    sizes.push_back(cls.rep.degree());
    check_dim += cls.rep.degree() * cls.rep.degree();
  }
  if (check_dim != n) {
    throw InvariantViolation("irrep dimension squares do not sum to |Γ|");
  }
  AlgebraPtr alg = make_algebra(sizes);

  // λ_g block i is the evaluation of the i-th irrep's matrix at g.
  Mat lambda(n, n);
  for (int g = 0; g < n; ++g) {
    Vec coords = Vec::Zero(n);
    for (std::size_t c = 0; c < irreps.classes.size(); ++c) {
      const auto& rep = irreps.classes[c].rep;
      const int d = rep.degree();
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          coords[alg->basis_index(static_cast<int>(c), a, b)] =
              rep.at(a, b).coords()[g];
        }
      }
    }
    lambda.col(g) = coords;
  }
  Eigen::FullPivLU<Mat> lu(lambda);
  if (!lu.isInvertible()) {
    throw InvariantViolation("group unitaries do not span the dual algebra");
  }
  Mat lambda_inv = lu.inverse();

  TensorStructure sq(alg, alg);
  Mat delta = Mat::Zero(alg->dim() * alg->dim(), alg->dim());
  RVec eps = RVec::Zero(alg->dim());
  Mat kappa = Mat::Zero(alg->dim(), alg->dim());
  std::vector<Element> lambdas;
  lambdas.reserve(n);
  for (int g = 0; g < n; ++g) lambdas.push_back(Element(alg, lambda.col(g)));
  for (int p = 0; p < alg->dim(); ++p) {
    Element dcol = Element::zero(sq.product());
    for (int g = 0; g < n; ++g) {
      const Complex w = lambda_inv(g, p);
      if (w == Complex(0.0)) continue;
      dcol = dcol + sq.tensor(lambdas[g], lambdas[g]) * w;
      eps(p) += w;
      kappa.col(p) += w * lambda.col(table.inverse(g));
    }
    delta.col(p) = dcol.coords();
  }

  auto group = std::make_shared<const FiniteQuantumGroup>(
      alg, LinearMap(alg, sq.product(), std::move(delta)),
      Functional(alg, std::move(eps)), LinearMap(alg, alg, std::move(kappa)));
  HopfReport check = verify_hopf(*group);
  if (!check.pass(tol)) {
    throw InvariantViolation("group algebra fails Hopf axioms");
  }
  return DualGroupAlgebra{group, std::move(lambda)};
}

GroupTable group_from_commutative(const FiniteQuantumGroup& g,
                                  const Tolerances& tol) {
  const auto& alg = g.algebra();
  if (!alg->commutative()) {
    throw PreconditionError("the quantum group is not commutative");
  }
  const int n = alg->dim();
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        Complex c = g.coproduct().matrix()(g.square().pair_index(p, q), r);
        if (std::abs(c - Complex(1.0)) <= tol.residual) {
          table[p][q] = r;
        } else if (std::abs(c) > tol.residual) {
          throw StructuralError("coproduct is not a point map");
        }
      }
      if (table[p][q] < 0) {
        throw StructuralError("coproduct defines no product for a point pair");
      }
    }
  }
  return GroupTable(std::move(table));
}

BuiltAction classical_action(const GroupTable& table,
                             const std::vector<std::vector<int>>& action,
                             const Tolerances& tol) {
  const int g_count = table.order();
  if (static_cast<int>(action.size()) != g_count) {
    throw StructuralError("action table needs one row per group element");
  }
  const int n = static_cast<int>(action.front().size());
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& row : action) {
    std::vector<int> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) {
      throw StructuralError("action row is not a permutation of the points");
    }
  }
  if (action[table.identity()] != id) {
    throw StructuralError("identity does not act trivially");
  }
  for (int g = 0; g < g_count; ++g) {
    for (int h = 0; h < g_count; ++h) {
      for (int x = 0; x < n; ++x) {
        if (action[g][action[h][x]] != action[table.product(g, h)][x]) {
          throw StructuralError("table is not a group action");
        }
      }
    }
  }

  QuantumGroupPtr group = classical_quantum_group(table, tol);
  const auto& alg = group->algebra();
  std::vector<Element> grid(static_cast<std::size_t>(n) * n,
                            Element::zero(alg));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec coords = Vec::Zero(alg->dim());
      for (int g = 0; g < g_count; ++g) {
        if (action[g][j] == i) coords[g] = 1.0;
      }
      grid[static_cast<std::size_t>(i) * n + j] = Element(alg, coords);
    }
  }
  FiniteAction act(group, n, std::move(grid));
  if (!act.valid(tol)) {
    throw InvariantViolation("classical action grid fails verification");
  }
  return BuiltAction{group, std::move(act)};
}

FiniteAction identity_action(const QuantumGroupPtr& group, int n,
                             const Tolerances& tol) {
  if (n <= 0) throw PreconditionError("point count must be positive");
  const auto& alg = group->algebra();
  std::vector<Element> grid(static_cast<std::size_t>(n) * n,
                            Element::zero(alg));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i) * n + i] = Element::unit(alg);
  }
  FiniteAction act(group, n, std::move(grid));
  if (!act.valid(tol)) {
    throw InvariantViolation("identity action fails verification");
  }
  return act;
}

BuiltAction block_reflection_action(int k, std::uint64_t seed,
                                    const Tolerances& tol) {
  if (k < 2) throw PreconditionError("block reflection action needs k ≥ 2");
  DualGroupAlgebra dual = dual_quantum_group(dihedral_group(k), seed, tol);
  const auto& alg = dual.group->algebra();

  const Element one = Element::unit(alg);
  const Element p = (one + dual.lambda_of(k)) * Complex(0.5);      // s
  const Element q = (one + dual.lambda_of(k + 1)) * Complex(0.5);  // rs
  const Element zero = Element::zero(alg);
  std::vector<Element> grid{p,    one - p, zero, zero,     one - p, p,
                            zero, zero,    zero, zero,     q,       one - q,
                            zero, zero,    one - q, q};
  FiniteAction act(dual.group, 4, std::move(grid));
  if (!act.valid(tol)) {
    throw InvariantViolation("block reflection grid fails verification");
  }
  return BuiltAction{dual.group, std::move(act)};
}

}  // namespace cqg
