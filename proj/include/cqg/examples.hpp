#pragma once

#include <cstdint>
#include <vector>

#include "cqg/action.hpp"

namespace cqg {

/// A finite group as a multiplication table; the table laws are validated
/// exactly at construction.
class GroupTable {
 public:
  explicit GroupTable(std::vector<std::vector<int>> table);

  int order() const { return order_; }
  int product(int g, int h) const { return table_[g][h]; }
  int inverse(int g) const { return inverse_[g]; }
  int identity() const { return identity_; }
  int element_order(int g) const;

 private:
  int order_;
  std::vector<std::vector<int>> table_;
  int identity_ = -1;
  std::vector<int> inverse_;
};

GroupTable trivial_group();
GroupTable cyclic_group(int n);
/// Dihedral group of order 2k: indices 0..k−1 are rotations r^i, k..2k−1 are
/// the reflections r^i s.
GroupTable dihedral_group(int k);
GroupTable symmetric_group(int n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Closure of a set of permutations of {0..points−1}, with an order cap.
struct PermutationGroup {
  GroupTable table;
  std::vector<std::vector<int>> permutations;  // element index → permutation
};
PermutationGroup permutation_group(int points,
                                   const std::vector<std::vector<int>>& gens,
                                   int max_order);

/// Brute-force group isomorphism search (intended for small orders).
bool isomorphic(const GroupTable& a, const GroupTable& b);

/// A = C(Γ): pointwise functions with Δ(e_g) = Σ_{hk=g} e_h⊗e_k.
QuantumGroupPtr classical_quantum_group(const GroupTable& table,
                                        const Tolerances& tol = {});

/// A = C*(Γ) in multi-matrix form. The block structure comes from
/// numerically decomposing the regular representation; `lambda` column g
/// holds the coordinates of the group unitary λ_g.
struct DualGroupAlgebra {
  QuantumGroupPtr group;
  Mat lambda;
  Element lambda_of(int g) const {
    return Element(group->algebra(), lambda.col(g));
  }
};
DualGroupAlgebra dual_quantum_group(const GroupTable& table,
                                    std::uint64_t seed = 1,
                                    const Tolerances& tol = {});

/// Recover the point group of a commutative quantum group from its coproduct
/// structure constants.
GroupTable group_from_commutative(const FiniteQuantumGroup& g,
                                  const Tolerances& tol = {});

struct BuiltAction {
  QuantumGroupPtr group;
  FiniteAction action;
};

/// A classical action table (rows: group elements, each a permutation of the
/// points) turned into a quantum action over C(Γ): a_ij = Σ_{g·x_j = x_i} e_g.
BuiltAction classical_action(const GroupTable& table,
                             const std::vector<std::vector<int>>& action,
                             const Tolerances& tol = {});

/// a_ij = δ_ij·1 on X_n over an arbitrary quantum group.
FiniteAction identity_action(const QuantumGroupPtr& group, int n,
                             const Tolerances& tol = {});

/// The two-block reflection action on X_4 over C*(D_k): with reflections
/// a = s and b = rs, p = (1+λ_a)/2 and q = (1+λ_b)/2 act on {1,2} and {3,4}.
BuiltAction block_reflection_action(int k, std::uint64_t seed = 1,
                                    const Tolerances& tol = {});

}  // namespace cqg
