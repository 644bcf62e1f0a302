#include "cqg/json_support.hpp"

namespace cqg {

namespace {

using nlohmann::json;

json one_based(const std::vector<int>& points) {
  json out = json::array();
  for (int p : points) out.push_back(p + 1);
  return out;
}

json real_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void to_json(json& j, const HomomorphismReport& r) {
  j = json{{"unit", r.unit},
           {"multiplicativity", r.multiplicativity},
           {"star", r.star}};
}

void to_json(json& j, const HopfReport& r) {
  j = json{{"coproduct_homomorphism", r.coproduct_homomorphism},
           {"coassociativity", r.coassociativity},
           {"counit_left", r.counit_left},
           {"counit_right", r.counit_right},
           {"antipode_left", r.antipode_left},
           {"antipode_right", r.antipode_right},
           {"max_residual", r.max_residual()}};
}

void to_json(json& j, const StateCheck& r) {
  j = json{{"unit_defect", r.unit_defect},
           {"hermitian_defect", r.hermitian_defect},
           {"min_gram_eigenvalue", r.min_gram_eigenvalue},
           {"is_state", r.is_state}};
}

void to_json(json& j, const HaarReport& r) {
  j = json{{"solution_dim", r.solution_dim},
           {"invariance_left", r.invariance_left},
           {"invariance_right", r.invariance_right},
           {"state", r.state}};
}

void to_json(json& j, const KacReport& r) {
  j = json{{"tracial_residual", r.tracial_residual},
           {"antipode_square_residual", r.antipode_square_residual},
           {"f_matrix_residual", r.f_matrix_residual},
           {"tracial", r.tracial},
           {"antipode_involutive", r.antipode_involutive},
           {"f_trivial", r.f_trivial},
           {"kac", r.kac()},
           {"seed", r.seed}};
}

void to_json(json& j, const CorepReport& r) {
  j = json{{"coaction", r.coaction},
           {"counit", r.counit},
           {"unitarity", r.unitarity}};
}

void to_json(json& j, const FMatrixReport& r) {
  j = json{{"quantum_dimension", r.quantum_dimension},
           {"pattern_residual", r.pattern_residual},
           {"inverse_residual", r.inverse_residual},
           {"trace_symmetry", r.trace_symmetry},
           {"deviation_from_identity",
            (r.f - Mat::Identity(r.f.rows(), r.f.cols())).cwiseAbs().maxCoeff()}};
}

void to_json(json& j, const IrrepDecomposition& r) {
  json classes = json::array();
  for (const auto& cls : r.classes) {
    classes.push_back(json{{"dimension", cls.rep.degree()},
                           {"multiplicity", cls.multiplicity},
                           {"f_matrix", cls.f}});
  }
  j = json{{"degree", r.degree},
           {"classes", std::move(classes)},
           {"seed", r.seed}};
}

void to_json(json& j, const EntryResidual& r) {
  j = json{{"i", r.i + 1}, {"j", r.j + 1}, {"value", r.value}};
}

void to_json(json& j, const ActionReport& r) {
  j = json{{"projection", r.projection},
           {"self_adjoint", r.self_adjoint},
           {"row_sum", r.row_sum},
           {"column_sum", r.column_sum},
           {"coaction", r.coaction},
           {"counit", r.counit},
           {"max_residual", r.max_residual()}};
}

void to_json(json& j, const OrbitPartition& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) blocks.push_back(one_based(b));
  j = json{{"blocks", std::move(blocks)},
           {"orbit_sizes", r.orbit_size},
           {"haar_values", real_matrix(r.haar_values)}};
}

void to_json(json& j, const FixedPointAlgebra& r) {
  json sets = json::array();
  for (const auto& s : r.level_sets) sets.push_back(one_based(s));
  j = json{{"dimension", r.dimension()},
           {"level_sets", std::move(sets)},
           {"subspace_mismatch", r.subspace_mismatch}};
}

void to_json(json& j, const InvariantStatePolytope& r) {
  j = json{{"functional_dim", r.functional_dim},
           {"affine_dim", r.affine_dim},
           {"vertices", real_matrix(r.vertices)},
           {"vertex_enumeration_checked", r.enumerated},
           {"max_invariance_residual", r.max_invariance_residual}};
}

void to_json(json& j, const ErgodicityReport& r) {
  j = json{{"fixed_points_trivial", r.fixed_points_trivial},
           {"haar_uniform", r.haar_uniform},
           {"entries_nonzero", r.entries_nonzero},
           {"invariant_state_unique_uniform", r.invariant_state_unique_uniform},
           {"ergodic", r.ergodic},
           {"haar_deviation", r.haar_deviation},
           {"min_entry_norm", r.min_entry_norm}};
}

void to_json(json& j, const SubsetReport& r) {
  j = json{{"subset", one_based(r.subset)},
           {"invariant", r.invariant},
           {"minimal", r.minimal}};
  if (r.orbit_point >= 0) {
    j["orbit_of_point"] = r.orbit_point + 1;
    j["equals_orbit"] = r.equals_orbit;
    j["equals_m_set"] = r.equals_m_set;
    j["equals_support"] = r.equals_support;
  }
}

void to_json(json& j, const InvariantSubsets& r) {
  j = json{{"count", r.subsets.size()},
           {"enumerated_all", r.enumerated_all},
           {"subsets", r.subsets}};
}

void to_json(json& j, const SupportChain& r) {
  j = json{{"support", one_based(r.support)},
           {"m_set", one_based(r.m_set)},
           {"orbit", one_based(r.orbit)},
           {"equal", r.equal},
           {"haar_faithful", r.haar_faithful}};
}

void to_json(json& j, const InjectivityReport& r) {
  j = json{{"x_alpha", one_based(r.x_alpha)},
           {"injective", r.injective},
           {"covers_all", r.covers_all}};
}

void to_json(json& j, const FaithfulnessReport& r) {
  j = json{{"faithful", r.faithful},
           {"generated_rank", r.generated_rank},
           {"algebra_dim", r.algebra_dim}};
}

void to_json(json& j, const ActionSpectrum& r) {
  j = json{{"decomposition", r.decomposition},
           {"trivial_multiplicity", r.trivial_multiplicity},
           {"conjugate_closed", r.conjugate_closed},
           {"max_f_deviation", r.max_f_deviation},
           {"kac_consequence", r.kac_consequence}};
}

}  // namespace cqg
