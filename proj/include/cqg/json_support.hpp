#pragma once

#include <json.hpp>

#include "cqg/action.hpp"
#include "cqg/quantum_group.hpp"

// to_json overloads for the report types, so reports aggregate into CLI and
// C API output via nlohmann's ADL lookup. Point indices are 1-based here.

namespace cqg {

void to_json(nlohmann::json& j, const HomomorphismReport& r);
void to_json(nlohmann::json& j, const HopfReport& r);
void to_json(nlohmann::json& j, const StateCheck& r);
void to_json(nlohmann::json& j, const HaarReport& r);
void to_json(nlohmann::json& j, const KacReport& r);
void to_json(nlohmann::json& j, const CorepReport& r);
void to_json(nlohmann::json& j, const FMatrixReport& r);
void to_json(nlohmann::json& j, const IrrepDecomposition& r);
void to_json(nlohmann::json& j, const EntryResidual& r);
void to_json(nlohmann::json& j, const ActionReport& r);
void to_json(nlohmann::json& j, const OrbitPartition& r);
void to_json(nlohmann::json& j, const FixedPointAlgebra& r);
void to_json(nlohmann::json& j, const InvariantStatePolytope& r);
void to_json(nlohmann::json& j, const ErgodicityReport& r);
void to_json(nlohmann::json& j, const SubsetReport& r);
void to_json(nlohmann::json& j, const InvariantSubsets& r);
void to_json(nlohmann::json& j, const SupportChain& r);
void to_json(nlohmann::json& j, const InjectivityReport& r);
void to_json(nlohmann::json& j, const FaithfulnessReport& r);
void to_json(nlohmann::json& j, const ActionSpectrum& r);

}  // namespace cqg
