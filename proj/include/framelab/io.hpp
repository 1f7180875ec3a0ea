#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "framelab/fusion.hpp"
#include "framelab/gap.hpp"
#include "framelab/ovframe.hpp"
#include "framelab/perturb.hpp"

namespace framelab {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "data"} row-major; entries are [re, im] or plain reals.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json subspace_to_json(const Subspace& s);

Json to_json(const OVSequence& a);
/// Accepts {"domain_dim", "codomain_dim", "blocks"} and the {"vectors": [...]} shorthand.
OVSequence ov_sequence_from_json(const Json& j);

Json to_json(const FusionSequence& w);
FusionSequence fusion_sequence_from_json(const Json& j, const ToleranceConfig& tol = {});
bool is_fusion_json(const Json& j);

Json to_json(const QWitness& q);
QWitness witness_from_json(const Json& j);

Json to_json(const FrameReport& r);
Json to_json(const DualCheck& r);
Json to_json(const GapReport& r);
Json to_json(const BoundedBelowReport& r);
Json to_json(const FFDualCheck& r);
Json to_json(const TightPartition& p);
Json to_json(const DesiderataReport& r);
Json to_json(const PerturbReport& r);
Json to_json(const DualDeviationReport& r);
Json to_json(const BestApproxReport& r);
Json to_json(const DualBijection& r);
Json to_json(const BoundCheck& r);
Json to_json(const RLambdaReport& r);
Json to_json(const TransformedFusionReport& r);
Json to_json(const FusionStabilityReport& r);

/// Reads and parses a JSON file; failures raise Error(InvalidInput).
Json load_json(const std::filesystem::path& path);

} // namespace framelab
