#include "framelab/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace framelab {

namespace {

// Non-finite values (infinite bounds outside their hypotheses) become null.
Json num(double x) {
    if (!std::isfinite(x))
        return nullptr;
    return x;
}

Json opt(const std::optional<bool>& b) {
    if (!b)
        return nullptr;
    return *b;
}

Json opt(const std::optional<double>& x) {
    if (!x)
        return nullptr;
    return num(*x);
}

Scalar scalar_from_json(const Json& e) {
    if (e.is_number())
        return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    fail(ErrorKind::InvalidInput, "matrix entry must be a number or [re, im]");
}

Index dim_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        fail(ErrorKind::InvalidInput, std::string("missing or invalid \"") + key + "\"");
    return static_cast<Index>(j[key].get<long long>());
}

} // namespace

Json matrix_to_json(const Matrix& m) {
    const bool real = (m.array().imag() == 0.0).all();
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            if (real)
                data.push_back(num(m(i, j).real()));
            else
                data.push_back(Json::array({num(m(i, j).real()), num(m(i, j).imag())}));
        }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object())
        fail(ErrorKind::InvalidInput, "matrix must be a JSON object");
    const Index rows = dim_from_json(j, "rows");
    const Index cols = dim_from_json(j, "cols");
    if (!j.contains("data") || !j["data"].is_array())
        fail(ErrorKind::InvalidInput, "matrix needs a \"data\" array");
    const Json& data = j["data"];
    if (static_cast<Index>(data.size()) != rows * cols)
        fail(ErrorKind::InvalidInput, "matrix data length does not match rows * cols");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index c = 0; c < cols; ++c)
            m(i, c) = scalar_from_json(data[static_cast<std::size_t>(i * cols + c)]);
    require_finite(m, "matrix");
    return m;
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Json to_json(const OVSequence& a) {
    Json blocks = Json::array();
    for (const Matrix& b : a.blocks())
        blocks.push_back(matrix_to_json(b));
    return Json{{"domain_dim", a.domain_dim()}, {"codomain_dim", a.codomain_dim()}, {"blocks", std::move(blocks)}};
}

OVSequence ov_sequence_from_json(const Json& j) {
    if (!j.is_object())
        fail(ErrorKind::InvalidInput, "sequence must be a JSON object");
    if (j.contains("vectors")) {
        const Json& vs = j["vectors"];
        if (!vs.is_array() || vs.empty())
            fail(ErrorKind::InvalidInput, "\"vectors\" must be a nonempty array");
        std::vector<Vector> vectors;
        for (const Json& v : vs) {
            if (!v.is_array())
                fail(ErrorKind::InvalidInput, "each vector must be an array");
            Vector x(static_cast<Index>(v.size()));
            for (std::size_t i = 0; i < v.size(); ++i)
                x(static_cast<Index>(i)) = scalar_from_json(v[i]);
            vectors.push_back(std::move(x));
        }
        return from_vectors(vectors);
    }
    const Index n = dim_from_json(j, "domain_dim");
    const Index k = dim_from_json(j, "codomain_dim");
    if (!j.contains("blocks") || !j["blocks"].is_array())
        fail(ErrorKind::InvalidInput, "sequence needs a \"blocks\" array");
    std::vector<Matrix> blocks;
    for (const Json& b : j["blocks"])
        blocks.push_back(matrix_from_json(b));
    return OVSequence(n, k, std::move(blocks));
}

Json to_json(const FusionSequence& w) {
    Json pairs = Json::array();
    for (const FusionPair& p : w.pairs())
        pairs.push_back(Json{{"basis", subspace_to_json(p.subspace)}, {"weight", num(p.weight)}});
    return Json{{"ambient_dim", w.ambient_dim()}, {"pairs", std::move(pairs)}};
}

bool is_fusion_json(const Json& j) { return j.is_object() && j.contains("pairs"); }

FusionSequence fusion_sequence_from_json(const Json& j, const ToleranceConfig& tol) {
    if (!is_fusion_json(j) || !j["pairs"].is_array())
        fail(ErrorKind::InvalidInput, "fusion sequence needs a \"pairs\" array");
    const Index n = dim_from_json(j, "ambient_dim");
    std::vector<FusionPair> pairs;
    for (const Json& p : j["pairs"]) {
        if (!p.is_object() || !p.contains("basis") || !p.contains("weight") || !p["weight"].is_number())
            fail(ErrorKind::InvalidInput, "each pair needs \"basis\" and \"weight\"");
        const Matrix basis = matrix_from_json(p["basis"]);
        if (basis.rows() != n)
            fail(ErrorKind::InvalidInput, "basis rows differ from ambient_dim");
        // Spanning sets are accepted; the subspace is their span.
        pairs.push_back({basis.cols() == 0 ? Subspace(n) : Subspace::span(basis, tol), p["weight"].get<double>()});
    }
    return FusionSequence(n, std::move(pairs));
}

Json to_json(const QWitness& q) {
    Json arr = Json::array();
    for (const Matrix& m : q.Q)
        arr.push_back(matrix_to_json(m));
    return Json{{"Q", std::move(arr)}};
}

QWitness witness_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("Q") || !j["Q"].is_array())
        fail(ErrorKind::InvalidInput, "witness needs a \"Q\" array");
    QWitness q;
    for (const Json& m : j["Q"])
        q.Q.push_back(matrix_from_json(m));
    return q;
}

Json to_json(const FrameReport& r) {
    return Json{{"bessel_bound", num(r.bessel_bound)},     {"lower_bound", num(r.lower_bound)},
                {"H_A_dim", r.frame_subspace_dim},         {"is_frame_sequence", r.is_frame_sequence},
                {"is_frame", r.is_frame},                  {"is_tight", r.is_tight},
                {"is_parseval", r.is_parseval}};
}

Json to_json(const DualCheck& r) {
    return Json{{"is_dual", r.is_dual},
                {"reconstruction_residual", num(r.reconstruction_residual)},
                {"containment_residual", num(r.containment_residual)},
                {"ranges_equal", r.ranges_equal}};
}

Json to_json(const GapReport& r) {
    return Json{{"delta_vw", num(r.delta_vw)}, {"delta_wv", num(r.delta_wv)},
                {"R_vw", num(r.R_vw)},         {"Delta", num(r.Delta)},
                {"below_one", r.below_one},    {"projector_discrepancy", num(r.projector_discrepancy)}};
}

Json to_json(const BoundedBelowReport& r) {
    return Json{{"delta_vw", num(r.delta_vw)},
                {"delta_wv", num(r.delta_wv)},
                {"Delta", num(r.Delta)},
                {"min_sv_pw_on_v", num(r.min_sv_pw_on_v)},
                {"first_part_applicable", r.first_part_applicable},
                {"second_part_applicable", r.second_part_applicable},
                {"trivial_intersection", opt(r.trivial_intersection)},
                {"deltas_equal", opt(r.deltas_equal)},
                {"isomorphisms", opt(r.isomorphisms)}};
}

Json to_json(const FFDualCheck& r) {
    return Json{{"ok", r.ok}, {"reconstruction_residual", num(r.reconstruction_residual)}, {"diagnostics", r.diagnostics}};
}

Json to_json(const TightPartition& p) {
    Json groups = Json::array();
    for (const TightGroup& g : p.groups)
        groups.push_back(Json{{"lambda", num(g.lambda)}, {"indices", g.indices}});
    return Json{{"groups", std::move(groups)}, {"degenerate", p.degenerate}};
}

Json to_json(const DesiderataReport& r) {
    return Json{{"trials", r.trials},
                {"D1", r.d1()},
                {"D2a", r.d2a()},
                {"D2b", r.d2b()},
                {"D3", r.d3()},
                {"D4", r.d4()},
                {"failures", Json{{"D1", r.d1_failures},
                                  {"D2a", r.d2a_failures},
                                  {"D2b", r.d2b_failures},
                                  {"D3", r.d3_failures},
                                  {"D4", r.d4_failures}}}};
}

Json to_json(const PerturbReport& r) {
    return Json{{"mu", num(r.mu)},
                {"alpha", num(r.alpha)},
                {"beta", num(r.beta)},
                {"delta_HAHB", num(r.delta_HAHB)},
                {"Delta_HAHB", num(r.Delta_HAHB)},
                {"delta_HB_HAperp", num(r.delta_HB_HAperp)},
                {"predicted_lower", num(r.predicted_lower)},
                {"predicted_upper", num(r.predicted_upper)},
                {"measured_bounds", Json::array({num(r.measured_lower), num(r.measured_upper)})},
                {"range_gap_bound", num(r.range_gap_bound)},
                {"measured_range_gap", num(r.measured_range_gap)},
                {"applicable", r.applicable},
                {"gap_bound", num(r.gap_bound)},
                {"range_delta", num(r.range_delta)},
                {"max_block_deviation", num(r.max_block_deviation)},
                {"A_is_frame", r.a_is_frame},
                {"B_is_frame", r.b_is_frame},
                {"holds", r.holds()},
                {"violations", r.violations}};
}

Json to_json(const DualDeviationReport& r) {
    return Json{{"mu", num(r.mu)},
                {"alpha", num(r.alpha)},
                {"Delta", num(r.Delta)},
                {"measured", num(r.measured)},
                {"bound", num(r.bound)},
                {"lambda", num(r.lambda)},
                {"is_frame_case", r.is_frame_case},
                {"applicable", r.applicable},
                {"prior_work_bound", opt(r.prior_work_bound)},
                {"holds", r.holds}};
}

Json to_json(const BestApproxReport& r) {
    return Json{{"trials", r.trials},
                {"stable_distance", num(r.stable_distance)},
                {"min_other_distance", num(r.min_other_distance)},
                {"distance_violations", r.distance_violations},
                {"pointwise_violations", r.pointwise_violations},
                {"hs_projection_residual", num(r.hs_projection_residual)},
                {"canonical_excess", num(r.canonical_excess)},
                {"injectivity_constant", num(r.injectivity_constant)},
                {"excess_identity_residual", num(r.excess_identity_residual)},
                {"canonical_strictly_farther", r.canonical_strictly_farther},
                {"holds", r.holds}};
}

Json to_json(const DualBijection& r) {
    return Json{{"dim_a", r.basis_a.size()},
                {"dim_b", r.basis_b.size()},
                {"forward", matrix_to_json(r.forward)},
                {"inverse", matrix_to_json(r.inverse)},
                {"qr_residual", num(r.qr_residual)},
                {"rq_residual", num(r.rq_residual)},
                {"holds", r.holds}};
}

Json to_json(const BoundCheck& r) {
    return Json{{"bound", num(r.bound)}, {"measured", num(r.measured)}, {"holds", r.holds}};
}

Json to_json(const RLambdaReport& r) {
    return Json{{"lambda", num(r.lambda)},
                {"c", num(r.c)},
                {"d", num(r.d)},
                {"invertible", r.invertible},
                {"projector_residual", num(r.projector_residual)},
                {"inverse_lower", num(r.inverse_lower)},
                {"inverse_upper", num(r.inverse_upper)},
                {"inverse_min", num(r.inverse_min)},
                {"inverse_max", num(r.inverse_max)},
                {"sandwich_violations", r.sandwich_violations},
                {"holds", r.holds}};
}

Json to_json(const TransformedFusionReport& r) {
    return Json{{"alpha", num(r.alpha)},
                {"beta", num(r.beta)},
                {"gamma", num(r.gamma)},
                {"predicted_lower", num(r.predicted_lower)},
                {"predicted_upper", num(r.predicted_upper)},
                {"measured_lower", num(r.measured_lower)},
                {"measured_upper", num(r.measured_upper)},
                {"holds", r.holds}};
}

Json to_json(const FusionStabilityReport& r) {
    return Json{{"mu", num(r.mu)},
                {"alpha", num(r.alpha)},
                {"beta", num(r.beta)},
                {"tau", num(r.tau)},
                {"c", num(r.c)},
                {"d", num(r.d)},
                {"C", num(r.C)},
                {"bound", r.applicable ? num(r.C * r.mu) : Json(nullptr)},
                {"measured", opt(r.measured)},
                {"max_weight_gap", num(r.max_weight_gap)},
                {"max_pair_deviation", num(r.max_pair_deviation)},
                {"weight_consequence_holds", r.weight_consequence_holds},
                {"applicable", r.applicable},
                {"holds", r.holds}};
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidInput, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
    }
}

} // namespace framelab
