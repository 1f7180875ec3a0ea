#pragma once

#include <string>
#include <utility>
#include <vector>

#include "framelab/fusion.hpp"
#include "framelab/ovframe.hpp"

namespace framelab {

struct Check {
    std::string name;
    double error = 0.0; ///< measured deviation from the expected value or bound
    double tolerance = 0.0;
    bool ok = false;
};

struct Reproduction {
    std::string name;
    std::vector<Check> checks;

    bool ok() const;
    void add(std::string name, double error, double tolerance);
};

/// Closed forms of the three-vector example in R^2 and its perturbation of the first vector.
Matrix mercedes_analysis();
Matrix mercedes_perturbed_analysis(double eps);
double mercedes_mu(double eps);
/// Analysis operator of the stable dual of the perturbed frame for L with equal rows (a, b).
Matrix mercedes_stable_dual(double eps, double a, double b);
/// (a, b) whose stable dual is the canonical dual of the perturbed frame.
std::pair<double, double> mercedes_canonical_ab(double eps);

struct MercedesInput {
    OVSequence a;
    std::vector<std::pair<double, OVSequence>> perturbed; ///< (eps, B)
    DualParam l;
};

Reproduction reproduce_mercedes(const MercedesInput& in, double tolerance = 1e-9, const ToleranceConfig& tol = {});

/// W orthonormal lines, V two copies of the whole plane.
Reproduction reproduce_gavruta(const FusionSequence& w, const FusionSequence& v, double tolerance = 1e-12,
                               const ToleranceConfig& tol = {});

struct DecompositionInput {
    FusionSequence lines;    ///< orthonormal lines, one group with lambda 1
    FusionSequence skewed;   ///< span{e1}, span{e1 + e2}: no decomposition
    FusionSequence stacked;  ///< two orthogonal Parseval pieces weighted 1 and 2
};

Reproduction reproduce_decomposition(const DecompositionInput& in, double tolerance = 1e-9,
                                     const ToleranceConfig& tol = {});

} // namespace framelab
