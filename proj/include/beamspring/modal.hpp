// Eigenfrequencies of the linear beam system and the closed-form
// clamped-clamped frequency formula used as an independent check.
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "beamspring/fem.hpp"
#include "beamspring/spring.hpp"

namespace beamspring {

/// Clamped-clamped frequency constants mu_i of the analytic formula.
struct AnalyticModeConstants {
    std::vector<double> mu{4.73, 7.853, 10.996};
};

struct ModalResult {
    std::vector<double> frequencies_hz;  ///< ascending, strictly positive
    Eigen::MatrixXd shapes;              ///< M-orthonormal mode shapes, one column per frequency
    int n_requested = 0;
};

/// Smallest k eigenfrequencies of K_eff v = lambda M v, where K_eff is K
/// plus the rank-one bilateral spring term when a spring is given.
///
/// Solved by Cholesky reduction of M (Eigen's generalized self-adjoint
/// solver). A unilateral spring has no linear modes and is rejected.
ModalResult eigenfrequencies(const SystemMatrices& sys, int k,
                             const std::optional<SpringConfig>& spring = std::nullopt);

/// f_i = (1/2pi) sqrt(mu_i^4 EI / (rho S L^4)) for each mode constant.
std::vector<double> analytic_frequencies(const BeamProperties& props,
                                         const AnalyticModeConstants& constants = {});

}  // namespace beamspring
