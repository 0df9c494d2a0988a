#include "beamspring/modal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace beamspring {

ModalResult eigenfrequencies(const SystemMatrices& sys, int k,
                             const std::optional<SpringConfig>& spring) {
    if (k < 1) throw std::invalid_argument("eigenfrequencies: k must be >= 1");

    Eigen::MatrixXd k_eff = sys.K;
    if (spring && spring->mode != SpringMode::none) {
        if (spring->mode == SpringMode::unilateral)
            throw std::invalid_argument(
                "a unilateral spring has no linear modes; use bilateral or none");
        spring->validate(sys.mesh.n_elements);
        const int dof =
            sys.dof_map.displacement_dof(spring->resolve_node(sys.mesh.n_elements));
        k_eff(dof, dof) += spring->k_r;
    }

    // Cholesky reduction of M: solve the generalized symmetric problem
    // K_eff v = lambda M v with M = L L^T.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(k_eff, sys.M);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("generalized eigensolve failed");

    const int n = sys.n_dof();
    const int count = std::min(k, n);
    ModalResult result;
    result.n_requested = k;
    result.frequencies_hz.resize(count);
    result.shapes = solver.eigenvectors().leftCols(count);
    for (int i = 0; i < count; ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (!(lambda > 0.0))
            throw std::runtime_error("nonpositive generalized eigenvalue: the "
                                     "system matrices are not both SPD");
        result.frequencies_hz[i] = std::sqrt(lambda) / (2.0 * std::numbers::pi);
    }
    return result;
}

std::vector<double> analytic_frequencies(const BeamProperties& props,
                                         const AnalyticModeConstants& constants) {
    props.validate();
    const double l4 = props.L * props.L * props.L * props.L;
    const double c = props.flexural_rigidity() / (props.mass_per_length() * l4);
    std::vector<double> out;
    out.reserve(constants.mu.size());
    for (double mu : constants.mu) {
        const double mu2 = mu * mu;
        out.push_back(mu2 * std::sqrt(c) / (2.0 * std::numbers::pi));
    }
    return out;
}

}  // namespace beamspring
