// Hermite cubic finite elements for the clamped-clamped Euler-Bernoulli
// beam: element matrices, assembly, and boundary-condition elimination.
#pragma once

#include <Eigen/Dense>

#include "beamspring/beam.hpp"

namespace beamspring {

/// Assembled mass and stiffness matrices reduced to the free DOFs.
///
/// Both matrices are symmetric positive definite (the clamped beam has no
/// rigid-body modes) and banded with half-bandwidth 3 in the node-major
/// DOF ordering.
struct SystemMatrices {
    Eigen::MatrixXd M;  ///< consistent mass matrix [kg]
    Eigen::MatrixXd K;  ///< stiffness matrix [N/m]
    DofMap dof_map;
    Mesh mesh;
    BeamProperties props;

    int n_dof() const { return dof_map.n_dof; }
};

/// 4x4 element stiffness (EI/h^3 scaled) in DOF order (u1, th1, u2, th2).
Eigen::Matrix4d element_stiffness(const BeamProperties& props, double h);

/// 4x4 consistent element mass (rho*S*h/420 scaled), same DOF order.
Eigen::Matrix4d element_mass(const BeamProperties& props, double h);

/// Assemble the clamped-clamped system with n_elements uniform elements.
/// The four clamped DOFs are eliminated, so n_elements >= 2 is required
/// (a single element leaves no free DOFs).
SystemMatrices assemble(const BeamProperties& props, int n_elements);

}  // namespace beamspring
