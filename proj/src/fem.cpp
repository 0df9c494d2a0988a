#include "beamspring/fem.hpp"

#include <stdexcept>
#include <string>

namespace beamspring {

namespace {
void check_element_length(double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("element length h must be strictly positive");
}
}  // namespace

Eigen::Matrix4d element_stiffness(const BeamProperties& props, double h) {
    props.validate();
    check_element_length(h);
    const double c = props.flexural_rigidity() / (h * h * h);
    Eigen::Matrix4d k;
    k << 12.0,      6.0 * h,   -12.0,      6.0 * h,
         6.0 * h,   4.0 * h * h, -6.0 * h,  2.0 * h * h,
         -12.0,     -6.0 * h,   12.0,      -6.0 * h,
         6.0 * h,   2.0 * h * h, -6.0 * h,  4.0 * h * h;
    return c * k;
}

Eigen::Matrix4d element_mass(const BeamProperties& props, double h) {
    props.validate();
    check_element_length(h);
    const double c = props.mass_per_length() * h / 420.0;
    Eigen::Matrix4d m;
    m << 156.0,     22.0 * h,    54.0,      -13.0 * h,
         22.0 * h,  4.0 * h * h, 13.0 * h,  -3.0 * h * h,
         54.0,      13.0 * h,    156.0,     -22.0 * h,
         -13.0 * h, -3.0 * h * h, -22.0 * h, 4.0 * h * h;
    return c * m;
}

SystemMatrices assemble(const BeamProperties& props, int n_elements) {
    props.validate();
    if (n_elements < 2)
        throw std::invalid_argument(
            "assembly needs n_elements >= 2: a single clamped-clamped element "
            "leaves no free DOFs");

    const Mesh mesh = Mesh::uniform(props.L, n_elements);
    const Eigen::Matrix4d ke = element_stiffness(props, mesh.h);
    const Eigen::Matrix4d me = element_mass(props, mesh.h);

    // Assemble on the full 2*(n+1) DOFs, then drop the clamped leading and
    // trailing node (u and slope at each end).
    const int n_full = 2 * (n_elements + 1);
    Eigen::MatrixXd m_full = Eigen::MatrixXd::Zero(n_full, n_full);
    Eigen::MatrixXd k_full = Eigen::MatrixXd::Zero(n_full, n_full);
    for (int e = 0; e < n_elements; ++e) {
        m_full.block<4, 4>(2 * e, 2 * e) += me;
        k_full.block<4, 4>(2 * e, 2 * e) += ke;
    }

    SystemMatrices sys;
    sys.mesh = mesh;
    sys.props = props;
    sys.dof_map = DofMap{n_elements, 2 * (n_elements - 1)};
    const int n = sys.dof_map.n_dof;
    sys.M = m_full.block(2, 2, n, n);
    sys.K = k_full.block(2, 2, n, n);
    return sys;
}

}  // namespace beamspring
