// Material, geometry and discretization types for a clamped-clamped
// Euler-Bernoulli beam.
#pragma once

#include <stdexcept>
#include <vector>

namespace beamspring {

/// Material and geometry constants of the beam. Defaults are the
/// aluminium test beam used throughout the tool's reference setups.
struct BeamProperties {
    double E = 7.0e10;    ///< Young's modulus [N/m^2]
    double I = 1.41e-8;   ///< second moment of area [m^4]
    double rho = 2700.0;  ///< density [kg/m^3]
    double S = 7.5e-4;    ///< cross-sectional area [m^2]
    double L = 0.485;     ///< beam length [m]

    double flexural_rigidity() const { return E * I; }  // EI [N m^2]
    double mass_per_length() const { return rho * S; }  // rho*S [kg/m]

    /// Throws std::invalid_argument unless every field is strictly positive.
    void validate() const;

    friend bool operator==(const BeamProperties&, const BeamProperties&) = default;
};

/// Uniform 1D mesh over [0, L].
struct Mesh {
    int n_elements = 0;
    double h = 0.0;              ///< element length, L / n_elements [m]
    std::vector<double> node_x;  ///< node abscissae, node_x[0] = 0, node_x[n] = L

    static Mesh uniform(double length, int n_elements);

    int n_nodes() const { return n_elements + 1; }

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

/// Map from interior mesh nodes to free degrees of freedom.
///
/// Each interior node carries (u_i, du_i/dx) in that order; the two clamped
/// end nodes carry no free DOFs. Global ordering is node-major, so node j
/// (1-based interior index) owns DOFs 2(j-1) and 2(j-1)+1.
struct DofMap {
    int n_elements = 0;
    int n_dof = 0;  ///< 2 * (n_elements - 1)

    bool is_free_node(int node) const {
        return node >= 1 && node <= n_elements - 1;
    }
    int displacement_dof(int node) const;
    int rotation_dof(int node) const;

    friend bool operator==(const DofMap&, const DofMap&) = default;
};

}  // namespace beamspring
