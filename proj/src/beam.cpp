#include "beamspring/beam.hpp"
#include "beamspring/spring.hpp"

#include <stdexcept>

namespace beamspring {

void BeamProperties::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("beam property ") + name +
                                        " must be strictly positive");
    };
    check(E, "E");
    check(I, "I");
    check(rho, "rho");
    check(S, "S");
    check(L, "L");
}

Mesh Mesh::uniform(double length, int n_elements) {
    if (n_elements < 1) throw std::invalid_argument("mesh needs at least one element");
    if (!(length > 0.0)) throw std::invalid_argument("mesh length must be positive");
    Mesh mesh;
    mesh.n_elements = n_elements;
    mesh.h = length / n_elements;
    mesh.node_x.resize(n_elements + 1);
    for (int i = 0; i <= n_elements; ++i) mesh.node_x[i] = i * mesh.h;
    mesh.node_x.back() = length;
    return mesh;
}

int DofMap::displacement_dof(int node) const {
    if (!is_free_node(node))
        throw std::invalid_argument("node " + std::to_string(node) +
                                    " carries no free DOFs");
    return 2 * (node - 1);
}

int DofMap::rotation_dof(int node) const { return displacement_dof(node) + 1; }

std::string to_string(SpringMode mode) {
    switch (mode) {
        case SpringMode::none: return "none";
        case SpringMode::bilateral: return "bilateral";
        case SpringMode::unilateral: return "unilateral";
    }
    throw std::invalid_argument("unknown spring mode");
}

SpringMode spring_mode_from_string(const std::string& s) {
    if (s == "none") return SpringMode::none;
    if (s == "bilateral") return SpringMode::bilateral;
    if (s == "unilateral") return SpringMode::unilateral;
    throw std::invalid_argument("unknown spring mode '" + s +
                                "' (expected none, bilateral or unilateral)");
}

int SpringConfig::resolve_node(int n_elements) const {
    if (node >= 0) return node;
    if (n_elements % 2 != 0)
        throw std::invalid_argument(
            "spring node defaults to the middle of the beam, which requires an "
            "even element count (got " + std::to_string(n_elements) + ")");
    return n_elements / 2;
}

void SpringConfig::validate(int n_elements) const {
    if (k_r < 0.0) throw std::invalid_argument("spring stiffness k_r must be >= 0");
    if (mode == SpringMode::none) return;
    const int at = resolve_node(n_elements);
    if (at < 1 || at > n_elements - 1)
        throw std::invalid_argument("spring node " + std::to_string(at) +
                                    " is not strictly interior (1.." +
                                    std::to_string(n_elements - 1) + ")");
}

void Excitation::validate() const {
    if (!enabled) return;
    if (a < 0.0) throw std::invalid_argument("excitation amplitude a must be >= 0");
    if (!(f > 0.0)) throw std::invalid_argument("excitation frequency f must be > 0");
}

}  // namespace beamspring
