// Spring attachment and base-excitation descriptions shared by the
// modal, dynamics and sweep modules.
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "beamspring/beam.hpp"

namespace beamspring {

enum class SpringMode { none, bilateral, unilateral };

std::string to_string(SpringMode mode);
SpringMode spring_mode_from_string(const std::string& s);

/// A point spring between the moving base and one interior beam node.
/// A bilateral spring acts in both directions; a unilateral one only in
/// compression, through the positive-part law.
struct SpringConfig {
    double k_r = 1.0e6;                         ///< spring stiffness [N/m]
    int node = -1;                              ///< attachment node; -1 = middle node
    SpringMode mode = SpringMode::unilateral;

    /// Attachment node with the "-1 = middle" convention resolved.
    /// Requires an even element count when defaulted to the middle.
    int resolve_node(int n_elements) const;

    /// Throws std::invalid_argument unless k_r >= 0 and the resolved node
    /// is strictly interior for the given mesh.
    void validate(int n_elements) const;

    double attachment_x(const Mesh& mesh) const {
        return resolve_node(mesh.n_elements) * mesh.h;
    }

    friend bool operator==(const SpringConfig&, const SpringConfig&) = default;
};

/// Sinusoidal base (shaker) motion, prescribed as an imposed acceleration
/// of amplitude a at frequency f:
///   d(t) = -a / (2 pi f)^2 * sin(2 pi f t),   ddot d(t) = a sin(2 pi f t).
struct Excitation {
    double a = 50.0;       ///< acceleration amplitude [m/s^2]
    double f = 500.0;      ///< excitation frequency [Hz]
    bool enabled = false;

    static Excitation off() { return Excitation{0.0, 0.0, false}; }
    static Excitation sine(double a, double f) { return Excitation{a, f, true}; }

    /// Throws std::invalid_argument if enabled with a < 0 or f <= 0.
    void validate() const;

    double displacement(double t) const {
        if (!enabled) return 0.0;
        const double w = 2.0 * std::numbers::pi * f;
        return -a / (w * w) * std::sin(w * t);
    }
    double acceleration(double t) const {
        if (!enabled) return 0.0;
        return a * std::sin(2.0 * std::numbers::pi * f * t);
    }

    friend bool operator==(const Excitation&, const Excitation&) = default;
};

}  // namespace beamspring
