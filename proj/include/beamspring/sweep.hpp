// Sweep-up frequency testing: integrate the forced system from rest at
// each frequency of a grid and record per-node response maxima.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beamspring/dynamics.hpp"

namespace beamspring {

struct SweepConfig {
    double f0 = 100.0;  ///< start frequency [Hz]
    double f1 = 1000.0; ///< end frequency [Hz]
    double df = 5.0;    ///< frequency step [Hz]
    double a = 50.0;    ///< excitation amplitude [m/s^2]
    double tf = 0.1;    ///< integration time per grid point [s]
    SpringConfig spring{};
    int n_elements = 2;
    double dt = 0.0;    ///< integration step; 0 = default_time_step
    int threads = 0;    ///< 0 = BEAMSPRING_THREADS env var, else hardware

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Per-frequency maxima of |displacement| and |acceleration| for every
/// interior node's displacement DOF. Row k belongs to frequencies[k];
/// column j-1 to interior node j.
struct SweepResult {
    std::vector<double> frequencies;
    Eigen::MatrixXd max_displacement;   // [m]
    Eigen::MatrixXd max_acceleration;   // [m/s^2]
    std::vector<std::uint8_t> failed;   // per-point divergence flag
    std::vector<std::string> errors;    // empty string when the point succeeded

    int n_points() const { return static_cast<int>(frequencies.size()); }
    int n_nodes() const { return static_cast<int>(max_displacement.cols()); }
    bool any_failed() const;
};

/// Run the sweep. Grid points are independent (zero initial conditions at
/// every point, no state carried over) and are processed by a small thread
/// pool; results are assembled in grid order, so the outcome does not
/// depend on the thread count. A diverging point is recorded as failed and
/// the sweep continues.
SweepResult run_sweep(const BeamProperties& props, const SweepConfig& config);

/// Grid frequency whose displacement maximum is largest for the given
/// interior node (1-based mesh node index). Ties break toward the lower
/// frequency. Failed points are skipped.
double argmax_frequency(const SweepResult& result, int node);

}  // namespace beamspring
