// Equations of motion of the beam-spring system and their fixed-step
// time integration.
//
// The semi-discrete system is
//     M qdd + K q = k_r (d(t) - q_x0)   e_x0   (bilateral)
//     M qdd + K q = k_r (d(t) - q_x0)_+ e_x0   (unilateral)
// where q_x0 is the displacement DOF of the spring node and e_x0 the
// matching canonical vector. The unilateral law is Lipschitz but not
// differentiable at contact; the integrator evaluates it pointwise with
// no event detection.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "beamspring/fem.hpp"
#include "beamspring/spring.hpp"

namespace beamspring {

/// (x + |x|) / 2
inline double positive_part(double x) { return (x + std::abs(x)) / 2.0; }

/// Scalar spring force on the displacement DOF of the spring node [N].
/// Zero for SpringMode::none.
double spring_force(const SpringConfig& spring, const Excitation& exc, double t,
                    double q_x0);

struct State {
    double t = 0.0;
    Eigen::VectorXd q;  ///< free-DOF displacements [m, rad]
    Eigen::VectorXd v;  ///< velocities [m/s, rad/s]
};

/// Uniformly sampled trajectory. Accelerations are re-evaluated from the
/// equations of motion at each stored sample, not finite-differenced.
struct TimeSeries {
    double dt = 0.0;             ///< sample spacing [s]
    std::vector<double> t;       ///< sample times
    Eigen::MatrixXd q;           ///< n_samples x n_dof displacements
    Eigen::MatrixXd v;           ///< n_samples x n_dof velocities
    Eigen::MatrixXd a;           ///< n_samples x n_dof accelerations

    int n_samples() const { return static_cast<int>(t.size()); }
    int n_dof() const { return static_cast<int>(q.cols()); }
};

/// Raised when the state stops being finite during integration.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(double t, const std::string& what)
        : std::runtime_error(what), time(t) {}
    double time;
};

/// Immutable model description: assembled matrices, spring, excitation,
/// with M^{-1} applied once through a Cholesky factorization. Safe to
/// share across threads; integration state lives outside.
class BeamModel {
  public:
    BeamModel(SystemMatrices sys, SpringConfig spring, Excitation exc);

    const SystemMatrices& system() const { return sys_; }
    const SpringConfig& spring() const { return spring_; }
    const Excitation& excitation() const { return exc_; }

    int n_dof() const { return sys_.n_dof(); }
    /// Global index of the spring node's displacement DOF (-1 without spring).
    int spring_dof() const { return spring_dof_; }

    /// Largest eigenfrequency of the stiffest phase (K + k_r e e^T, M) [Hz].
    double max_frequency_hz() const { return f_max_hz_; }

    /// qdd = M^{-1} (-K q + spring_force e_x0), allocation-free variant.
    void acceleration_into(double t, const Eigen::VectorXd& q,
                           Eigen::VectorXd& out) const;
    Eigen::VectorXd acceleration(double t, const Eigen::VectorXd& q) const;

    /// (dq/dt, dv/dt) at the given state.
    std::pair<Eigen::VectorXd, Eigen::VectorXd> rhs(const State& state) const;

    State zero_state() const;
    /// Zero state with the spring node's displacement DOF set to u0.
    State displaced_state(double u0) const;

  private:
    SystemMatrices sys_;
    SpringConfig spring_;
    Excitation exc_;
    Eigen::MatrixXd minv_K_;   // M^{-1} K
    Eigen::VectorXd minv_e_;   // M^{-1} e_x0
    int spring_dof_ = -1;
    double f_max_hz_ = 0.0;
};

/// Largest stable-looking step for the classical 4th-order scheme.
inline double stability_limit(const BeamModel& model) {
    return 0.5 / model.max_frequency_hz();
}

/// Default step: resolves the stiffest retained mode with margin.
inline double default_time_step(const BeamModel& model) {
    return std::min(1.0e-6, 0.25 / model.max_frequency_hz());
}

/// Classical explicit 4th-order (RK4) stepping core. Advances `state` in
/// n = ceil((t_end - state.t)/dt) fixed steps and calls
/// observe(state, accel) at the initial state and after every step, with
/// accel the acceleration evaluated at that sample.
///
/// Throws std::invalid_argument when dt violates the stability guard and
/// DivergenceError when the state stops being finite.
template <class Observer>
void integrate_observe(const BeamModel& model, State& state, double t_end, double dt,
                       Observer&& observe) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    const double dt_max = stability_limit(model);
    if (dt > dt_max) {
        throw std::invalid_argument(
            "integrate: dt = " + std::to_string(dt) +
            " s exceeds the stability bound 0.5/f_max = " + std::to_string(dt_max) +
            " s (f_max = " + std::to_string(model.max_frequency_hz()) + " Hz)");
    }
    const int n = model.n_dof();
    if (state.q.size() != n || state.v.size() != n)
        throw std::invalid_argument("integrate: state dimension mismatch");

    const double t0 = state.t;
    const long n_steps =
        t_end > t0 ? static_cast<long>(std::ceil((t_end - t0) / dt - 1e-9)) : 0;

    Eigen::VectorXd a(n);                      // acceleration at the current sample
    Eigen::VectorXd k2q(n), k2v(n), k3q(n), k3v(n), k4q(n), k4v(n);
    Eigen::VectorXd qs(n), vs(n);              // stage state

    model.acceleration_into(t0, state.q, a);
    observe(state, a);

    for (long i = 0; i < n_steps; ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        const double half = dt / 2.0;
        // k1 = (v, a) was evaluated at the current sample already.
        qs = state.q + half * state.v;
        vs = state.v + half * a;
        model.acceleration_into(t + half, qs, k2v);
        k2q = vs;
        qs = state.q + half * k2q;
        vs = state.v + half * k2v;
        model.acceleration_into(t + half, qs, k3v);
        k3q = vs;
        qs = state.q + dt * k3q;
        vs = state.v + dt * k3v;
        model.acceleration_into(t + dt, qs, k4v);
        k4q = vs;

        state.q += dt / 6.0 * (state.v + 2.0 * k2q + 2.0 * k3q + k4q);
        state.v += dt / 6.0 * (a + 2.0 * k2v + 2.0 * k3v + k4v);
        state.t = t0 + static_cast<double>(i + 1) * dt;

        if (!state.q.allFinite() || !state.v.allFinite())
            throw DivergenceError(state.t, "integration diverged at t = " +
                                               std::to_string(state.t) + " s");

        model.acceleration_into(state.t, state.q, a);
        observe(state, a);
    }
}

/// Integrate from `ic` to t_end on a fixed grid of step dt, keeping every
/// output_every-th sample (the initial state is always kept).
TimeSeries integrate(const BeamModel& model, const State& ic, double t_end, double dt,
                     int output_every = 1);

/// Free-vibration frequency 1/T of the piecewise-linear single-DOF
/// oscillator, T = pi/sqrt(K11/M11) + pi/sqrt((K11 + k_r)/M11): one half
/// period out of contact plus one half period in contact.
double two_phase_frequency(double m11, double k11, double k_r);

/// Total mechanical energy of an autonomous (excitation-disabled) model:
/// kinetic + bending strain + spring potential. Throws when the model has
/// excitation enabled.
double total_energy(const BeamModel& model, const State& state);

}  // namespace beamspring
