#include "beamspring/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "beamspring/modal.hpp"

namespace beamspring {

double spring_force(const SpringConfig& spring, const Excitation& exc, double t,
                    double q_x0) {
    const double gap = exc.displacement(t) - q_x0;
    switch (spring.mode) {
        case SpringMode::none: return 0.0;
        case SpringMode::bilateral: return spring.k_r * gap;
        case SpringMode::unilateral: return spring.k_r * positive_part(gap);
    }
    throw std::invalid_argument("unknown spring mode");
}

BeamModel::BeamModel(SystemMatrices sys, SpringConfig spring, Excitation exc)
    : sys_(std::move(sys)), spring_(spring), exc_(exc) {
    exc_.validate();
    const int n_elements = sys_.mesh.n_elements;
    if (spring_.mode != SpringMode::none) {
        spring_.validate(n_elements);
        spring_.node = spring_.resolve_node(n_elements);
        spring_dof_ = sys_.dof_map.displacement_dof(spring_.node);
    }

    Eigen::LLT<Eigen::MatrixXd> llt(sys_.M);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("mass matrix is not positive definite");
    minv_K_ = llt.solve(sys_.K);
    if (spring_dof_ >= 0) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(sys_.n_dof());
        e(spring_dof_) = 1.0;
        minv_e_ = llt.solve(e);
    }

    // Stiffest phase for the step-size guard: with the spring engaged.
    std::optional<SpringConfig> stiffest;
    if (spring_.mode != SpringMode::none && spring_.k_r > 0.0) {
        SpringConfig bilateral = spring_;
        bilateral.mode = SpringMode::bilateral;
        stiffest = bilateral;
    }
    const ModalResult modes = eigenfrequencies(sys_, sys_.n_dof(), stiffest);
    f_max_hz_ = modes.frequencies_hz.back();
}

void BeamModel::acceleration_into(double t, const Eigen::VectorXd& q,
                                  Eigen::VectorXd& out) const {
    out.noalias() = -(minv_K_ * q);
    if (spring_dof_ >= 0) {
        const double s = spring_force(spring_, exc_, t, q(spring_dof_));
        if (s != 0.0) out.noalias() += s * minv_e_;
    }
}

Eigen::VectorXd BeamModel::acceleration(double t, const Eigen::VectorXd& q) const {
    Eigen::VectorXd out(n_dof());
    acceleration_into(t, q, out);
    return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> BeamModel::rhs(const State& state) const {
    return {state.v, acceleration(state.t, state.q)};
}

State BeamModel::zero_state() const {
    State s;
    s.q = Eigen::VectorXd::Zero(n_dof());
    s.v = Eigen::VectorXd::Zero(n_dof());
    return s;
}

State BeamModel::displaced_state(double u0) const {
    if (spring_dof_ < 0)
        throw std::invalid_argument("displaced_state needs a spring node");
    State s = zero_state();
    s.q(spring_dof_) = u0;
    return s;
}

TimeSeries integrate(const BeamModel& model, const State& ic, double t_end, double dt,
                     int output_every) {
    if (output_every < 1)
        throw std::invalid_argument("integrate: output_every must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");

    const long n_steps =
        t_end > ic.t ? static_cast<long>(std::ceil((t_end - ic.t) / dt - 1e-9)) : 0;
    const long n_samples = n_steps / output_every + 1;
    const int n = model.n_dof();

    TimeSeries series;
    series.dt = dt * output_every;
    series.t.reserve(n_samples);
    series.q.resize(n_samples, n);
    series.v.resize(n_samples, n);
    series.a.resize(n_samples, n);

    State state = ic;
    long step = 0;
    integrate_observe(model, state, t_end, dt,
                      [&](const State& s, const Eigen::VectorXd& accel) {
                          if (step % output_every == 0) {
                              const long row = step / output_every;
                              if (row < n_samples) {
                                  series.t.push_back(s.t);
                                  series.q.row(row) = s.q.transpose();
                                  series.v.row(row) = s.v.transpose();
                                  series.a.row(row) = accel.transpose();
                              }
                          }
                          ++step;
                      });
    const long stored = static_cast<long>(series.t.size());
    series.q.conservativeResize(stored, n);
    series.v.conservativeResize(stored, n);
    series.a.conservativeResize(stored, n);
    return series;
}

double two_phase_frequency(double m11, double k11, double k_r) {
    if (!(m11 > 0.0)) throw std::invalid_argument("two_phase_frequency: M11 must be > 0");
    if (!(k11 > 0.0)) throw std::invalid_argument("two_phase_frequency: K11 must be > 0");
    if (k_r < 0.0) throw std::invalid_argument("two_phase_frequency: k_r must be >= 0");
    const double pi = std::numbers::pi;
    const double period =
        pi / std::sqrt(k11 / m11) + pi / std::sqrt((k11 + k_r) / m11);
    return 1.0 / period;
}

double total_energy(const BeamModel& model, const State& state) {
    if (model.excitation().enabled)
        throw std::invalid_argument(
            "total_energy applies to autonomous runs only (excitation enabled)");
    const SystemMatrices& sys = model.system();
    double e = 0.5 * state.v.dot(sys.M * state.v) + 0.5 * state.q.dot(sys.K * state.q);
    const SpringConfig& spring = model.spring();
    if (spring.mode != SpringMode::none) {
        const double compression = -state.q(model.spring_dof());
        if (spring.mode == SpringMode::bilateral)
            e += 0.5 * spring.k_r * compression * compression;
        else
            e += 0.5 * spring.k_r * positive_part(compression) * positive_part(compression);
    }
    return e;
}

}  // namespace beamspring
