#include "beamspring/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace beamspring {

void SweepConfig::validate() const {
    if (!(f0 > 0.0)) throw std::invalid_argument("sweep: f0 must be > 0");
    if (!(f1 > f0)) throw std::invalid_argument("sweep: f1 must exceed f0");
    if (!(df > 0.0)) throw std::invalid_argument("sweep: df must be > 0");
    if (!(tf > 0.0)) throw std::invalid_argument("sweep: tf must be > 0");
    if (a < 0.0) throw std::invalid_argument("sweep: amplitude a must be >= 0");
    if (n_elements < 2)
        throw std::invalid_argument("sweep: n_elements >= 2 required (no free DOFs)");
    spring.validate(n_elements);
}

bool SweepResult::any_failed() const {
    for (auto f : failed)
        if (f) return true;
    return false;
}

namespace {

int sweep_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BEAMSPRING_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

SweepResult run_sweep(const BeamProperties& props, const SweepConfig& config) {
    config.validate();
    const SystemMatrices sys = assemble(props, config.n_elements);

    SpringConfig spring = config.spring;
    spring.node = spring.resolve_node(config.n_elements);

    const int n_points =
        static_cast<int>(std::floor((config.f1 - config.f0) / config.df + 1e-9)) + 1;
    const int n_nodes = config.n_elements - 1;

    SweepResult result;
    result.frequencies.resize(n_points);
    for (int k = 0; k < n_points; ++k)
        result.frequencies[k] = config.f0 + k * config.df;
    result.max_displacement = Eigen::MatrixXd::Zero(n_points, n_nodes);
    result.max_acceleration = Eigen::MatrixXd::Zero(n_points, n_nodes);
    result.failed.assign(n_points, 0);
    result.errors.assign(n_points, "");

    // The step size depends on the matrices and spring only, so it is the
    // same for every grid point. Validating it here keeps argument errors
    // out of the worker threads; workers only ever see divergence.
    const double dt = [&] {
        const BeamModel probe(sys, spring, Excitation::off());
        const double chosen = config.dt > 0.0 ? config.dt : default_time_step(probe);
        if (chosen > stability_limit(probe))
            throw std::invalid_argument(
                "sweep: dt = " + std::to_string(chosen) +
                " s exceeds the stability bound 0.5/f_max = " +
                std::to_string(stability_limit(probe)) + " s");
        return chosen;
    }();

    auto run_point = [&](int k) {
        const BeamModel model(sys, spring,
                              Excitation::sine(config.a, result.frequencies[k]));
        State state = model.zero_state();
        Eigen::VectorXd max_q = Eigen::VectorXd::Zero(n_nodes);
        Eigen::VectorXd max_a = Eigen::VectorXd::Zero(n_nodes);
        try {
            integrate_observe(model, state, config.tf, dt,
                              [&](const State& s, const Eigen::VectorXd& accel) {
                                  for (int j = 0; j < n_nodes; ++j) {
                                      const int dof = 2 * j;
                                      max_q(j) = std::max(max_q(j), std::abs(s.q(dof)));
                                      max_a(j) = std::max(max_a(j), std::abs(accel(dof)));
                                  }
                              });
        } catch (const DivergenceError& err) {
            result.failed[k] = 1;
            result.errors[k] = err.what();
        }
        result.max_displacement.row(k) = max_q.transpose();
        result.max_acceleration.row(k) = max_a.transpose();
    };

    const int n_threads = std::min(sweep_thread_count(config.threads), n_points);
    if (n_threads <= 1) {
        for (int k = 0; k < n_points; ++k) run_point(k);
    } else {
        // Points are independent and each writes only its own row, so any
        // scheduling produces identical results.
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (int k = next.fetch_add(1); k < n_points; k = next.fetch_add(1))
                    run_point(k);
            });
        for (auto& th : pool) th.join();
    }
    return result;
}

double argmax_frequency(const SweepResult& result, int node) {
    if (result.n_points() == 0)
        throw std::invalid_argument("argmax_frequency: empty sweep result");
    const int col = node - 1;
    if (col < 0 || col >= result.n_nodes())
        throw std::invalid_argument("argmax_frequency: node " + std::to_string(node) +
                                    " out of range");
    int best = -1;
    double best_value = -1.0;
    for (int k = 0; k < result.n_points(); ++k) {
        if (result.failed[k]) continue;
        const double value = result.max_displacement(k, col);
        if (value > best_value) {
            best_value = value;
            best = k;
        }
    }
    if (best < 0)
        throw std::invalid_argument("argmax_frequency: every sweep point failed");
    return result.frequencies[best];
}

}  // namespace beamspring
