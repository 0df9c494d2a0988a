// Experiment configuration: a sectioned key=value text format that
// round-trips losslessly and whose defaults reproduce the reference
// setups with no user input beyond the run kind.
#pragma once

#include <stdexcept>
#include <string>

#include "beamspring/beam.hpp"
#include "beamspring/spring.hpp"
#include "beamspring/sweep.hpp"

namespace beamspring {

enum class RunKind { modal, simulate, fft, sweep };

std::string to_string(RunKind kind);
RunKind run_kind_from_string(const std::string& s);

class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, std::string key, const std::string& what)
        : std::runtime_error(what), line(line), key(std::move(key)) {}
    int line;         ///< 1-based line of the offending key, 0 if not tied to one
    std::string key;
};

struct ExperimentConfig {
    BeamProperties beam{};
    int n_elements = 2;
    SpringConfig spring{};
    Excitation excitation{};
    RunKind kind = RunKind::simulate;

    // simulate
    double t_end = 0.1;
    double dt = 0.0;             ///< 0 = default_time_step
    int output_every = 1;
    double ic_displacement = 0.4;  ///< initial value of the spring node's u DOF

    // modal
    int n_modes = 3;

    // fft
    std::string fft_input;       ///< trajectory CSV; empty = <out>/timeseries.csv
    int fft_dof = -1;            ///< -1 = spring node displacement DOF
    double peak_threshold = 0.05;

    // sweep grid (spring, n_elements and dt above complete the SweepConfig)
    SweepConfig sweep{};

    std::string out_dir = ".";

    /// Sweep configuration with the shared fields filled in.
    SweepConfig resolved_sweep() const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse the sectioned key=value format. Sections: [beam], [spring],
/// [excitation], [sweep], [run]. Unknown sections or keys, unreadable
/// values and violated invariants are rejected with key and line number.
/// '#' starts a comment.
ExperimentConfig parse_config(const std::string& text);

/// Render a config so that parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& config);

}  // namespace beamspring
