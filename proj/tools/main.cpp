// Command-line front end: modal tables, time simulations, FFT analysis
// and sweep-up tests over a shared config format.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "beamspring/config.hpp"
#include "beamspring/csv.hpp"
#include "beamspring/dynamics.hpp"
#include "beamspring/modal.hpp"
#include "beamspring/spectrum.hpp"
#include "beamspring/sweep.hpp"

namespace {

using namespace beamspring;

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_divergence = 3,
    exit_partial_sweep = 4,
    exit_io = 5,
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
    return dir;
}

/// Resolved config written next to every run's outputs; re-running from it
/// reproduces the outputs bit-identically.
void write_provenance(const ExperimentConfig& config,
                      const std::filesystem::path& dir) {
    write_file((dir / "config.resolved.ini").string(), format_config(config));
}

/// Node whose displacement DOF drives initial conditions, phase-plane
/// output and default FFT analysis: the spring node, or the middle node
/// when no spring is attached.
int reference_node(const ExperimentConfig& config) {
    return config.spring.resolve_node(config.n_elements);
}

void dump_matrix_csv(const Eigen::MatrixXd& m, const std::string& prefix,
                     const std::string& path) {
    Table table;
    for (int j = 0; j < m.cols(); ++j)
        table.header.push_back(prefix + std::to_string(j));
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<double> row(m.cols());
        for (int j = 0; j < m.cols(); ++j) row[j] = m(i, j);
        table.rows.push_back(std::move(row));
    }
    write_csv(table, path);
}

int run_modal(const ExperimentConfig& config, bool dump_matrices) {
    const SystemMatrices sys = assemble(config.beam, config.n_elements);
    std::optional<SpringConfig> spring;
    if (config.spring.mode == SpringMode::bilateral && config.spring.k_r > 0.0)
        spring = config.spring;
    else if (config.spring.mode == SpringMode::unilateral)
        std::cout << "# unilateral spring has no linear modes; "
                     "showing bare-beam frequencies\n";

    const ModalResult modes = eigenfrequencies(sys, config.n_modes, spring);
    const std::vector<double> analytic = analytic_frequencies(config.beam);

    Table table;
    table.header = {"mode", "discrete_hz", "analytic_hz", "rel_error"};
    std::printf("%5s %14s %14s %12s\n", "mode", "discrete [Hz]", "analytic [Hz]",
                "rel. error");
    for (std::size_t i = 0; i < modes.frequencies_hz.size(); ++i) {
        const double discrete = modes.frequencies_hz[i];
        const bool comparable = !spring && i < analytic.size();
        const double reference = comparable ? analytic[i] : std::nan("");
        const double rel =
            comparable ? std::abs(discrete - reference) / reference : std::nan("");
        if (comparable)
            std::printf("%5zu %14.5f %14.5f %12.3e\n", i + 1, discrete, reference, rel);
        else
            std::printf("%5zu %14.5f %14s %12s\n", i + 1, discrete, "-", "-");
        table.rows.push_back({static_cast<double>(i + 1), discrete, reference, rel});
    }

    const auto dir = prepare_out_dir(config);
    write_csv(table, (dir / "modal.csv").string());
    if (dump_matrices) {
        dump_matrix_csv(sys.M, "m", (dir / "mass_matrix.csv").string());
        dump_matrix_csv(sys.K, "k", (dir / "stiffness_matrix.csv").string());
    }
    write_provenance(config, dir);
    return exit_ok;
}

BeamModel build_model(const ExperimentConfig& config) {
    return BeamModel(assemble(config.beam, config.n_elements), config.spring,
                     config.excitation);
}

State initial_state(const ExperimentConfig& config, const BeamModel& model) {
    State state = model.zero_state();
    if (config.ic_displacement != 0.0) {
        const int node = reference_node(config);
        state.q(model.system().dof_map.displacement_dof(node)) =
            config.ic_displacement;
    }
    return state;
}

int run_simulate(const ExperimentConfig& config) {
    const BeamModel model = build_model(config);
    const double dt = config.dt > 0.0 ? config.dt : default_time_step(model);
    const TimeSeries series = integrate(model, initial_state(config, model),
                                        config.t_end, dt, config.output_every);

    const auto dir = prepare_out_dir(config);
    write_timeseries_csv(series, (dir / "timeseries.csv").string());

    const int node = reference_node(config);
    const int dof = model.system().dof_map.displacement_dof(node);
    Table phase;
    phase.header = {"u_node" + std::to_string(node), "v_node" + std::to_string(node)};
    phase.rows.reserve(series.n_samples());
    for (int i = 0; i < series.n_samples(); ++i)
        phase.rows.push_back({series.q(i, dof), series.v(i, dof)});
    write_csv(phase, (dir / "phase.csv").string());
    write_provenance(config, dir);

    std::cout << "integrated " << series.n_samples() << " samples up to t = "
              << format_double(series.t.back()) << " s (dt = " << format_double(dt)
              << " s)\nwrote " << (dir / "timeseries.csv").string() << " and "
              << (dir / "phase.csv").string() << '\n';
    return exit_ok;
}

int run_fft(const ExperimentConfig& config) {
    const auto dir = prepare_out_dir(config);
    const std::string input = config.fft_input.empty()
                                  ? (dir / "timeseries.csv").string()
                                  : config.fft_input;
    const TimeSeries series = read_timeseries_csv(input);

    int dof = config.fft_dof;
    if (dof < 0) {
        const int node = reference_node(config);
        dof = 2 * (node - 1);
    }
    if (dof >= series.n_dof())
        throw ConfigError(0, "run.fft_dof",
                          "fft_dof " + std::to_string(dof) + " out of range for a " +
                              std::to_string(series.n_dof()) + "-DOF trajectory");

    const Spectrum spec = fft_amplitude(series, dof);
    const auto peaks = find_peaks(spec, config.peak_threshold);

    Table spectrum_table;
    spectrum_table.header = {"frequency_hz", "amplitude"};
    spectrum_table.rows.reserve(spec.n_bins());
    for (int k = 0; k < spec.n_bins(); ++k)
        spectrum_table.rows.push_back({spec.frequency(k), spec.amplitude[k]});
    write_csv(spectrum_table, (dir / "spectrum.csv").string());

    Table peak_table;
    peak_table.header = {"frequency_hz", "amplitude"};
    for (const Peak& p : peaks) peak_table.rows.push_back({p.frequency_hz, p.amplitude});
    write_csv(peak_table, (dir / "peaks.csv").string());
    write_provenance(config, dir);

    std::cout << "spectrum of DOF " << dof << ": " << spec.n_bins() << " bins of "
              << format_double(spec.df_bin) << " Hz\n";
    const std::size_t shown = std::min<std::size_t>(peaks.size(), 8);
    for (std::size_t i = 0; i < shown; ++i)
        std::printf("  peak %2zu: %10.3f Hz  amplitude %.6e\n", i + 1,
                    peaks[i].frequency_hz, peaks[i].amplitude);
    if (peaks.size() > shown)
        std::cout << "  (" << peaks.size() - shown << " more in peaks.csv)\n";
    return exit_ok;
}

int run_sweep_kind(const ExperimentConfig& config) {
    const SweepResult result = run_sweep(config.beam, config.resolved_sweep());

    Table table;
    table.header = {"frequency_hz"};
    for (int j = 1; j <= result.n_nodes(); ++j)
        table.header.push_back("max_disp_node" + std::to_string(j));
    for (int j = 1; j <= result.n_nodes(); ++j)
        table.header.push_back("max_acc_node" + std::to_string(j));
    for (int k = 0; k < result.n_points(); ++k) {
        std::vector<double> row;
        row.reserve(1 + 2 * result.n_nodes());
        row.push_back(result.frequencies[k]);
        for (int j = 0; j < result.n_nodes(); ++j)
            row.push_back(result.max_displacement(k, j));
        for (int j = 0; j < result.n_nodes(); ++j)
            row.push_back(result.max_acceleration(k, j));
        table.rows.push_back(std::move(row));
    }
    const auto dir = prepare_out_dir(config);
    write_csv(table, (dir / "sweep.csv").string());
    write_provenance(config, dir);

    const int node = config.spring.mode != SpringMode::none
                         ? config.spring.resolve_node(config.n_elements)
                         : 1;
    std::cout << result.n_points() << " grid points";
    try {
        std::cout << ", displacement argmax at node " << node << ": "
                  << format_double(argmax_frequency(result, node)) << " Hz";
    } catch (const std::invalid_argument&) {
        // every point failed; reported below
    }
    std::cout << "\nwrote " << (dir / "sweep.csv").string() << '\n';

    if (result.any_failed()) {
        for (int k = 0; k < result.n_points(); ++k)
            if (result.failed[k])
                std::cerr << "point " << format_double(result.frequencies[k])
                          << " Hz failed: " << result.errors[k] << '\n';
        return exit_partial_sweep;
    }
    return exit_ok;
}

struct Overrides {
    std::optional<std::string> config_path, out_dir, mode, fft_input;
    std::optional<int> n_elements, node, output_every, n_modes, fft_dof;
    std::optional<double> k_r, a, f, t_end, dt, ic, f0, f1, df, tf, sweep_a,
        threshold;
    std::optional<bool> excite;
};

void apply_overrides(ExperimentConfig& config, const Overrides& o) {
    if (o.out_dir) config.out_dir = *o.out_dir;
    if (o.n_elements) config.n_elements = *o.n_elements;
    if (o.node) config.spring.node = *o.node;
    if (o.mode) config.spring.mode = spring_mode_from_string(*o.mode);
    if (o.k_r) config.spring.k_r = *o.k_r;
    if (o.a) config.excitation.a = *o.a;
    if (o.f) config.excitation.f = *o.f;
    if (o.excite) config.excitation.enabled = *o.excite;
    if (o.t_end) config.t_end = *o.t_end;
    if (o.dt) config.dt = *o.dt;
    if (o.output_every) config.output_every = *o.output_every;
    if (o.ic) config.ic_displacement = *o.ic;
    if (o.n_modes) config.n_modes = *o.n_modes;
    if (o.fft_input) config.fft_input = *o.fft_input;
    if (o.fft_dof) config.fft_dof = *o.fft_dof;
    if (o.threshold) config.peak_threshold = *o.threshold;
    if (o.f0) config.sweep.f0 = *o.f0;
    if (o.f1) config.sweep.f1 = *o.f1;
    if (o.df) config.sweep.df = *o.df;
    if (o.sweep_a) config.sweep.a = *o.sweep_a;
    if (o.tf) config.sweep.tf = *o.tf;
    config.sweep.spring = config.spring;
    config.sweep.n_elements = config.n_elements;
    config.sweep.dt = config.dt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clamped-clamped beam with a bilateral or unilateral spring under "
                 "base excitation"};
    app.require_subcommand(1);

    Overrides o;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config_path, "config file (key = value sections)");
        cmd->add_option("--out", o.out_dir, "output directory (default '.')");
        cmd->add_option("--n-elements", o.n_elements, "number of finite elements");
        cmd->add_option("--kr", o.k_r, "spring stiffness [N/m]");
        cmd->add_option("--node", o.node, "spring attachment node (-1 = middle)");
        cmd->add_option("--mode", o.mode, "spring mode: none|bilateral|unilateral");
    };

    CLI::App* modal_cmd = app.add_subcommand("modal", "eigenfrequency table");
    add_common(modal_cmd);
    modal_cmd->add_option("--modes", o.n_modes, "number of modes to report");
    bool dump_matrices = false;
    modal_cmd->add_flag("--dump-matrices", dump_matrices,
                        "also write the assembled M and K as CSV");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "time integration run");
    add_common(sim_cmd);
    sim_cmd->add_option("--a", o.a, "excitation amplitude [m/s^2]");
    sim_cmd->add_option("--f", o.f, "excitation frequency [Hz]");
    sim_cmd->add_flag("--excite,!--no-excite", o.excite, "enable base excitation");
    sim_cmd->add_option("--t-end", o.t_end, "integration time [s]");
    sim_cmd->add_option("--dt", o.dt, "time step [s] (0 = automatic)");
    sim_cmd->add_option("--output-every", o.output_every, "output subsampling");
    sim_cmd->add_option("--ic-displacement", o.ic,
                        "initial displacement of the spring node [m]");

    CLI::App* fft_cmd = app.add_subcommand("fft", "amplitude spectrum of a trajectory");
    add_common(fft_cmd);
    fft_cmd->add_option("--input", o.fft_input, "trajectory CSV to analyse");
    fft_cmd->add_option("--dof", o.fft_dof, "DOF column (default: spring node u)");
    fft_cmd->add_option("--threshold", o.threshold, "peak threshold (fraction of max)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep-up frequency test");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--f0", o.f0, "start frequency [Hz]");
    sweep_cmd->add_option("--f1", o.f1, "end frequency [Hz]");
    sweep_cmd->add_option("--df", o.df, "frequency step [Hz]");
    sweep_cmd->add_option("--amplitude", o.sweep_a, "excitation amplitude [m/s^2]");
    sweep_cmd->add_option("--tf", o.tf, "integration time per grid point [s]");
    sweep_cmd->add_option("--dt", o.dt, "time step [s] (0 = automatic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? exit_ok : exit_config;
    }

    try {
        ExperimentConfig config;
        if (o.config_path) config = parse_config(read_file(*o.config_path));
        if (modal_cmd->parsed()) config.kind = RunKind::modal;
        if (sim_cmd->parsed()) config.kind = RunKind::simulate;
        if (fft_cmd->parsed()) config.kind = RunKind::fft;
        if (sweep_cmd->parsed()) config.kind = RunKind::sweep;
        apply_overrides(config, o);
        config.validate();

        switch (config.kind) {
            case RunKind::modal: return run_modal(config, dump_matrices);
            case RunKind::simulate: return run_simulate(config);
            case RunKind::fft: return run_fft(config);
            case RunKind::sweep: return run_sweep_kind(config);
        }
        return exit_config;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return exit_config;
    } catch (const DivergenceError& err) {
        std::cerr << "numerical divergence: " << err.what() << '\n';
        return exit_divergence;
    } catch (const IoError& err) {
        std::cerr << "io error: " << err.what() << '\n';
        return exit_io;
    } catch (const CsvError& err) {
        std::cerr << "csv error: " << err.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return exit_config;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
