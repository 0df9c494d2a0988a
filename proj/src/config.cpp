#include "beamspring/config.hpp"

#include <charconv>
#include <sstream>
#include <unordered_map>

#include "beamspring/csv.hpp"

namespace beamspring {

std::string to_string(RunKind kind) {
    switch (kind) {
        case RunKind::modal: return "modal";
        case RunKind::simulate: return "simulate";
        case RunKind::fft: return "fft";
        case RunKind::sweep: return "sweep";
    }
    throw std::invalid_argument("unknown run kind");
}

RunKind run_kind_from_string(const std::string& s) {
    if (s == "modal") return RunKind::modal;
    if (s == "simulate") return RunKind::simulate;
    if (s == "fft") return RunKind::fft;
    if (s == "sweep") return RunKind::sweep;
    throw std::invalid_argument("unknown run kind '" + s +
                                "' (expected modal, simulate, fft or sweep)");
}

SweepConfig ExperimentConfig::resolved_sweep() const {
    SweepConfig cfg = sweep;
    cfg.spring = spring;
    cfg.n_elements = n_elements;
    cfg.dt = dt;
    return cfg;
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const char* key, const std::string& what) {
        if (!ok) throw ConfigError(0, key, what);
    };
    require(beam.E > 0, "beam.E", "beam.E must be strictly positive");
    require(beam.I > 0, "beam.I", "beam.I must be strictly positive");
    require(beam.rho > 0, "beam.rho", "beam.rho must be strictly positive");
    require(beam.S > 0, "beam.S", "beam.S must be strictly positive");
    require(beam.L > 0, "beam.L", "beam.L must be strictly positive");
    require(n_elements >= 2, "run.n_elements",
            "n_elements must be >= 2: a single clamped-clamped element leaves no "
            "free DOFs");
    require(spring.k_r >= 0, "spring.k_r", "spring.k_r must be >= 0");
    if (spring.mode != SpringMode::none) {
        try {
            spring.validate(n_elements);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(0, "spring.node", err.what());
        }
    }
    if (excitation.enabled) {
        require(excitation.a >= 0, "excitation.a", "excitation.a must be >= 0");
        require(excitation.f > 0, "excitation.f", "excitation.f must be > 0");
    }
    require(t_end > 0, "run.t_end", "t_end must be > 0");
    require(dt >= 0, "run.dt", "dt must be >= 0 (0 selects the default step)");
    require(output_every >= 1, "run.output_every", "output_every must be >= 1");
    require(n_modes >= 1, "run.n_modes", "n_modes must be >= 1");
    require(peak_threshold > 0 && peak_threshold <= 1, "run.peak_threshold",
            "peak_threshold must lie in (0, 1]");
    require(sweep.f0 > 0, "sweep.f0", "sweep.f0 must be > 0");
    require(sweep.f1 > sweep.f0, "sweep.f1", "sweep.f1 must exceed sweep.f0");
    require(sweep.df > 0, "sweep.df", "sweep.df must be > 0");
    require(sweep.tf > 0, "sweep.tf", "sweep.tf must be > 0");
    require(sweep.a >= 0, "sweep.a", "sweep.a must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_double_value(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(line, key, "line " + std::to_string(line) + ": key '" + key +
                                         "': cannot parse number '" + value + "'");
    return out;
}

int parse_int_value(const std::string& key, const std::string& value, int line) {
    int out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(line, key, "line " + std::to_string(line) + ": key '" + key +
                                         "': cannot parse integer '" + value + "'");
    return out;
}

bool parse_bool_value(const std::string& key, const std::string& value, int line) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError(line, key, "line " + std::to_string(line) + ": key '" + key +
                                     "': cannot parse boolean '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::unordered_map<std::string, int> assigned_line;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto comment = raw.find('#');
        if (comment != std::string::npos) raw.erase(comment);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line_no, "", "line " + std::to_string(line_no) +
                                                   ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "beam" && section != "spring" && section != "excitation" &&
                section != "sweep" && section != "run")
                throw ConfigError(line_no, section,
                                  "line " + std::to_string(line_no) +
                                      ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "", "line " + std::to_string(line_no) +
                                               ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(line_no, key, "line " + std::to_string(line_no) +
                                                ": key '" + key +
                                                "' appears before any section");
        const std::string qualified = section + "." + key;
        assigned_line[qualified] = line_no;

        auto num = [&] { return parse_double_value(qualified, value, line_no); };
        auto integer = [&] { return parse_int_value(qualified, value, line_no); };
        auto boolean = [&] { return parse_bool_value(qualified, value, line_no); };

        bool known = true;
        if (section == "beam") {
            if (key == "E") config.beam.E = num();
            else if (key == "I") config.beam.I = num();
            else if (key == "rho") config.beam.rho = num();
            else if (key == "S") config.beam.S = num();
            else if (key == "L") config.beam.L = num();
            else known = false;
        } else if (section == "spring") {
            if (key == "k_r") config.spring.k_r = num();
            else if (key == "node") config.spring.node = integer();
            else if (key == "mode") {
                try {
                    config.spring.mode = spring_mode_from_string(value);
                } catch (const std::invalid_argument& err) {
                    throw ConfigError(line_no, qualified,
                                      "line " + std::to_string(line_no) + ": " +
                                          err.what());
                }
            } else known = false;
        } else if (section == "excitation") {
            if (key == "a") config.excitation.a = num();
            else if (key == "f") config.excitation.f = num();
            else if (key == "enabled") config.excitation.enabled = boolean();
            else known = false;
        } else if (section == "sweep") {
            if (key == "f0") config.sweep.f0 = num();
            else if (key == "f1") config.sweep.f1 = num();
            else if (key == "df") config.sweep.df = num();
            else if (key == "a") config.sweep.a = num();
            else if (key == "tf") config.sweep.tf = num();
            else known = false;
        } else if (section == "run") {
            if (key == "kind") {
                try {
                    config.kind = run_kind_from_string(value);
                } catch (const std::invalid_argument& err) {
                    throw ConfigError(line_no, qualified,
                                      "line " + std::to_string(line_no) + ": " +
                                          err.what());
                }
            }
            else if (key == "n_elements") config.n_elements = integer();
            else if (key == "t_end") config.t_end = num();
            else if (key == "dt") config.dt = num();
            else if (key == "output_every") config.output_every = integer();
            else if (key == "ic_displacement") config.ic_displacement = num();
            else if (key == "n_modes") config.n_modes = integer();
            else if (key == "fft_input") config.fft_input = value;
            else if (key == "fft_dof") config.fft_dof = integer();
            else if (key == "peak_threshold") config.peak_threshold = num();
            else if (key == "out") config.out_dir = value;
            else known = false;
        }
        if (!known)
            throw ConfigError(line_no, qualified,
                              "line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "' in section [" + section + "]");
    }

    config.sweep.spring = config.spring;
    config.sweep.n_elements = config.n_elements;
    config.sweep.dt = config.dt;

    try {
        config.validate();
    } catch (ConfigError& err) {
        const auto it = assigned_line.find(err.key);
        if (it != assigned_line.end())
            throw ConfigError(it->second, err.key,
                              "line " + std::to_string(it->second) + ": " + err.what());
        throw;
    }
    return config;
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[beam]\n";
    out << "E = " << format_double(c.beam.E) << '\n';
    out << "I = " << format_double(c.beam.I) << '\n';
    out << "rho = " << format_double(c.beam.rho) << '\n';
    out << "S = " << format_double(c.beam.S) << '\n';
    out << "L = " << format_double(c.beam.L) << '\n';
    out << "\n[spring]\n";
    out << "k_r = " << format_double(c.spring.k_r) << '\n';
    out << "node = " << c.spring.node << '\n';
    out << "mode = " << to_string(c.spring.mode) << '\n';
    out << "\n[excitation]\n";
    out << "a = " << format_double(c.excitation.a) << '\n';
    out << "f = " << format_double(c.excitation.f) << '\n';
    out << "enabled = " << (c.excitation.enabled ? "true" : "false") << '\n';
    out << "\n[sweep]\n";
    out << "f0 = " << format_double(c.sweep.f0) << '\n';
    out << "f1 = " << format_double(c.sweep.f1) << '\n';
    out << "df = " << format_double(c.sweep.df) << '\n';
    out << "a = " << format_double(c.sweep.a) << '\n';
    out << "tf = " << format_double(c.sweep.tf) << '\n';
    out << "\n[run]\n";
    out << "kind = " << to_string(c.kind) << '\n';
    out << "n_elements = " << c.n_elements << '\n';
    out << "t_end = " << format_double(c.t_end) << '\n';
    out << "dt = " << format_double(c.dt) << '\n';
    out << "output_every = " << c.output_every << '\n';
    out << "ic_displacement = " << format_double(c.ic_displacement) << '\n';
    out << "n_modes = " << c.n_modes << '\n';
    if (!c.fft_input.empty()) out << "fft_input = " << c.fft_input << '\n';
    out << "fft_dof = " << c.fft_dof << '\n';
    out << "peak_threshold = " << format_double(c.peak_threshold) << '\n';
    out << "out = " << c.out_dir << '\n';
    return out.str();
}

}  // namespace beamspring
