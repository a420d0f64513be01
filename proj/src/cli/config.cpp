#include "qle/cli/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

#include "qle/cli/table.hpp"

namespace qle::cli {

namespace {

double parse_double(std::string_view s, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw UsageError(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
    }
    return v;
}

bool is_command(std::string_view name) {
    for (const auto& c : command_names()) {
        if (c == name) return true;
    }
    return false;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += format_number(xs[i]);
    }
    return s;
}

// Flat key=value files, or the "# key=value" block that heads every table this tool writes.
// In the second form the data rows are ignored and the command key is informational.
class HeaderAwareConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::ostringstream body;
        bool header = false;
        bool first = true;
        for (std::string line; std::getline(input, line);) {
            if (line.empty()) continue;
            if (first) header = line.front() == '#';
            first = false;
            if (!header) {
                body << line << '\n';
                continue;
            }
            if (line.front() != '#') break;
            std::string_view v = line;
            while (!v.empty() && (v.front() == '#' || v.front() == ' ')) v.remove_prefix(1);
            const auto eq = v.find('=');
            if (eq == std::string_view::npos || v.substr(0, eq) == "command") continue;
            body << v << '\n';
        }
        std::istringstream in(body.str());
        return CLI::ConfigBase::from_config(in);
    }
};

} // namespace

Grid Grid::parse(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw UsageError("grid must be start:stop:count");
    Grid g;
    g.start = parse_double(text.substr(0, c1), "grid start");
    g.stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
    const double count = parse_double(text.substr(c2 + 1), "grid count");
    if (!(count >= 2.0) || count != std::floor(count)) throw UsageError("grid count must be an integer >= 2");
    g.count = static_cast<std::size_t>(count);
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !(g.stop > g.start)) {
        throw UsageError("grid needs finite start < stop");
    }
    return g;
}

std::vector<double> Grid::points() const {
    std::vector<double> pts(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = start + step * static_cast<double>(i);
    pts.back() = stop;
    return pts;
}

std::string Grid::str() const {
    return format_number(start) + ":" + format_number(stop) + ":" + std::to_string(count);
}

std::unique_ptr<CLI::App> make_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>("Quantum Langevin oscillator toolkit", "qle");
    app->config_formatter(std::make_shared<HeaderAwareConfig>());
    app->set_config("--config", "", "key=value file or a previous output; flags given on the command line win");
    app->allow_config_extras(CLI::config_extras_mode::error);

    app->add_option("--gamma", cfg.gamma, "Damping rate(s), comma separated")->delimiter(',');
    app->add_option("--omega0", cfg.omega0, "Oscillator frequency");
    app->add_option("--temp", cfg.temperature, "Temperature");
    app->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
    app->add_option("--kb", cfg.kB, "Boltzmann constant");
    app->add_option("--mass", cfg.mass, "Oscillator mass");
    app->add_option("--omega-max", cfg.omega_max, "Upper frequency for UV-sensitive integrals");
    app->add_option("--cutoff", cfg.cutoff, "Bath cutoff frequency (0: strict Ohmic)");
    app->add_option("--grid", cfg.grid, "start:stop:count");
    app->add_option("--traj", cfg.traj, "Trajectories or realizations");
    app->add_option("--steps", cfg.steps, "Samples per trajectory (sde, rwa) or integration steps (microbath)");
    app->add_option("--dt", cfg.dt, "Time step");
    app->add_option("--seed", cfg.seed, "Random seed");
    app->add_option("--modes", cfg.modes, "Bath modes (microbath)");
    app->add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}},
                                            CLI::ignore_case));
    app->add_option("--out", cfg.out, "Output file (default: stdout)");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"dist", "Dimensionless frequency densities on a Lambda grid"},
        {"corr", "Position and velocity correlations on a tau grid"},
        {"energy", "Kinetic and potential energies over a damping sweep"},
        {"sde", "Markovian Langevin ensemble moments"},
        {"rwa", "Rotating-wave Langevin ensemble moments"},
        {"microbath", "Finite-bath noise statistics and memory-kernel ensemble"},
        {"scan", "Per-damping summary of the density and energy results"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app->add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }
    app->require_subcommand(1);
    return app;
}

void resolve_defaults(RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (!is_command(c)) throw UsageError("unknown command '" + c + "'");
    auto set_gamma = [&](std::vector<double> g) {
        if (cfg.gamma.empty()) cfg.gamma = std::move(g);
    };
    auto set = [](auto& field, auto value) {
        if (field == decltype(value){}) field = value;
    };
    if (c == "dist" || c == "energy" || c == "scan") set_gamma({1.0, 0.5, 0.125, 0.0125});
    if (c == "dist" && cfg.grid.empty()) cfg.grid = "0:10:2000";
    if (c == "scan" && cfg.grid.empty()) cfg.grid = "0:10:2000";
    if (c == "corr") {
        set_gamma({1e-4});
        if (cfg.grid.empty()) cfg.grid = "0:10:101";
    }
    if (c == "sde") {
        set_gamma({0.1});
        set(cfg.traj, std::size_t{100000});
        set(cfg.steps, std::size_t{1000});
        set(cfg.dt, 0.01);
    }
    if (c == "rwa") {
        set_gamma({1e-2});
        set(cfg.traj, std::size_t{10000});
        set(cfg.steps, std::size_t{1000});
        set(cfg.dt, 0.01);
    }
    if (c == "microbath") {
        set_gamma({0.5});
        set(cfg.traj, std::size_t{1000});
        set(cfg.modes, std::size_t{1000});
        set(cfg.cutoff, 3.0);
        set(cfg.dt, 0.02);
        if (cfg.steps == 0 && cfg.gamma.front() > 0.0) {
            cfg.steps = static_cast<std::size_t>(std::ceil(20.0 / cfg.gamma.front() / cfg.dt));
        }
    }
}

void validate(const RunConfig& cfg) {
    if (!is_command(cfg.command)) throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.gamma.empty()) throw UsageError("need at least one gamma");
    for (double g : cfg.gamma) {
        if (!(g > 0.0) || !std::isfinite(g)) throw UsageError("gamma values must be positive");
    }
    if (!(cfg.omega0 > 0.0)) throw UsageError("omega0 must be positive");
    if (!(cfg.temperature > 0.0)) throw UsageError("temp must be positive");
    if (!(cfg.hbar > 0.0) || !(cfg.kB > 0.0) || !(cfg.mass > 0.0)) throw UsageError("hbar, kb, mass must be positive");
    if (!(cfg.omega_max > cfg.omega0)) throw UsageError("omega-max must exceed omega0");
    if (!(cfg.cutoff >= 0.0)) throw UsageError("cutoff must be >= 0");
    if (!cfg.grid.empty()) (void)Grid::parse(cfg.grid);
    const bool ensemble = cfg.command == "sde" || cfg.command == "rwa" || cfg.command == "microbath";
    if (ensemble) {
        if (cfg.traj == 0) throw UsageError("traj must be positive");
        if (cfg.steps == 0) throw UsageError("steps must be positive");
        if (!(cfg.dt > 0.0)) throw UsageError("dt must be positive");
    }
    if ((cfg.command == "sde" || cfg.command == "rwa") && cfg.dt * cfg.omega0 > 0.01) {
        throw UsageError("dt*omega0 must be <= 0.01");
    }
    if (cfg.command == "microbath") {
        if (cfg.modes == 0) throw UsageError("modes must be positive");
        if (!(cfg.cutoff > 0.0)) throw UsageError("microbath needs a positive cutoff");
    }
}

std::vector<std::pair<std::string, std::string>> to_pairs(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv{
        {"command", cfg.command},
        {"gamma", join(cfg.gamma)},
        {"omega0", format_number(cfg.omega0)},
        {"temp", format_number(cfg.temperature)},
        {"hbar", format_number(cfg.hbar)},
        {"kb", format_number(cfg.kB)},
        {"mass", format_number(cfg.mass)},
        {"omega-max", format_number(cfg.omega_max)},
        {"cutoff", format_number(cfg.cutoff)},
    };
    if (!cfg.grid.empty()) kv.emplace_back("grid", Grid::parse(cfg.grid).str());
    kv.emplace_back("traj", std::to_string(cfg.traj));
    kv.emplace_back("steps", std::to_string(cfg.steps));
    kv.emplace_back("dt", format_number(cfg.dt));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("modes", std::to_string(cfg.modes));
    kv.emplace_back("format", cfg.format == Format::Json ? "json" : "csv");
    if (!cfg.out.empty()) kv.emplace_back("out", cfg.out);
    return kv;
}

RunConfig parse_config_text(std::string_view text) {
    std::istringstream lines{std::string(text)};
    std::ostringstream body;
    std::string command;
    for (std::string line; std::getline(lines, line);) {
        std::string_view v = line;
        while (!v.empty() && (v.front() == '#' || v.front() == ' ')) v.remove_prefix(1);
        const auto eq = v.find('=');
        if (eq == std::string_view::npos) continue;
        if (v.substr(0, eq) == "command") {
            command = std::string(v.substr(eq + 1));
            continue;
        }
        body << v << '\n';
    }
    RunConfig cfg;
    auto app = make_app(cfg);
    app->require_subcommand(0);
    std::istringstream in(body.str());
    try {
        app->parse_from_stream(in);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    cfg.command = command;
    resolve_defaults(cfg);
    return cfg;
}

} // namespace qle::cli
