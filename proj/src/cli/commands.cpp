#include "qle/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qle/bath.hpp"
#include "qle/fdt.hpp"
#include "qle/markovian.hpp"
#include "qle/microbath.hpp"
#include "qle/quadrature.hpp"
#include "qle/rwa.hpp"
#include "qle/thermal.hpp"

namespace qle::cli {

namespace {

SystemSpec system_of(const RunConfig& c) {
    SystemSpec s;
    s.mass = c.mass;
    s.omega0 = c.omega0;
    s.temperature = c.temperature;
    s.hbar = c.hbar;
    s.kB = c.kB;
    return s;
}

BathSpec bath_of(const RunConfig& c, double gamma) {
    return c.cutoff > 0.0 ? BathSpec::cutoff_ohmic_with_gamma(gamma, c.cutoff, c.mass) : BathSpec::strict_ohmic(gamma);
}

fdt::QuadratureConfig quadrature_of(const RunConfig& c) {
    fdt::QuadratureConfig q;
    q.omega_max = c.omega_max;
    return q;
}

double weak_energy(const SystemSpec& s) { return thermal::oscillator_energy(s.hbar * s.omega0, s.kT()); }

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return sum;
}

Table cmd_dist(const RunConfig& c) {
    Table t{"dimensionless kinetic and potential frequency densities", {"gamma[1/time]", "lambda[1]", "pk[1]", "pp[1]"}, {}};
    const std::vector<double> grid = Grid::parse(c.grid).points();
    for (double g : c.gamma) {
        const double ratio = g / c.omega0;
        for (double lambda : grid) {
            t.add_row({g, lambda, fdt::pk_density(lambda, ratio), fdt::pp_density(lambda, ratio)});
        }
    }
    return t;
}

Table cmd_corr(const RunConfig& c) {
    Table t{"equilibrium position and velocity correlations",
            {"gamma[1/time]", "tau[time]", "cx[length^2]", "cv[length^2/time^2]", "cx_weak[length^2]",
             "cv_weak[length^2/time^2]", "deviation[1]"},
            {}};
    const SystemSpec sys = system_of(c);
    const fdt::QuadratureConfig q = quadrature_of(c);
    const std::vector<double> taus = Grid::parse(c.grid).points();
    for (double g : c.gamma) {
        const response::Susceptibility chi(sys, bath_of(c, g));
        const double cx0 = fdt::position_correlation(0.0, chi, q).value;
        for (double tau : taus) {
            const double cx = fdt::position_correlation(tau, chi, q).value;
            const double cv = fdt::velocity_correlation(tau, chi, q).value;
            const fdt::WeakLimit w = fdt::weak_limit_correlation(tau, sys);
            t.add_row({g, tau, cx, cv, w.position, w.velocity, std::abs(cx / cx0 - std::cos(sys.omega0 * tau))});
        }
    }
    return t;
}

Table cmd_energy(const RunConfig& c) {
    Table t{"mean kinetic and potential energies",
            {"gamma[1/time]", "ek[energy]", "ep[energy]", "ek_error[energy]", "ep_error[energy]", "ek_over_ep[1]",
             "e_weak[energy]", "omega_max[1/time]"},
            {}};
    const SystemSpec sys = system_of(c);
    for (double g : c.gamma) {
        const fdt::EnergySplit e = fdt::mean_energies(sys, bath_of(c, g), quadrature_of(c));
        t.add_row({g, e.kinetic, e.potential, e.kinetic_error, e.potential_error, e.kinetic / e.potential,
                   weak_energy(sys), e.omega_max});
    }
    return t;
}

Table cmd_scan(const RunConfig& c) {
    Table t{"per-damping summary",
            {"gamma[1/time]", "norm_pk[1]", "norm_pp[1]", "grid_norm_pk[1]", "grid_norm_pp[1]", "peak_pk[1]",
             "peak_pp[1]", "ek[energy]", "ep[energy]", "e_weak[energy]"},
            {}};
    const SystemSpec sys = system_of(c);
    const std::vector<double> grid = Grid::parse(c.grid).points();
    for (double g : c.gamma) {
        const double ratio = g / c.omega0;
        std::vector<double> pk(grid.size()), pp(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            pk[i] = fdt::pk_density(grid[i], ratio);
            pp[i] = fdt::pp_density(grid[i], ratio);
        }
        const auto argmax = [&grid](const std::vector<double>& y) {
            return grid[static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin())];
        };
        const fdt::EnergySplit e = fdt::mean_energies(sys, bath_of(c, g), quadrature_of(c));
        t.add_row({g, fdt::density_moment(fdt::Density::Kinetic, 0, ratio).value,
                   fdt::density_moment(fdt::Density::Potential, 0, ratio).value, trapezoid(grid, pk),
                   trapezoid(grid, pp), argmax(pk), argmax(pp), e.kinetic, e.potential, weak_energy(sys)});
    }
    return t;
}

markovian::SdeOptions sde_options(const RunConfig& c) {
    markovian::SdeOptions o;
    o.dt = c.dt;
    o.n_samples = c.steps;
    o.n_traj = c.traj;
    o.seed = c.seed;
    o.threads = 0;
    return o;
}

Table moment_table(const char* title) {
    return Table{title,
                 {"gamma[1/time]", "moment", "mean", "std_error", "analytic", "sigmas[1]", "weak_coupling_ok"},
                 {}};
}

void add_moment(Table& t, double g, const char* name, const Estimate& e, double analytic, bool flag) {
    t.add_row({g, std::string(name), e.mean, e.std_error, analytic, sigmas_from(e, analytic), std::int64_t{flag}});
}

Table cmd_sde(const RunConfig& c) {
    Table t = moment_table("Markovian Langevin ensemble");
    const SystemSpec sys = system_of(c);
    for (double g : c.gamma) {
        const auto p = markovian::MarkovParams::from_system(sys, g);
        const auto r = markovian::simulate_sde(p, sde_options(c));
        const auto a = markovian::stationary_moments_analytic(p);
        const bool ok = g <= 0.1 * sys.omega0;
        add_moment(t, g, "x2", r.at("x2"), a.position, ok);
        add_moment(t, g, "v2", r.at("v2"), a.velocity, ok);
        add_moment(t, g, "potential_energy", r.at("potential_energy"), sys.mass * sys.omega0 * sys.omega0 * a.position, ok);
        add_moment(t, g, "kinetic_energy", r.at("kinetic_energy"), sys.mass * a.velocity, ok);
    }
    return t;
}

Table cmd_rwa(const RunConfig& c) {
    Table t = moment_table("rotating-wave Langevin ensemble");
    const SystemSpec sys = system_of(c);
    for (double g : c.gamma) {
        const auto p = rwa::RwaParams::from_system(sys, g);
        const auto r = rwa::simulate_rwa(p, sde_options(c));
        const auto a = rwa::rwa_stationary_analytic(p);
        const bool ok = p.weak_coupling_ok();
        add_moment(t, g, "x2", r.at("x2"), a.position, ok);
        add_moment(t, g, "p2", r.at("p2"), a.momentum, ok);
        add_moment(t, g, "xp", r.at("xp"), a.cross, ok);
        add_moment(t, g, "potential_energy", r.at("potential_energy"), a.potential_energy(sys), ok);
        add_moment(t, g, "kinetic_energy", r.at("kinetic_energy"), a.kinetic_energy(sys), ok);
        add_moment(t, g, "ehrenfest_residual", r.at("ehrenfest_residual"), rwa::ehrenfest_reference(p, c.dt), ok);
    }
    return t;
}

Table cmd_microbath(const RunConfig& c) {
    Table t{"finite-bath noise statistics and memory-kernel ensemble",
            {"quantity", "time[time]", "empirical", "std_error", "reference", "sigmas[1]"},
            {}};
    const SystemSpec sys = system_of(c);
    const double g = c.gamma.front();
    const BathSpec bath = BathSpec::cutoff_ohmic_with_gamma(g, c.cutoff, c.mass);
    const ModeSet modes = bath::discretize_bath(bath, c.modes);

    microbath::EnsembleOptions o;
    o.realizations = c.traj;
    o.seed = c.seed;
    o.threads = 0;

    std::vector<double> lags(11), origins(11);
    for (std::size_t i = 0; i < lags.size(); ++i) lags[i] = 0.5 * static_cast<double>(i) / c.omega0;
    for (std::size_t i = 0; i < origins.size(); ++i) origins[i] = static_cast<double>(i) / c.omega0;
    const auto stats = microbath::noise_statistics(modes, sys, lags, origins, o);
    fdt::QuadratureConfig q;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double ref = fdt::noise_correlation(lags[i], sys, bath, q).value;
        const Estimate& e = stats.correlation[i];
        t.add_row({std::string("noise_correlation"), lags[i], e.mean, e.std_error, ref, sigmas_from(e, ref)});
    }
    for (std::size_t i = 0; i < origins.size(); ++i) {
        const Estimate& e = stats.mean[i];
        t.add_row({std::string("noise_mean"), origins[i], e.mean, e.std_error, 0.0, sigmas_from(e, 0.0)});
    }

    const microbath::TrajectoryGrid grid{c.dt, c.steps};
    const EnsembleResult r = microbath::gle_ensemble(modes, sys, grid, o);
    const fdt::EnergySplit ref = fdt::mean_energies(sys, bath, q);
    const Estimate& ep = r.at("potential_energy");
    const Estimate& ek = r.at("kinetic_energy");
    t.add_row({std::string("gle_potential_energy"), grid.duration(), ep.mean, ep.std_error, ref.potential,
               sigmas_from(ep, ref.potential)});
    t.add_row({std::string("gle_kinetic_energy"), grid.duration(), ek.mean, ek.std_error, ref.kinetic,
               sigmas_from(ek, ref.kinetic)});
    return t;
}

} // namespace

Table run_command(const RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (c == "dist") return cmd_dist(cfg);
    if (c == "corr") return cmd_corr(cfg);
    if (c == "energy") return cmd_energy(cfg);
    if (c == "sde") return cmd_sde(cfg);
    if (c == "rwa") return cmd_rwa(cfg);
    if (c == "microbath") return cmd_microbath(cfg);
    if (c == "scan") return cmd_scan(cfg);
    throw UsageError("unknown command '" + c + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    auto app = make_app(cfg);
    try {
        app->parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app->exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app->exit(e, out, err);
        return exit_code::validation;
    }

    try {
        resolve_defaults(cfg);
        validate(cfg);
        const Table table = run_command(cfg);
        std::ostringstream text;
        if (cfg.format == Format::Json) write_json(text, table, to_pairs(cfg));
        else write_csv(text, table, to_pairs(cfg));

        if (cfg.out.empty()) {
            out << text.str();
            out.flush();
            if (!out) throw IoError("failed writing to standard output");
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) throw IoError("cannot open output file '" + cfg.out + "'");
            file << text.str();
            file.close();
            if (!file) throw IoError("failed writing '" + cfg.out + "'");
        }
        return exit_code::ok;
    } catch (const IoError& e) {
        err << "qle: I/O error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const std::logic_error& e) {
        err << "qle: invalid input: " << e.what() << '\n';
        return exit_code::validation;
    } catch (const std::exception& e) {
        err << "qle: numerical failure: " << e.what() << '\n';
        return exit_code::numeric;
    }
}

} // namespace qle::cli
