#include "mntc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "mntc/errors.hpp"
#include "mntc/fitkit.hpp"
#include "mntc/moments.hpp"
#include "mntc/phasemap.hpp"
#include "mntc/refprop.hpp"
#include "mntc/spectrum.hpp"

namespace mntc::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string branch_name(Branch b) { return b == Branch::up ? "up" : "lp"; }

/// UP fits stop once the population has decayed below 1e-4 of its initial
/// value; beyond that the moments are noise-dominated.
std::pair<std::vector<double>, std::vector<double>> crossover_window(
    const std::vector<double> &t, const std::vector<double> &msd, const std::vector<double> &pop) {
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!pop.empty() && pop[i] < 1e-4 * pop.front()) break;
        if (t[i] <= 0.0) continue;
        tw.push_back(t[i]);
        yw.push_back(msd[i]);
    }
    return {tw, yw};
}

/// Ballistic window for LP power-law rows.
constexpr double kPowerlawLo = 1.0;
constexpr double kPowerlawHi = 6.0;

} // namespace

RunConfig resolve_defaults(const std::string &command, RunConfig config) {
    validate(config.model);

    if (command == "dynamics" || command == "fit" || command == "oracle") {
        if (!config.packet_p_set && config.packet.branch == Branch::lp) config.packet.p = 0.03;
        if (!config.packet_w_set && config.packet.branch == Branch::lp) config.packet.w = 1.6;
        config.packet_p_set = config.packet_w_set = true;
        if (!config.gamma_grid) {
            std::vector<double> g;
            if (command == "fit" && config.packet.branch == Branch::up) {
                for (int i = 1; i <= 12; ++i) g.push_back(0.1 * i);
            } else if (config.packet.branch == Branch::up) {
                g = {0.1, 0.67, 1.0};
            } else {
                g = {0.01, 0.05, 0.07};
            }
            config.gamma_grid = GridSpec::from_values(g);
        }
    } else if (command == "spectrum") {
        if (!config.q_grid) config.q_grid = GridSpec::uniform(0.0, std::numbers::pi, 400);
        if (!config.gamma_grid) config.gamma_grid = GridSpec::from_values({0.1, 0.6, 1.0});
    } else if (command == "phase") {
        if (!config.q_grid) config.q_grid = GridSpec::uniform(0.0, std::numbers::pi, 400);
        if (!config.gamma_grid) config.gamma_grid = GridSpec::uniform(0.0, 1.2, 240);
    } else {
        throw ConfigError("command", "unknown subcommand: " + command);
    }
    return config;
}

io::Dataset run_spectrum(const RunConfig &config) {
    if (!config.q_grid) throw ConfigError("grids.q", "required for spectrum");
    if (!config.gamma_grid) throw ConfigError("grids.gamma", "required for spectrum");
    const auto qs = config.q_grid->materialize("grids.q");
    const auto gammas = config.gamma_grid->materialize("grids.gamma");

    io::Dataset data;
    data.command = "spectrum";
    data.config_json = to_json(config);
    data.columns = {"q",        "gamma",    "re_eps_up", "re_eps_lp", "im_eps_up",
                    "im_eps_lp", "gamma_up", "gamma_lp",  "vg_up",     "vg_lp"};
    for (double gamma : gammas) {
        ModelParams p = config.model;
        p.gamma = gamma;
        validate(p);
        for (double q : qs) {
            const auto bp = spectrum::branch_point(p, q);
            data.add_row({q, gamma, bp.eps_up.real(), bp.eps_lp.real(), bp.eps_up.imag(),
                          bp.eps_lp.imag(), bp.gamma_up, bp.gamma_lp, bp.vg_up, bp.vg_lp});
        }
    }
    return data;
}

io::Dataset run_dynamics(const RunConfig &config) {
    if (!config.gamma_grid) throw ConfigError("grids.gamma", "required for dynamics");
    const auto gammas = config.gamma_grid->materialize("grids.gamma");
    const auto times = config.time_grid.times();

    io::Dataset data;
    data.command = "dynamics";
    data.config_json = to_json(config);
    data.columns = {"branch", "gamma",     "t",   "population", "cm",   "cm_approx",
                    "msd",    "vterm_avg", "vterm_corr", "cm0", "msd0", "W"};
    for (double gamma : gammas) {
        ModelParams p = config.model;
        p.gamma = gamma;
        validate(p);
        const auto traj = moments::simulate(config.packet, p, times);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto &vt = traj.velocity_terms[i];
            const double corr = traj.times[i] * (vt.avg_gamma_vg - vt.avg_gamma_avg_vg);
            data.add_row({branch_name(config.packet.branch), gamma, traj.times[i],
                          traj.population[i], traj.cm[i], traj.cm_approx[i], traj.msd[i],
                          vt.avg_vg, corr, traj.cm0[i], traj.msd0[i], traj.W});
        }
    }
    return data;
}

namespace {

struct Series {
    std::string branch;
    double gamma = 0.0;
    std::vector<double> t, msd, msd0, pop;
};

std::vector<Series> series_from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("input", "cannot read file: " + path);

    std::string line;
    long line_no = 0;
    std::vector<std::string> columns;
    long i_branch = -1, i_gamma = -1, i_t = -1, i_msd = -1, i_msd0 = -1, i_pop = -1;
    std::vector<Series> series;

    auto split = [](const std::string &s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (columns.empty()) {
            columns = split(line);
            for (std::size_t i = 0; i < columns.size(); ++i) {
                if (columns[i] == "branch") i_branch = i;
                if (columns[i] == "gamma") i_gamma = i;
                if (columns[i] == "t") i_t = i;
                if (columns[i] == "msd") i_msd = i;
                if (columns[i] == "msd0") i_msd0 = i;
                if (columns[i] == "population") i_pop = i;
            }
            if (i_gamma < 0 || i_t < 0 || i_msd < 0)
                throw ConfigError("input", "line " + std::to_string(line_no) +
                                               ": need 'gamma', 't' and 'msd' columns");
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != columns.size())
            throw ConfigError("input", "line " + std::to_string(line_no) + ": expected " +
                                           std::to_string(columns.size()) + " cells, got " +
                                           std::to_string(cells.size()));
        double gamma, t, msd, msd0, pop = 1.0;
        std::string branch = i_branch >= 0 ? cells[i_branch] : "up";
        try {
            gamma = std::stod(cells[i_gamma]);
            t = std::stod(cells[i_t]);
            msd = std::stod(cells[i_msd]);
            msd0 = i_msd0 >= 0 ? std::stod(cells[i_msd0]) : msd;
            if (i_pop >= 0) pop = std::stod(cells[i_pop]);
        } catch (const std::exception &) {
            throw ConfigError("input", "line " + std::to_string(line_no) + ": non-numeric cell");
        }
        if (series.empty() || series.back().gamma != gamma || series.back().branch != branch) {
            series.push_back({branch, gamma, {}, {}, {}, {}});
        }
        series.back().t.push_back(t);
        series.back().msd.push_back(msd);
        series.back().msd0.push_back(msd0);
        series.back().pop.push_back(pop);
    }
    if (series.empty()) throw ConfigError("input", "no data rows in " + path);
    return series;
}

std::vector<Series> series_from_simulation(const RunConfig &config) {
    const auto gammas = config.gamma_grid->materialize("grids.gamma");
    const auto times = config.time_grid.times();
    std::vector<Series> series;
    for (double gamma : gammas) {
        ModelParams p = config.model;
        p.gamma = gamma;
        validate(p);
        const auto traj = moments::simulate(config.packet, p, times);
        Series s;
        s.branch = branch_name(config.packet.branch);
        s.gamma = gamma;
        s.t = traj.times;
        s.msd = traj.msd;
        s.msd0 = traj.msd0;
        s.pop = traj.population;
        series.push_back(std::move(s));
    }
    return series;
}

} // namespace

io::Dataset run_fit(const RunConfig &config) {
    const std::vector<Series> series =
        config.input_path.empty() ? series_from_simulation(config) : series_from_file(config.input_path);

    io::Dataset data;
    data.command = "fit";
    data.config_json = to_json(config);
    data.notes.push_back("crossover window: t > 0 until population < 1e-4 of initial");
    data.notes.push_back("powerlaw window: ballistic range [" + io::format_number(kPowerlawLo) +
                         ", " + io::format_number(kPowerlawHi) + "]");
    data.columns = {"branch",     "gamma",      "kind",      "alpha",     "tau",
                    "residual_rms", "iterations", "converged", "window_lo", "window_hi",
                    "beta",       "prefactor",  "r_squared"};

    for (const auto &s : series) {
        if (s.branch == "up") {
            const auto [tw, yw] = crossover_window(s.t, s.msd, s.pop);
            fitkit::FitOptions opts;
            opts.seed = config.seed;
            try {
                const auto fit = fitkit::fit_crossover(tw, yw, opts);
                data.add_row({s.branch, s.gamma, std::string("crossover"), fit.alpha, fit.tau,
                              fit.residual_rms, double(fit.iterations), fit.converged ? 1.0 : 0.0,
                              fit.window.first, fit.window.second, kNan, kNan, kNan});
            } catch (const NonConvergenceError &) {
                data.add_row({s.branch, s.gamma, std::string("crossover"), kNan, kNan, kNan, kNan,
                              0.0, tw.empty() ? kNan : tw.front(), tw.empty() ? kNan : tw.back(),
                              kNan, kNan, kNan});
            }
        } else {
            // monotone crossover form cannot represent the LP contraction;
            // fit the ballistic-window power law of the decaying (msd0) curve
            const auto fit = fitkit::fit_powerlaw(s.t, s.msd0, {kPowerlawLo, kPowerlawHi});
            data.add_row({s.branch, s.gamma, std::string("powerlaw"), kNan, kNan, kNan, kNan, 1.0,
                          fit.window.first, fit.window.second, fit.beta, fit.prefactor,
                          fit.r_squared});
        }
    }
    return data;
}

io::Dataset run_phase(const RunConfig &config) {
    if (!config.q_grid) throw ConfigError("grids.q", "required for phase");
    if (!config.gamma_grid) throw ConfigError("grids.gamma", "required for phase");
    const auto cells = phasemap::sweep(config.model, config.q_grid->materialize("grids.q"),
                                       config.gamma_grid->materialize("grids.gamma"));

    io::Dataset data;
    data.command = "phase";
    data.config_json = to_json(config);

    if (config.model.g > 0.0 && config.model.omega_m > config.model.omega_c) {
        const auto ep = phasemap::find_exceptional_point(config.model);
        data.notes.push_back("exceptional_point: q=" + io::format_number(ep.q) +
                             " gamma=" + io::format_number(ep.gamma) +
                             " abs_delta=" + io::format_number(ep.residual));
    } else if (config.model.g == 0.0) {
        data.notes.push_back("exceptional_point: none (g = 0, critical loss rate 0; any gamma > 0 "
                             "is beyond the coherent regime)");
    }

    data.columns = {"q",        "gamma",    "re_d2", "im_d2", "quadrant", "gamma_up",
                    "gamma_lp", "vg_up",    "vg_lp", "re_eps_up", "re_eps_lp"};
    for (const auto &cell : cells)
        data.add_row({cell.q, cell.gamma, cell.re_d2, cell.im_d2, phasemap::to_string(cell.quadrant),
                      cell.gamma_up, cell.gamma_lp, cell.vg_up, cell.vg_lp, cell.re_eps_up,
                      cell.re_eps_lp});
    return data;
}

io::Dataset run_oracle(const RunConfig &config) {
    if (config.model.n_modes > 4096)
        throw ConfigError("model.n_modes", "oracle scale is N <= 4096");
    const auto times = config.time_grid.times();
    const auto state0 = refprop::make_packet_state(config.model, config.packet.p, config.packet.w,
                                                   config.packet.branch);

    io::Dataset data;
    data.command = "oracle";
    data.config_json = to_json(config);
    data.columns = {"t", "population", "n_mean", "n2_mean", "closed_vs_rk4"};

    const auto bp = spectrum::branch_point(config.model, config.packet.p);
    const refprop::Vec2 probe = bp.at_exceptional_point()
                                    ? refprop::Vec2{1.0, 0.0}
                                    : bp.eigenvector(config.packet.branch);
    for (double t : times) {
        const auto state = refprop::propagate_lattice(config.model, state0, t);
        const auto m = refprop::oracle_moments(state);
        double diff = 0.0;
        if (t <= 50.0) { // integrator check kept short
            const auto closed = refprop::propagate_2x2(config.model, config.packet.p, probe, t);
            const auto rk4 = refprop::propagate_2x2_rk4(config.model, config.packet.p, probe, t, 1e-3);
            diff = std::max(std::abs(closed.first - rk4.first), std::abs(closed.second - rk4.second));
        }
        data.add_row({t, m.population, m.n_mean, m.n2_mean, diff});
    }
    return data;
}

int dispatch(const std::string &command, RunConfig raw) {
    try {
        const RunConfig config = resolve_defaults(command, raw);
        io::Dataset data;
        if (command == "spectrum")
            data = run_spectrum(config);
        else if (command == "dynamics")
            data = run_dynamics(config);
        else if (command == "fit")
            data = run_fit(config);
        else if (command == "phase")
            data = run_phase(config);
        else if (command == "oracle")
            data = run_oracle(config);

        if (config.output.path.empty()) {
            if (config.output.format == "csv")
                io::write_csv(std::cout, data);
            else
                io::write_json(std::cout, data);
        } else {
            io::write_file(config.output.path, config.output.format, data);
            std::cout << "wrote " << config.output.path << " (" << data.rows.size() << " rows)\n";
            for (const auto &note : data.notes) std::cout << note << "\n";
        }
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const WrapAroundError &e) {
        std::cerr << "numerical failure: " << e.what() << " (raise --nmodes)\n";
        return 3;
    } catch (const NonConvergenceError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ExceptionalPointError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateDataError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace mntc::cli
