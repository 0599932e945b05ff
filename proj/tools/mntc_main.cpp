#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

#include "mntc/cli.hpp"
#include "mntc/errors.hpp"
#include "mntc/version.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::vector<double> gammas;
    std::vector<double> qs;
    std::optional<double> p, w, tmax, dt;
    std::optional<int> nmodes;
    std::string branch;
    std::string input;
};

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", f.seed, "seed for fit multi-start randomization");
    cmd->add_option("--gamma", f.gammas, "photon loss rate values");
    cmd->add_option("--nmodes", f.nmodes, "number of emitters/modes");
}

void add_packet(CLI::App *cmd, Flags &f) {
    cmd->add_option("--p", f.p, "packet center momentum");
    cmd->add_option("--w", f.w, "packet inverse k-width");
    cmd->add_option("--branch", f.branch, "up|lp")->check(CLI::IsMember({"up", "lp"}));
    cmd->add_option("--tmax", f.tmax, "time grid end");
    cmd->add_option("--dt", f.dt, "time grid step");
}

mntc::cli::RunConfig build_config(const Flags &f) {
    mntc::cli::RunConfig config;
    if (!f.config_path.empty()) config = mntc::cli::load_config_file(f.config_path);
    if (!f.out.empty()) config.output.path = f.out;
    if (!f.format.empty()) config.output.format = f.format;
    if (f.seed) config.seed = *f.seed;
    if (!f.gammas.empty()) config.gamma_grid = mntc::cli::GridSpec::from_values(f.gammas);
    if (!f.qs.empty()) config.q_grid = mntc::cli::GridSpec::from_values(f.qs);
    if (f.nmodes) config.model.n_modes = *f.nmodes;
    if (f.p) {
        config.packet.p = *f.p;
        config.packet_p_set = true;
    }
    if (f.w) {
        config.packet.w = *f.w;
        config.packet_w_set = true;
    }
    if (!f.branch.empty()) config.packet.branch = f.branch == "up" ? mntc::Branch::up : mntc::Branch::lp;
    if (f.tmax) config.time_grid.t_max = *f.tmax;
    if (f.dt) config.time_grid.dt = *f.dt;
    if (!f.input.empty()) config.input_path = f.input;
    return config;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"multimode lossy-cavity polariton spectra, wave-packet dynamics and fits"};
    app.set_version_flag("--version", std::string("mntc ") + mntc::kVersion);
    app.require_subcommand(1);

    Flags spectrum_f, dynamics_f, fit_f, phase_f, oracle_f;

    auto *spectrum = app.add_subcommand("spectrum", "complex dispersion, relaxation and group velocity");
    add_common(spectrum, spectrum_f);
    spectrum->add_option("--q", spectrum_f.qs, "wavevector values");

    auto *dynamics = app.add_subcommand("dynamics", "wave-packet population, CM and MSD trajectories");
    add_common(dynamics, dynamics_f);
    add_packet(dynamics, dynamics_f);

    auto *fit = app.add_subcommand("fit", "crossover / power-law fits of MSD trajectories");
    add_common(fit, fit_f);
    add_packet(fit, fit_f);
    fit->add_option("--in", fit_f.input, "previously written dynamics CSV");

    auto *phase = app.add_subcommand("phase", "(k, gamma) phase diagram sweep");
    add_common(phase, phase_f);
    phase->add_option("--q", phase_f.qs, "wavevector values");

    auto *oracle = app.add_subcommand("oracle", "brute-force lattice propagation (debugging)");
    add_common(oracle, oracle_f);
    add_packet(oracle, oracle_f);
    oracle->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2; // flag/usage problems are configuration errors
    }

    try {
        if (spectrum->parsed()) return mntc::cli::dispatch("spectrum", build_config(spectrum_f));
        if (dynamics->parsed()) return mntc::cli::dispatch("dynamics", build_config(dynamics_f));
        if (fit->parsed()) return mntc::cli::dispatch("fit", build_config(fit_f));
        if (phase->parsed()) return mntc::cli::dispatch("phase", build_config(phase_f));
        if (oracle->parsed()) return mntc::cli::dispatch("oracle", build_config(oracle_f));
    } catch (const mntc::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
