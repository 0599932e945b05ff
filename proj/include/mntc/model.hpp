#pragma once

namespace mntc {

enum class Branch { up, lp };

/// Model constants of the multimode lossy-cavity Hamiltonian. Energies are
/// dimensionless (hbar = 1); n_modes is the number of emitters/cavity modes
/// and sets the k-grid and site grid used by dynamics and oracles.
struct ModelParams {
    double omega_m = 1.0; ///< molecular transition energy
    double omega_c = 0.4; ///< photon confinement energy
    double g = 0.3;       ///< light-matter coupling
    double gamma = 0.1;   ///< photon loss rate
    int n_modes = 2000;   ///< number of emitters/modes (even, >= 2)
};

/// Throws ConfigError naming the offending field. g = 0 is accepted as the
/// documented coupling-free limit.
void validate(const ModelParams &params);

} // namespace mntc
