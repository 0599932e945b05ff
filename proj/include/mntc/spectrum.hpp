#pragma once

#include <complex>
#include <utility>

#include "mntc/model.hpp"

namespace mntc::spectrum {

using Complex = std::complex<double>;

/// |Delta| below this declares the exceptional point: the 2x2 Hamiltonian is
/// defective there and per-branch eigenvectors / group velocities refuse.
inline constexpr double kExceptionalPointTol = 1e-10;

/// Full complex-spectral record of one mode. Assembled by branch_point();
/// near the exceptional point the Hopfield and group-velocity fields are NaN
/// (the strict operations throw instead).
struct BranchPoint {
    double q = 0.0;       ///< wavevector in [-pi, pi]
    double omega_k = 0.0; ///< photon mode energy
    double delta_k = 0.0; ///< detuning omega_m - omega_k
    Complex rabi;         ///< complex vacuum Rabi splitting Delta
    Complex eps_up, eps_lp;
    Complex e_up, p_up, e_lp, p_lp; ///< Hopfield coefficients
    double gamma_up = 0.0, gamma_lp = 0.0;
    double vg_up = 0.0, vg_lp = 0.0;

    bool at_exceptional_point() const { return std::abs(rabi) < kExceptionalPointTol; }

    Complex eps(Branch b) const { return b == Branch::up ? eps_up : eps_lp; }
    Complex hopfield_e(Branch b) const { return b == Branch::up ? e_up : e_lp; }
    Complex hopfield_p(Branch b) const { return b == Branch::up ? p_up : p_lp; }
    double rate(Branch b) const { return b == Branch::up ? gamma_up : gamma_lp; }
    double vg(Branch b) const { return b == Branch::up ? vg_up : vg_lp; }

    /// Unit-norm eigenvector (molecule, photon) satisfying H v = eps v.
    /// The photon component carries the opposite sign of the Hopfield p.
    std::pair<Complex, Complex> eigenvector(Branch b) const;
};

double photon_dispersion(const ModelParams &params, double q);
double photon_dispersion_derivative(const ModelParams &params, double q);
double detuning(const ModelParams &params, double q);

/// Delta = sqrt((delta + i gamma)^2 + 4 g^2) on the branch Re >= 0
/// (tie broken toward Im >= 0). "+Delta" labels the UP branch.
Complex rabi_splitting(const ModelParams &params, double q);
Complex rabi_from_detuning(double delta, double gamma, double g);

/// (eps_up, eps_lp) = (omega_m + omega_k - i gamma +- Delta) / 2.
std::pair<Complex, Complex> eigenvalues(const ModelParams &params, double q);

struct HopfieldCoefficients {
    Complex e_up, p_up, e_lp, p_lp;
};

/// Coefficients e = (eps_other - omega_m)/sqrt((eps_other - omega_m)^2 + g^2),
/// p = g/..., normalized so e^2 + p^2 = 1 (complex sum). Throws
/// ExceptionalPointError within tolerance of the EP.
HopfieldCoefficients hopfield(const ModelParams &params, double q);

/// gamma_{+-} = gamma -+ Im[Delta]; both non-negative, summing to 2 gamma.
std::pair<double, double> relaxation_rates(const ModelParams &params, double q);

/// Analytic Re[d eps/dq] for (up, lp). Throws ExceptionalPointError.
std::pair<double, double> group_velocity(const ModelParams &params, double q);

double critical_gamma(const ModelParams &params);

/// sqrt(omega_m^2 - omega_c^2); throws NoResonanceError if omega_m <= omega_c.
double resonance_wavevector(const ModelParams &params);

/// Total assembly (never throws for finite inputs); see BranchPoint.
BranchPoint branch_point(const ModelParams &params, double q);

/// Same spectral record evaluated at an explicit detuning, for symmetry and
/// resonance-row checks where delta must be exact. The mode energy is the
/// delta-consistent omega_m - delta; only the geometric slope omega'(q) in
/// the group velocities is taken from the given q.
BranchPoint branch_point_at_detuning(const ModelParams &params, double q, double delta);

} // namespace mntc::spectrum
