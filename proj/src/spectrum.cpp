#include "mntc/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mntc/errors.hpp"

namespace mntc {

void validate(const ModelParams &p) {
    if (!(p.omega_c >= 0.0)) throw ConfigError("model.omega_c", "must be >= 0");
    if (!(p.omega_m > p.omega_c)) throw ConfigError("model.omega_m", "must exceed omega_c");
    if (!(p.g >= 0.0)) throw ConfigError("model.g", "must be >= 0");
    if (!(p.gamma >= 0.0)) throw ConfigError("model.gamma", "must be >= 0");
    if (p.n_modes < 2 || p.n_modes % 2 != 0) throw ConfigError("model.n_modes", "must be even and >= 2");
}

} // namespace mntc

namespace mntc::spectrum {

namespace {

std::string point_label(double q, double gamma) {
    return "q=" + std::to_string(q) + ", gamma=" + std::to_string(gamma);
}

} // namespace

double photon_dispersion(const ModelParams &params, double q) {
    return std::sqrt(q * q + params.omega_c * params.omega_c);
}

double photon_dispersion_derivative(const ModelParams &params, double q) {
    return q / photon_dispersion(params, q);
}

double detuning(const ModelParams &params, double q) {
    return params.omega_m - photon_dispersion(params, q);
}

Complex rabi_from_detuning(double delta, double gamma, double g) {
    // Principal sqrt puts Re >= 0 and resolves Re = 0 (negative real axis,
    // delta = 0 and gamma > 2g) toward Im >= 0, which is the branch that
    // keeps "+" the UP branch and both relaxation rates non-negative.
    const Complex z = Complex(delta, gamma);
    return std::sqrt(z * z + 4.0 * g * g);
}

Complex rabi_splitting(const ModelParams &params, double q) {
    return rabi_from_detuning(detuning(params, q), params.gamma, params.g);
}

std::pair<Complex, Complex> eigenvalues(const ModelParams &params, double q) {
    const Complex base(params.omega_m + photon_dispersion(params, q), -params.gamma);
    const Complex delta = rabi_splitting(params, q);
    return {0.5 * (base + delta), 0.5 * (base - delta)};
}

std::pair<double, double> relaxation_rates(const ModelParams &params, double q) {
    const double im = rabi_splitting(params, q).imag();
    return {params.gamma - im, params.gamma + im};
}

double critical_gamma(const ModelParams &params) { return 2.0 * params.g; }

double resonance_wavevector(const ModelParams &params) {
    if (!(params.omega_m > params.omega_c))
        throw NoResonanceError("no resonance wavevector: omega_m <= omega_c");
    return std::sqrt(params.omega_m * params.omega_m - params.omega_c * params.omega_c);
}

namespace {

BranchPoint assemble(const ModelParams &params, double q, double delta, double omega_k) {
    BranchPoint bp;
    bp.q = q;
    bp.omega_k = omega_k;
    bp.delta_k = delta;
    bp.rabi = rabi_from_detuning(delta, params.gamma, params.g);

    const Complex base(params.omega_m + bp.omega_k, -params.gamma);
    bp.eps_up = 0.5 * (base + bp.rabi);
    bp.eps_lp = 0.5 * (base - bp.rabi);
    bp.gamma_up = params.gamma - bp.rabi.imag();
    bp.gamma_lp = params.gamma + bp.rabi.imag();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (bp.at_exceptional_point()) {
        bp.e_up = bp.p_up = bp.e_lp = bp.p_lp = Complex(nan, nan);
        bp.vg_up = bp.vg_lp = nan;
        return bp;
    }

    // e_{+-} = (eps_{-+} - omega_m) / sqrt((eps_{-+} - omega_m)^2 + g^2)
    const Complex u_up = bp.eps_lp - params.omega_m;
    const Complex u_lp = bp.eps_up - params.omega_m;
    const Complex n_up = std::sqrt(u_up * u_up + params.g * params.g);
    const Complex n_lp = std::sqrt(u_lp * u_lp + params.g * params.g);
    bp.e_up = u_up / n_up;
    bp.p_up = params.g / n_up;
    bp.e_lp = u_lp / n_lp;
    bp.p_lp = params.g / n_lp;

    const double om_prime = photon_dispersion_derivative(params, q);
    const Complex delta_prime = -Complex(delta, params.gamma) * om_prime / bp.rabi;
    bp.vg_up = 0.5 * (om_prime + delta_prime.real());
    bp.vg_lp = 0.5 * (om_prime - delta_prime.real());
    return bp;
}

} // namespace

BranchPoint branch_point(const ModelParams &params, double q) {
    return assemble(params, q, detuning(params, q), photon_dispersion(params, q));
}

BranchPoint branch_point_at_detuning(const ModelParams &params, double q, double delta) {
    // delta-consistent mode energy; only the geometric slope omega'(q) comes
    // from the given q
    return assemble(params, q, delta, params.omega_m - delta);
}

std::pair<Complex, Complex> BranchPoint::eigenvector(Branch b) const {
    // The coefficient formulas give e/p = (eps_other - omega_m)/g, while the
    // eigenvector condition in the (molecule, photon) basis requires
    // e/p = -g/(eps - omega_m); the two agree after flipping the photon
    // component's sign, which leaves every |.|^2 weight unchanged.
    const Complex e = hopfield_e(b);
    const Complex p = -hopfield_p(b);
    const double norm = std::sqrt(std::norm(e) + std::norm(p));
    return {e / norm, p / norm};
}

HopfieldCoefficients hopfield(const ModelParams &params, double q) {
    const BranchPoint bp = branch_point(params, q);
    if (bp.at_exceptional_point())
        throw ExceptionalPointError("hopfield coefficients undefined at the exceptional point (" +
                                    point_label(q, params.gamma) + ")");
    return {bp.e_up, bp.p_up, bp.e_lp, bp.p_lp};
}

std::pair<double, double> group_velocity(const ModelParams &params, double q) {
    const BranchPoint bp = branch_point(params, q);
    if (bp.at_exceptional_point())
        throw ExceptionalPointError("group velocity diverges at the exceptional point (" +
                                    point_label(q, params.gamma) + ")");
    return {bp.vg_up, bp.vg_lp};
}

} // namespace mntc::spectrum
