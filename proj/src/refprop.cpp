#include "mntc/refprop.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mntc/errors.hpp"
#include "mntc/fft.hpp"
#include "mntc/spectrum.hpp"
#include "mntc/wavepacket.hpp"

namespace mntc::refprop {

namespace {

struct Mode2x2 {
    Complex h_mm, h_mp, h_pm, h_pp;
};

Mode2x2 hamiltonian(const ModelParams &params, double q) {
    return {Complex(params.omega_m, 0.0), Complex(params.g, 0.0), Complex(params.g, 0.0),
            Complex(spectrum::photon_dispersion(params, q), -params.gamma)};
}

Vec2 apply(const Mode2x2 &h, const Vec2 &v) {
    return {h.h_mm * v.first + h.h_mp * v.second, h.h_pm * v.first + h.h_pp * v.second};
}

// exp(-i H t) = C I + S (H - mu I) with C = (E+ + E-)/2, S = (E+ - E-)/Delta,
// E+- = exp(-i eps+- t). The small-|Delta t| series keeps the EP limit exact.
Vec2 propagate_closed_form(const Mode2x2 &h, const Vec2 &v, double t) {
    const Complex mu = 0.5 * (h.h_mm + h.h_pp);
    const Complex halfdiff = 0.5 * (h.h_mm - h.h_pp);
    const Complex delta = 2.0 * std::sqrt(halfdiff * halfdiff + h.h_mp * h.h_pm);
    const Complex z = 0.5 * delta * t;

    Complex c, s;
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        const Complex e_mu = std::exp(Complex(0.0, -1.0) * mu * t);
        c = e_mu * (1.0 - z2 / 2.0 + z2 * z2 / 24.0);
        s = Complex(0.0, -t) * e_mu * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
    } else {
        const Complex e_up = std::exp(Complex(0.0, -1.0) * (mu + 0.5 * delta) * t);
        const Complex e_lp = std::exp(Complex(0.0, -1.0) * (mu - 0.5 * delta) * t);
        c = 0.5 * (e_up + e_lp);
        s = (e_up - e_lp) / delta;
    }

    const Vec2 hv = apply(h, v);
    return {c * v.first + s * (hv.first - mu * v.first),
            c * v.second + s * (hv.second - mu * v.second)};
}

} // namespace

Vec2 propagate_2x2(const ModelParams &params, double q, const Vec2 &initial, double t) {
    if (t < 0.0) throw std::invalid_argument("propagate_2x2: t must be >= 0");
    return propagate_closed_form(hamiltonian(params, q), initial, t);
}

Vec2 propagate_2x2_rk4(const ModelParams &params, double q, const Vec2 &initial, double t,
                       double dt) {
    if (t < 0.0) throw std::invalid_argument("propagate_2x2_rk4: t must be >= 0");
    const Mode2x2 h = hamiltonian(params, q);
    const auto rhs = [&](const Vec2 &v) -> Vec2 {
        const Vec2 hv = apply(h, v);
        return {Complex(0.0, -1.0) * hv.first, Complex(0.0, -1.0) * hv.second};
    };

    const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt)));
    const double step = t / static_cast<double>(steps);
    Vec2 v = initial;
    if (t == 0.0) return v;
    for (long i = 0; i < steps; ++i) {
        const Vec2 k1 = rhs(v);
        const Vec2 k2 = rhs({v.first + 0.5 * step * k1.first, v.second + 0.5 * step * k1.second});
        const Vec2 k3 = rhs({v.first + 0.5 * step * k2.first, v.second + 0.5 * step * k2.second});
        const Vec2 k4 = rhs({v.first + step * k3.first, v.second + step * k3.second});
        v.first += step / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        v.second += step / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    }
    return v;
}

Vec2 propagate_2x2_rk4_adaptive(const ModelParams &params, double q, const Vec2 &initial, double t,
                                double tol) {
    double dt = 1e-2;
    Vec2 prev = propagate_2x2_rk4(params, q, initial, t, dt);
    for (int iter = 0; iter < 12; ++iter) {
        dt *= 0.5;
        const Vec2 next = propagate_2x2_rk4(params, q, initial, t, dt);
        const double diff = std::max(std::abs(next.first - prev.first),
                                     std::abs(next.second - prev.second));
        prev = next;
        if (diff < tol) return prev;
    }
    return prev;
}

LatticeState make_packet_state(const ModelParams &params, double p, double w, Branch branch) {
    const wavepacket::Spec spec{p, w, branch};
    wavepacket::validate(spec, params);
    const int n = params.n_modes;

    std::vector<Complex> mol_modes(n), phot_modes(n);
    for (int i = 0; i < n; ++i) {
        const double q = 2.0 * std::numbers::pi * (i - n / 2) / n;
        const auto bp = spectrum::branch_point(params, q);
        const Complex amp = wavepacket::grid_amplitude(spec, params, q);
        mol_modes[i] = amp * bp.hopfield_e(branch);
        phot_modes[i] = amp * -bp.hopfield_p(branch);
    }

    LatticeState state;
    state.mol_amps = fft::to_sites(mol_modes);
    state.phot_amps = std::move(phot_modes);
    state.t = 0.0;
    return state;
}

LatticeState propagate_lattice(const ModelParams &params, const LatticeState &initial, double t) {
    const std::size_t n = initial.mol_amps.size();
    if (n != initial.phot_amps.size() || n != static_cast<std::size_t>(params.n_modes))
        throw std::invalid_argument("propagate_lattice: state size does not match n_modes");
    if (params.n_modes > 4096) throw std::invalid_argument("propagate_lattice: oracle scale is N <= 4096");

    std::vector<Complex> mol_modes = fft::to_modes(initial.mol_amps);
    std::vector<Complex> phot_modes = initial.phot_amps;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = 2.0 * std::numbers::pi * (static_cast<double>(i) - n / 2.0) /
                         static_cast<double>(n);
        const Vec2 out = propagate_2x2(params, q, {mol_modes[i], phot_modes[i]}, t);
        mol_modes[i] = out.first;
        phot_modes[i] = out.second;
    }

    LatticeState state;
    state.mol_amps = fft::to_sites(mol_modes);
    state.phot_amps = std::move(phot_modes);
    state.t = initial.t + t;
    return state;
}

OracleMoments oracle_moments(const LatticeState &state) {
    const std::size_t n = state.mol_amps.size();
    const long half = static_cast<long>(n) / 2;

    double pop = 0.0, m1 = 0.0, m2 = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::norm(state.mol_amps[i]);
        const double site = static_cast<double>(static_cast<long>(i) - half);
        pop += p;
        m1 += site * p;
        m2 += site * site * p;
        if (i == 0 || i + 1 == n) edge = std::max(edge, p);
    }
    if (pop <= 0.0) throw DegenerateDataError("oracle_moments: empty molecular population");
    if (edge > 1e-8 * pop)
        throw WrapAroundError("packet reached the site-grid edge; raise n_modes");

    return {pop, m1 / pop, m2 / pop};
}

} // namespace mntc::refprop
