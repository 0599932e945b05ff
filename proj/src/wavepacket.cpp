#include "mntc/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mntc/errors.hpp"
#include "mntc/fft.hpp"

namespace mntc::wavepacket {

namespace {
constexpr double kPi = std::numbers::pi;
}

double initial_amplitude(const Spec &spec, double q) {
    const double d = q - spec.p;
    return std::sqrt(spec.w / std::sqrt(kPi)) * std::exp(-0.5 * spec.w * spec.w * d * d);
}

Complex grid_amplitude(const Spec &spec, const ModelParams &params, double q) {
    return initial_amplitude(spec, q) * std::sqrt(2.0 * kPi / params.n_modes);
}

void validate(const Spec &spec, const ModelParams &params) {
    mntc::validate(params);
    if (!(spec.w > 0.0)) throw ConfigError("packet.w", "must be > 0");
    if (!(spec.p > -kPi && spec.p < kPi)) throw ConfigError("packet.p", "must lie in (-pi, pi)");

    // Tail mass of |psi|^2 outside [-pi, pi].
    const double tail = 0.5 * (std::erfc(spec.w * (kPi - spec.p)) + std::erfc(spec.w * (kPi + spec.p)));
    if (!(tail < 1e-10))
        throw ConfigError("packet.w", "Gaussian tail outside [-pi, pi] exceeds 1e-10 (w too small)");

    const int n = params.n_modes;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double q = 2.0 * kPi * (i - n / 2) / n;
        const double a = initial_amplitude(spec, q);
        norm += a * a;
    }
    norm *= 2.0 * kPi / n;
    if (std::abs(norm - 1.0) > 1e-8)
        throw ConfigError("packet.w", "grid norm off by " + std::to_string(norm - 1.0) +
                                          " (packet too narrow for n_modes=" + std::to_string(n) + ")");
}

KState evolve_k(const Spec &spec, const ModelParams &params, double q, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_k: t must be >= 0");
    const auto bp = spectrum::branch_point(params, q);
    if (bp.at_exceptional_point())
        throw ExceptionalPointError("wave packet evolution undefined at the exceptional point (q=" +
                                    std::to_string(q) + ")");
    const double a0 = initial_amplitude(spec, q);
    const Complex phase = std::exp(Complex(0.0, -1.0) * bp.eps(spec.branch) * t);
    KState state;
    state.q = q;
    state.amp_mol = a0 * bp.hopfield_e(spec.branch) * phase;
    state.amp_phot = a0 * -bp.hopfield_p(spec.branch) * phase;
    state.t = t;
    return state;
}

double k_population(const Spec &spec, const ModelParams &params, double q, double t) {
    const auto bp = spectrum::branch_point(params, q);
    const double a0 = initial_amplitude(spec, q);
    return a0 * a0 * std::norm(bp.hopfield_e(spec.branch)) * std::exp(-bp.rate(spec.branch) * t);
}

GridTable build_table(const Spec &spec, const ModelParams &params) {
    validate(spec, params);
    const int n = params.n_modes;
    GridTable table;
    table.dq = 2.0 * kPi / n;
    table.q.resize(n);
    table.amp0.resize(n);
    table.eps.resize(n);
    table.rate.resize(n);
    table.vg.resize(n);
    table.weight0.resize(n);
    for (int i = 0; i < n; ++i) {
        const double q = table.dq * (i - n / 2);
        const auto bp = spectrum::branch_point(params, q);
        if (bp.at_exceptional_point())
            throw ExceptionalPointError("k-grid point q=" + std::to_string(q) +
                                        " sits at the exceptional point; adjust n_modes");
        table.q[i] = q;
        table.amp0[i] = grid_amplitude(spec, params, q) * bp.hopfield_e(spec.branch);
        table.eps[i] = bp.eps(spec.branch);
        table.rate[i] = bp.rate(spec.branch);
        table.vg[i] = bp.vg(spec.branch);
        table.weight0[i] = std::norm(table.amp0[i]);
    }
    return table;
}

std::vector<double> real_space_distribution(const GridTable &table, double t) {
    const std::size_t n = table.q.size();
    std::vector<Complex> modes(n);
    for (std::size_t i = 0; i < n; ++i)
        modes[i] = table.amp0[i] * std::exp(Complex(0.0, -1.0) * table.eps[i] * t);
    const std::vector<Complex> sites = fft::to_sites(modes);
    std::vector<double> probs(n);
    for (std::size_t i = 0; i < n; ++i) probs[i] = std::norm(sites[i]);
    return probs;
}

std::vector<double> real_space_distribution(const Spec &spec, const ModelParams &params, double t) {
    return real_space_distribution(build_table(spec, params), t);
}

} // namespace mntc::wavepacket
