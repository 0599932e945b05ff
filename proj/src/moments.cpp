#include "mntc/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "mntc/errors.hpp"

namespace mntc::moments {

namespace {

using wavepacket::GridTable;

double grid_population(const GridTable &table, double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < table.q.size(); ++i)
        sum += table.weight0[i] * std::exp(-table.rate[i] * t);
    return sum;
}

struct RawMoments {
    double pop = 0.0, m1 = 0.0, m2 = 0.0;
};

RawMoments site_moments(const std::vector<double> &probs) {
    const long half = static_cast<long>(probs.size()) / 2;
    RawMoments m;
    double edge = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double site = static_cast<double>(static_cast<long>(i) - half);
        m.pop += probs[i];
        m.m1 += site * probs[i];
        m.m2 += site * site * probs[i];
        if (i == 0 || i + 1 == probs.size()) edge = std::max(edge, probs[i]);
    }
    if (edge > 1e-8 * m.pop)
        throw WrapAroundError("packet reached the site-grid edge; raise n_modes");
    return m;
}

VelocityTerms velocity_terms_at(const GridTable &table, double t) {
    double norm = 0.0, v = 0.0, gv = 0.0, g = 0.0;
    for (std::size_t i = 0; i < table.q.size(); ++i) {
        const double w = table.weight0[i] * std::exp(-table.rate[i] * t);
        norm += w;
        v += w * table.vg[i];
        gv += w * table.rate[i] * table.vg[i];
        g += w * table.rate[i];
    }
    VelocityTerms out;
    out.avg_vg = v / norm;
    out.avg_gamma_vg = gv / norm;
    out.avg_gamma_avg_vg = (g / norm) * out.avg_vg;
    return out;
}

double initial_variance(const GridTable &table) {
    const RawMoments m0 = site_moments(wavepacket::real_space_distribution(table, 0.0));
    const double mean = m0.m1 / m0.pop;
    return m0.m2 / m0.pop - mean * mean;
}

} // namespace

double population(const wavepacket::Spec &spec, const ModelParams &params, double t) {
    if (t < 0.0) throw std::invalid_argument("population: t must be >= 0");
    return grid_population(wavepacket::build_table(spec, params), t);
}

double first_moment(const wavepacket::Spec &spec, const ModelParams &params, double t) {
    if (t < 0.0) throw std::invalid_argument("first_moment: t must be >= 0");
    const auto table = wavepacket::build_table(spec, params);
    return site_moments(wavepacket::real_space_distribution(table, t)).m1;
}

double cm_normalized(const wavepacket::Spec &spec, const ModelParams &params, double t) {
    if (t < 0.0) throw std::invalid_argument("cm_normalized: t must be >= 0");
    const auto table = wavepacket::build_table(spec, params);
    return t * velocity_terms_at(table, t).avg_vg;
}

std::pair<double, double> cm_velocity_decomposition(const wavepacket::Spec &spec,
                                                    const ModelParams &params, double t) {
    if (t < 0.0) throw std::invalid_argument("cm_velocity_decomposition: t must be >= 0");
    const auto table = wavepacket::build_table(spec, params);
    const VelocityTerms vt = velocity_terms_at(table, t);
    return {vt.avg_vg, t * (vt.avg_gamma_vg - vt.avg_gamma_avg_vg)};
}

double msd(const wavepacket::Spec &spec, const ModelParams &params, double t) {
    if (t < 0.0) throw std::invalid_argument("msd: t must be >= 0");
    const auto table = wavepacket::build_table(spec, params);
    const double w2_half = initial_variance(table);
    const RawMoments m = site_moments(wavepacket::real_space_distribution(table, t));
    const double mean = m.m1 / m.pop;
    return m.m2 / m.pop - mean * mean - w2_half;
}

std::vector<double> TimeGrid::times() const {
    if (!(dt > 0.0)) throw ConfigError("grids.t.dt", "must be > 0");
    if (!(t_max >= 0.0)) throw ConfigError("grids.t.t_max", "must be >= 0");
    std::vector<double> out;
    const long steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
    out.reserve(steps + 1);
    for (long i = 0; i <= steps; ++i) out.push_back(dt * static_cast<double>(i));
    return out;
}

Trajectory simulate(const wavepacket::Spec &spec, const ModelParams &params,
                    const std::vector<double> &times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw ConfigError("grids.t", "times must be >= 0");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ConfigError("grids.t", "times must be strictly increasing");
    }

    const auto table = wavepacket::build_table(spec, params);

    Trajectory traj;
    traj.times = times;
    const std::size_t nt = times.size();
    traj.population.resize(nt);
    traj.cm.resize(nt);
    traj.cm_approx.resize(nt);
    traj.cm0.resize(nt);
    traj.msd.resize(nt);
    traj.msd0.resize(nt);
    traj.velocity_terms.resize(nt);

    const double w2_half = initial_variance(table);
    traj.W = std::sqrt(2.0 * w2_half);
    const double pop0 = grid_population(table, 0.0);

    for (std::size_t i = 0; i < nt; ++i) {
        const double t = times[i];
        const RawMoments m = site_moments(wavepacket::real_space_distribution(table, t));
        const VelocityTerms vt = velocity_terms_at(table, t);
        const double mean = m.m1 / m.pop;
        const double mean0 = m.m1 / pop0;
        traj.population[i] = m.pop;
        traj.cm[i] = mean;
        traj.cm_approx[i] = t * vt.avg_vg;
        traj.cm0[i] = mean0;
        traj.msd[i] = m.m2 / m.pop - mean * mean - w2_half;
        traj.msd0[i] = m.m2 / pop0 - mean0 * mean0 - w2_half;
        traj.velocity_terms[i] = vt;
    }
    return traj;
}

Trajectory simulate(const wavepacket::Spec &spec, const ModelParams &params, const TimeGrid &grid) {
    return simulate(spec, params, grid.times());
}

} // namespace mntc::moments
