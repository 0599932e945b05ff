#pragma once

#include <utility>
#include <vector>

#include "mntc/model.hpp"
#include "mntc/wavepacket.hpp"

namespace mntc::moments {

/// Decay-weighted packet averages entering the CM velocity identity:
/// d cm_approx/dt = avg_vg - t (avg_gamma_vg - avg_gamma * avg_vg).
struct VelocityTerms {
    double avg_vg = 0.0;
    double avg_gamma_vg = 0.0;
    double avg_gamma_avg_vg = 0.0;
};

/// Exciton population: integral of P_q(0)|e|^2 exp(-gamma_q t) over the zone
/// (trapezoidal on the uniform periodic grid; identical to the Parseval sum
/// of the site distribution).
double population(const wavepacket::Spec &spec, const ModelParams &params, double t);

/// Unnormalized first moment sum_n n P_n(t) over unwrapped site indices.
/// Throws WrapAroundError if the packet reaches the grid edge.
double first_moment(const wavepacket::Spec &spec, const ModelParams &params, double t);

/// Leading-dynamical-term CM: t <v_g>_t with the exp(-gamma_q t)-weighted
/// packet average. The exact counterpart is first_moment / population.
double cm_normalized(const wavepacket::Spec &spec, const ModelParams &params, double t);

/// (avg_vg, t * (avg_gamma_vg - avg_gamma * avg_vg)); their difference is the
/// exact time derivative of cm_normalized.
std::pair<double, double> cm_velocity_decomposition(const wavepacket::Spec &spec,
                                                    const ModelParams &params, double t);

/// <n^2>/P - (<n>/P)^2 - W^2/2 with P the instantaneous population and W
/// fixed so msd(0) = 0.
double msd(const wavepacket::Spec &spec, const ModelParams &params, double t);

struct TimeGrid {
    double dt = 0.05;
    double t_max = 100.0;
    std::vector<double> times() const;
};

/// One dynamics run. `cm`/`msd` are normalized by the instantaneous
/// population; `cm0`/`msd0` by the initial population, the variant in which
/// the decay of every component shows directly and the packet ultimately
/// contracts. W is the effective initial width (msd(0) = msd0(0) = 0).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> population;
    std::vector<double> cm;
    std::vector<double> cm_approx;
    std::vector<double> cm0;
    std::vector<double> msd;
    std::vector<double> msd0;
    std::vector<VelocityTerms> velocity_terms;
    double W = 0.0;
};

Trajectory simulate(const wavepacket::Spec &spec, const ModelParams &params,
                    const std::vector<double> &times);
Trajectory simulate(const wavepacket::Spec &spec, const ModelParams &params,
                    const TimeGrid &grid = {});

} // namespace mntc::moments
