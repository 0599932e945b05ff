#pragma once

#include <complex>
#include <vector>

#include "mntc/model.hpp"
#include "mntc/spectrum.hpp"

namespace mntc::wavepacket {

using Complex = std::complex<double>;

/// Branch-projected Gaussian packet in k-space: amplitude
/// sqrt(w/sqrt(pi)) exp(-w^2 (q-p)^2 / 2), unit continuum norm.
/// Larger w = narrower in k, wider in real space.
struct Spec {
    double p = 0.5;             ///< center momentum, in (-pi, pi)
    double w = 10.0;            ///< inverse k-width parameter
    Branch branch = Branch::up; ///< projected polariton branch
};

/// Throws ConfigError when w <= 0, p outside (-pi, pi), the Gaussian tail
/// outside [-pi, pi] exceeds 1e-10, or the grid norm misses 1 by more
/// than 1e-8 (packet too narrow for the n_modes grid).
void validate(const Spec &spec, const ModelParams &params);

/// Continuum initial amplitude psi(q), real and positive.
double initial_amplitude(const Spec &spec, double q);

/// Grid amplitude: continuum amplitude times sqrt(2 pi / N). This single
/// factor reconciles the continuum-integral and grid-sum pictures; with it,
/// sum_j |amp_j|^2 = 1 and Parseval holds site-side with no further measure.
Complex grid_amplitude(const Spec &spec, const ModelParams &params, double q);

struct KState {
    double q = 0.0;
    Complex amp_mol, amp_phot;
    double t = 0.0;
};

/// psi(q) e_{q,b} exp(-i eps_{q,b} t) on the molecular component and the
/// matching photonic component (branch eigenvector scaled by psi(q)).
/// Continuum normalization. Throws ExceptionalPointError through `spectrum`.
KState evolve_k(const Spec &spec, const ModelParams &params, double q, double t);

/// Continuum k-space density P_q(0) |e|^2 exp(-gamma_q t).
double k_population(const Spec &spec, const ModelParams &params, double q, double t);

/// Per-mode spectral data tabulated on the q_j = 2 pi j / N grid, shared by
/// the dynamics and moment pipelines.
struct GridTable {
    std::vector<double> q;       ///< q_j, j = -N/2 .. N/2-1
    double dq = 0.0;             ///< 2 pi / N
    std::vector<Complex> amp0;   ///< grid amplitude x Hopfield e (molecular, t = 0)
    std::vector<Complex> eps;    ///< branch eigenvalue
    std::vector<double> rate;    ///< branch relaxation rate
    std::vector<double> vg;      ///< branch group velocity
    std::vector<double> weight0; ///< |amp0|^2 = P_q(0) |e|^2 dq
};

GridTable build_table(const Spec &spec, const ModelParams &params);

/// Site probabilities P_n(t), n = -N/2 .. N/2-1 at index n + N/2, from the
/// discrete transform of the evolved k-space amplitudes. Sums to the k-space
/// population (Parseval).
std::vector<double> real_space_distribution(const Spec &spec, const ModelParams &params, double t);
std::vector<double> real_space_distribution(const GridTable &table, double t);

} // namespace mntc::wavepacket
