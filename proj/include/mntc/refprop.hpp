#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "mntc/model.hpp"

namespace mntc::refprop {

using Complex = std::complex<double>;
using Vec2 = std::pair<Complex, Complex>;

/// Closed-form exp(-i H_q t) applied to (molecular, photonic) amplitudes.
/// Uniformly stable through the exceptional point, where it reduces to the
/// defective-matrix limit exp(-i H t) = e^{-i mu t} (I - i t (H - mu I)),
/// mu = trace/2.
Vec2 propagate_2x2(const ModelParams &params, double q, const Vec2 &initial, double t);

/// Fixed-step 4th-order integration of i dv/dt = H_q v; the independent check
/// on the closed form.
Vec2 propagate_2x2_rk4(const ModelParams &params, double q, const Vec2 &initial, double t,
                       double dt = 1e-3);

/// Same, with the step halved until two successive results differ by less
/// than `tol` in max norm.
Vec2 propagate_2x2_rk4_adaptive(const ModelParams &params, double q, const Vec2 &initial, double t,
                                double tol = 1e-10);

/// Full-lattice state: molecular amplitudes over sites n = -N/2 .. N/2-1
/// (index n + N/2), photonic amplitudes over modes q_j = 2 pi j / N
/// (index j + N/2).
struct LatticeState {
    std::vector<Complex> mol_amps;
    std::vector<Complex> phot_amps;
    double t = 0.0;
};

/// Branch-projected Gaussian packet as a lattice state (site-basis molecular
/// sector), matching the k-space construction used by the dynamics pipeline.
LatticeState make_packet_state(const ModelParams &params, double p, double w, Branch branch);

/// Propagates the block Hamiltonian: molecular sector is transformed to the
/// Bloch basis, each (mol_k, phot_k) pair is advanced with the closed-form
/// 2x2 propagator, and the molecular sector is transformed back.
LatticeState propagate_lattice(const ModelParams &params, const LatticeState &initial, double t);

struct OracleMoments {
    double population = 0.0; ///< sum_n |psi_n|^2 over the molecular sector
    double n_mean = 0.0;     ///< population-normalized first moment
    double n2_mean = 0.0;    ///< population-normalized second moment
};

/// Direct sums over unwrapped site indices. Throws WrapAroundError when the
/// relative population on the outermost sites exceeds 1e-8.
OracleMoments oracle_moments(const LatticeState &state);

} // namespace mntc::refprop
