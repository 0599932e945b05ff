#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mntc/model.hpp"

namespace mntc::phasemap {

/// Quadrants of the complex plane of Delta^2, counterclockwise from (+, +).
/// Cells with either component within 1e-12 of zero are `boundary`.
enum class Quadrant { one, two, three, four, boundary };

std::string to_string(Quadrant q);

inline constexpr double kBoundaryTol = 1e-12;

struct PhaseCell {
    double q = 0.0;
    double gamma = 0.0;
    double re_d2 = 0.0; ///< Re[Delta^2] = delta^2 - gamma^2 + 4 g^2
    double im_d2 = 0.0; ///< Im[Delta^2] = 2 delta gamma
    Quadrant quadrant = Quadrant::boundary;
    double gamma_up = 0.0, gamma_lp = 0.0;
    double vg_up = 0.0, vg_lp = 0.0; ///< NaN at the exceptional point
    double re_eps_up = 0.0, re_eps_lp = 0.0;
};

/// Spectral payload plus the analytic quadrant data at (q, gamma); gamma
/// overrides params.gamma.
PhaseCell classify(const ModelParams &params, double q, double gamma);

struct ExceptionalPoint {
    double q = 0.0;     ///< resonance wavevector
    double gamma = 0.0; ///< critical loss rate 2g
    double residual = 0.0; ///< |Delta| evaluated there
};

/// (k_r, 2g) with the |Delta| residual; throws NoResonanceError. Neighboring
/// grid offsets of `spacing` are checked to carry |Delta| > 0.
ExceptionalPoint find_exceptional_point(const ModelParams &params, double spacing = 1e-3);

/// Row-major (gamma outer, q inner) grid of classify() cells.
std::vector<PhaseCell> sweep(const ModelParams &params, const std::vector<double> &q_grid,
                             const std::vector<double> &gamma_grid);

} // namespace mntc::phasemap
