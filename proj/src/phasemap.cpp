#include "mntc/phasemap.hpp"

#include <cmath>
#include <stdexcept>

#include "mntc/errors.hpp"
#include "mntc/spectrum.hpp"

namespace mntc::phasemap {

std::string to_string(Quadrant q) {
    switch (q) {
    case Quadrant::one: return "I";
    case Quadrant::two: return "II";
    case Quadrant::three: return "III";
    case Quadrant::four: return "IV";
    case Quadrant::boundary: return "B";
    }
    return "?";
}

PhaseCell classify(const ModelParams &params, double q, double gamma) {
    ModelParams local = params;
    local.gamma = gamma;

    const auto bp = spectrum::branch_point(local, q);
    PhaseCell cell;
    cell.q = q;
    cell.gamma = gamma;
    const double delta = bp.delta_k;
    cell.re_d2 = delta * delta - gamma * gamma + 4.0 * params.g * params.g;
    cell.im_d2 = 2.0 * delta * gamma;

    if (std::abs(cell.re_d2) < kBoundaryTol || std::abs(cell.im_d2) < kBoundaryTol) {
        cell.quadrant = Quadrant::boundary;
    } else if (cell.re_d2 > 0.0) {
        cell.quadrant = cell.im_d2 > 0.0 ? Quadrant::one : Quadrant::four;
    } else {
        cell.quadrant = cell.im_d2 > 0.0 ? Quadrant::two : Quadrant::three;
    }

    cell.gamma_up = bp.gamma_up;
    cell.gamma_lp = bp.gamma_lp;
    cell.vg_up = bp.vg_up;
    cell.vg_lp = bp.vg_lp;
    cell.re_eps_up = bp.eps_up.real();
    cell.re_eps_lp = bp.eps_lp.real();
    return cell;
}

ExceptionalPoint find_exceptional_point(const ModelParams &params, double spacing) {
    const double k_r = spectrum::resonance_wavevector(params);
    const double gamma_c = spectrum::critical_gamma(params);

    ModelParams at_ep = params;
    at_ep.gamma = gamma_c;

    ExceptionalPoint ep;
    ep.q = k_r;
    ep.gamma = gamma_c;
    ep.residual = std::abs(spectrum::rabi_splitting(at_ep, k_r));

    if (params.g > 0.0) {
        for (const auto &[dq, dg] : {std::pair{spacing, 0.0}, {-spacing, 0.0},
                                     {0.0, spacing}, {0.0, -spacing}}) {
            ModelParams neighbor = params;
            neighbor.gamma = std::max(gamma_c + dg, 0.0);
            const double r = std::abs(spectrum::rabi_splitting(neighbor, k_r + dq));
            if (!(r > 0.0))
                throw std::logic_error("exceptional point is not isolated at the given spacing");
        }
    }
    return ep;
}

std::vector<PhaseCell> sweep(const ModelParams &params, const std::vector<double> &q_grid,
                             const std::vector<double> &gamma_grid) {
    if (q_grid.empty()) throw ConfigError("grids.q", "must be non-empty");
    if (gamma_grid.empty()) throw ConfigError("grids.gamma", "must be non-empty");
    for (std::size_t i = 1; i < q_grid.size(); ++i)
        if (!(q_grid[i] > q_grid[i - 1])) throw ConfigError("grids.q", "must be increasing");
    for (std::size_t i = 1; i < gamma_grid.size(); ++i)
        if (!(gamma_grid[i] > gamma_grid[i - 1])) throw ConfigError("grids.gamma", "must be increasing");

    std::vector<PhaseCell> cells;
    cells.reserve(q_grid.size() * gamma_grid.size());
    for (double gamma : gamma_grid)
        for (double q : q_grid) cells.push_back(classify(params, q, gamma));
    return cells;
}

} // namespace mntc::phasemap
