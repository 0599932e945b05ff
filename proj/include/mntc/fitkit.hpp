#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mntc::fitkit {

/// Ballistic-to-diffusive crossover: f(t) = alpha^2 tau^2 (t/tau - 1 + e^{-t/tau}).
/// f ~ alpha^2 t^2 / 2 for t << tau, f ~ alpha^2 tau t - alpha^2 tau^2 for t >> tau.
/// tau = 0 is the pointwise limit f = 0.
double crossover_model(double alpha, double tau, double t);

/// d f / d (alpha, tau) at fixed t.
std::pair<double, double> crossover_jacobian(double alpha, double tau, double t);

struct FitResult {
    double alpha = 0.0;
    double tau = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;
    bool converged = false;
    std::pair<double, double> window{0.0, 0.0};
};

struct FitOptions {
    std::uint64_t seed = 0;   ///< seeds the two random log-uniform starts
    int max_iterations = 500; ///< per start
    double gradient_tol = 1e-8;
};

/// Damped Gauss-Newton in (log alpha, log tau) with analytic Jacobian,
/// multi-started from three deterministic tau guesses plus two seeded random
/// draws. Throws DegenerateDataError (msd identically zero, or too few
/// points) and NonConvergenceError (no start reached the gradient tolerance).
FitResult fit_crossover(const std::vector<double> &t, const std::vector<double> &msd,
                        const FitOptions &options = {});

struct PowerLawFit {
    double beta = 0.0;
    double prefactor = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    double r_squared = 0.0;
};

/// log-log linear regression of msd on t restricted to the window.
/// Throws DegenerateDataError with fewer than 3 usable points or
/// non-positive data in the window.
PowerLawFit fit_powerlaw(const std::vector<double> &t, const std::vector<double> &msd,
                         std::pair<double, double> window);

} // namespace mntc::fitkit
