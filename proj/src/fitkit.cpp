#include "mntc/fitkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mntc/errors.hpp"

namespace mntc::fitkit {

namespace {

/// g(x) = x - 1 + e^{-x}, series below x = 1e-2 to dodge the cancellation.
double crossover_shape(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return x2 * (0.5 - x / 6.0 + x2 / 24.0 - x2 * x / 120.0 + x2 * x2 / 720.0);
    }
    return x - 1.0 + std::exp(-x);
}

struct Objective {
    const std::vector<double> &t;
    const std::vector<double> &y;

    // Mean squared residual and its gradient in (log alpha, log tau).
    double eval(double la, double lt, double grad[2]) const {
        const double alpha = std::exp(la);
        const double tau = std::exp(lt);
        double ss = 0.0;
        grad[0] = grad[1] = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double x = t[i] / tau;
            const double f = alpha * alpha * tau * tau * crossover_shape(x);
            const double r = f - y[i];
            const double df_dla = 2.0 * f;
            const double df_dlt = 2.0 * f - alpha * alpha * tau * t[i] * (-std::expm1(-x));
            ss += r * r;
            grad[0] += 2.0 * r * df_dla;
            grad[1] += 2.0 * r * df_dlt;
        }
        const double n = static_cast<double>(t.size());
        grad[0] /= n;
        grad[1] /= n;
        return ss / n;
    }

    // Gauss-Newton normal equations (scaled J^T J, J^T r) in log parameters.
    void normal_equations(double la, double lt, double jtj[3], double jtr[2]) const {
        const double alpha = std::exp(la);
        const double tau = std::exp(lt);
        jtj[0] = jtj[1] = jtj[2] = 0.0;
        jtr[0] = jtr[1] = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double x = t[i] / tau;
            const double f = alpha * alpha * tau * tau * crossover_shape(x);
            const double r = y[i] - f;
            const double j0 = 2.0 * f;
            const double j1 = 2.0 * f - alpha * alpha * tau * t[i] * (-std::expm1(-x));
            jtj[0] += j0 * j0;
            jtj[1] += j0 * j1;
            jtj[2] += j1 * j1;
            jtr[0] += j0 * r;
            jtr[1] += j1 * r;
        }
    }
};

struct StartPoint {
    double alpha, tau;
};

} // namespace

double crossover_model(double alpha, double tau, double t) {
    if (tau < 0.0 || t < 0.0) throw std::invalid_argument("crossover_model: tau, t must be >= 0");
    if (tau == 0.0) return 0.0;
    return alpha * alpha * tau * tau * crossover_shape(t / tau);
}

std::pair<double, double> crossover_jacobian(double alpha, double tau, double t) {
    if (!(tau > 0.0) || t < 0.0) throw std::invalid_argument("crossover_jacobian: tau > 0, t >= 0");
    const double x = t / tau;
    const double g = crossover_shape(x);
    const double df_da = 2.0 * alpha * tau * tau * g;
    const double df_dtau = alpha * alpha * (2.0 * tau * g - t * (-std::expm1(-x)));
    return {df_da, df_dtau};
}

FitResult fit_crossover(const std::vector<double> &t, const std::vector<double> &msd,
                        const FitOptions &options) {
    if (t.size() != msd.size()) throw std::invalid_argument("fit_crossover: size mismatch");
    if (t.size() < 10) throw DegenerateDataError("fit_crossover: need at least 10 points");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("fit_crossover: t must be increasing");

    double ymax = 0.0;
    for (double v : msd) ymax = std::max(ymax, std::abs(v));
    if (ymax == 0.0) throw DegenerateDataError("fit_crossover: msd identically zero");

    const double t_max = t.back();

    // alpha0 from the early-time quadratic coefficient msd ~ alpha^2 t^2 / 2.
    double quad = 0.0;
    int quad_n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= 0.0 || t[i] > t_max / 10.0) continue;
        if (msd[i] > 0.0) {
            quad += msd[i] / (t[i] * t[i]);
            ++quad_n;
        }
    }
    const double alpha0 = quad_n > 0 ? std::sqrt(2.0 * quad / quad_n) : std::sqrt(ymax) / t_max;

    std::vector<StartPoint> starts = {{alpha0, t_max / 100.0}, {alpha0, t_max / 10.0}, {alpha0, t_max / 3.0}};
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 2; ++k) {
        const double tau = t_max / 100.0 * std::pow(100.0, unit(rng));
        const double alpha = alpha0 * std::pow(10.0, 2.0 * unit(rng) - 1.0);
        starts.push_back({alpha, tau});
    }

    const Objective obj{t, msd};
    FitResult best;
    double best_ss = std::numeric_limits<double>::infinity();
    bool any_converged = false;

    for (const StartPoint &start : starts) {
        double la = std::log(std::max(start.alpha, 1e-300));
        double lt = std::log(std::max(start.tau, 1e-300));
        double grad[2];
        double ss = obj.eval(la, lt, grad);
        double lambda = 1e-3;
        int iter = 0;
        bool converged = false;

        for (; iter < options.max_iterations; ++iter) {
            if (std::hypot(grad[0], grad[1]) < options.gradient_tol) {
                converged = true;
                break;
            }
            double jtj[3], jtr[2];
            obj.normal_equations(la, lt, jtj, jtr);

            // Column-scaled solve; a direction whose column collapses (tau far
            // beyond the data window) is frozen instead of producing a wild
            // step out of a nearly singular system.
            const double s0 = std::sqrt(jtj[0]);
            const double s1 = std::sqrt(jtj[2]);
            const double s_max = std::max(s0, s1);
            const bool keep0 = s0 > 1e-12 * s_max;
            const bool keep1 = s1 > 1e-12 * s_max;

            bool stepped = false;
            for (int tries = 0; tries < 40 && !stepped; ++tries) {
                double step0 = 0.0, step1 = 0.0;
                if (keep0 && keep1) {
                    const double a = 1.0 + lambda;
                    const double b = jtj[1] / (s0 * s1);
                    const double det = a * a - b * b;
                    if (!(std::abs(det) > 0.0)) {
                        lambda *= 10.0;
                        continue;
                    }
                    const double r0 = jtr[0] / s0;
                    const double r1 = jtr[1] / s1;
                    step0 = (a * r0 - b * r1) / det / s0;
                    step1 = (a * r1 - b * r0) / det / s1;
                } else if (keep0) {
                    step0 = jtr[0] / (jtj[0] * (1.0 + lambda));
                } else if (keep1) {
                    step1 = jtr[1] / (jtj[2] * (1.0 + lambda));
                } else {
                    break;
                }
                step0 = std::clamp(step0, -20.0, 20.0);
                step1 = std::clamp(step1, -20.0, 20.0);
                const double la_new = std::clamp(la + step0, -300.0, 300.0);
                const double lt_new = std::clamp(lt + step1, -300.0, 300.0);
                double grad_new[2];
                const double ss_new = obj.eval(la_new, lt_new, grad_new);
                if (ss_new < ss || (ss_new == ss && std::hypot(grad_new[0], grad_new[1]) <
                                                        std::hypot(grad[0], grad[1]))) {
                    la = la_new;
                    lt = lt_new;
                    ss = ss_new;
                    grad[0] = grad_new[0];
                    grad[1] = grad_new[1];
                    lambda = std::max(lambda * 0.1, 1e-12);
                    stepped = true;
                } else {
                    lambda *= 10.0;
                }
            }
            if (!stepped) {
                converged = std::hypot(grad[0], grad[1]) < options.gradient_tol;
                break;
            }
        }

        if (converged) any_converged = true;
        if (converged && ss < best_ss) {
            best_ss = ss;
            best.alpha = std::exp(la);
            best.tau = std::exp(lt);
            best.residual_rms = std::sqrt(ss);
            best.iterations = iter;
            best.converged = true;
            best.window = {t.front(), t.back()};
        }
    }

    if (!any_converged)
        throw NonConvergenceError("fit_crossover: no start reached the gradient tolerance");
    return best;
}

PowerLawFit fit_powerlaw(const std::vector<double> &t, const std::vector<double> &msd,
                         std::pair<double, double> window) {
    if (t.size() != msd.size()) throw std::invalid_argument("fit_powerlaw: size mismatch");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < window.first || t[i] > window.second) continue;
        if (!(t[i] > 0.0) || !(msd[i] > 0.0))
            throw DegenerateDataError("fit_powerlaw: non-positive data inside window");
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(msd[i]));
    }
    if (lx.size() < 3) throw DegenerateDataError("fit_powerlaw: fewer than 3 points in window");

    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    if (!(vxx > 0.0)) throw DegenerateDataError("fit_powerlaw: degenerate time window");

    PowerLawFit fit;
    fit.beta = vxy / vxx;
    fit.prefactor = std::exp((sy - fit.beta * sx) / n);
    fit.window = window;
    fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return fit;
}

} // namespace mntc::fitkit
