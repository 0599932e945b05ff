#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <iostream>
#include <vector>

#include "mntc/errors.hpp"
#include "mntc/moments.hpp"
#include "mntc/refprop.hpp"
#include "mntc/spectrum.hpp"

using namespace mntc;

namespace {
const ModelParams kDefaults{};
const wavepacket::Spec kUp{0.5, 10.0, Branch::up};
const wavepacket::Spec kLp{0.03, 1.6, Branch::lp};

ModelParams small_grid(double gamma, int n = 512) {
    ModelParams p = kDefaults;
    p.gamma = gamma;
    p.n_modes = n;
    return p;
}
} // namespace

TEST_CASE("population basics") {
    // gamma = 0: conserved
    const ModelParams lossless = small_grid(0.0);
    const double p0 = moments::population(kUp, lossless, 0.0);
    CHECK(moments::population(kUp, lossless, 40.0) == doctest::Approx(p0).epsilon(1e-12));

    // resonance-centered lossless narrow packet: half weight on each branch
    ModelParams p = small_grid(0.0);
    const double k_r = spectrum::resonance_wavevector(p);
    const wavepacket::Spec at_res{k_r, 15.0, Branch::up};
    CHECK(moments::population(at_res, p, 0.0) == doctest::Approx(0.5).epsilon(2e-2));

    // matches the brute-force lattice propagator
    ModelParams lossy = small_grid(0.67);
    const auto state0 = refprop::make_packet_state(lossy, kUp.p, kUp.w, kUp.branch);
    const auto state5 = refprop::propagate_lattice(lossy, state0, 5.0);
    const auto oracle = refprop::oracle_moments(state5);
    CHECK(moments::population(kUp, lossy, 5.0) ==
          doctest::Approx(oracle.population).epsilon(1e-8));
}

TEST_CASE("population equals the Parseval site sum at every sampled t") {
    const ModelParams p = small_grid(0.3);
    const auto table = wavepacket::build_table(kUp, p);
    for (double t : {0.0, 0.5, 2.0, 7.0, 19.0}) {
        const auto dist = wavepacket::real_space_distribution(table, t);
        double sum = 0.0;
        for (double v : dist) sum += v;
        CHECK(moments::population(kUp, p, t) == doctest::Approx(sum).epsilon(1e-8));
    }
}

TEST_CASE("first moment") {
    // Hermitian case: packet starts centered at the origin
    const ModelParams lossless = small_grid(0.0);
    CHECK(std::abs(moments::first_moment(kUp, lossless, 0.0)) < 1e-8);

    // gamma = 0, short times: normalized CM moves at the packet's group velocity
    const double vg = spectrum::group_velocity(lossless, kUp.p).first;
    for (double t : {2.0, 5.0}) {
        const double nbar = moments::first_moment(kUp, lossless, t) /
                            moments::population(kUp, lossless, t);
        CHECK(nbar == doctest::Approx(vg * t).epsilon(2e-2));
    }

    // backward propagation beyond the critical loss rate
    const ModelParams lossy = small_grid(1.0);
    const double h = 0.25;
    const double n1 = moments::first_moment(kUp, lossy, 5.0 - h) / moments::population(kUp, lossy, 5.0 - h);
    const double n2 = moments::first_moment(kUp, lossy, 5.0 + h) / moments::population(kUp, lossy, 5.0 + h);
    CHECK(n2 < n1);
}

TEST_CASE("cm_normalized (leading dynamical term)") {
    CHECK(moments::cm_normalized(kUp, kDefaults, 0.0) == 0.0);

    const ModelParams lossless = small_grid(0.0);
    const double vg = spectrum::group_velocity(lossless, kUp.p).first;
    CHECK(moments::cm_normalized(kUp, lossless, 5.0) == doctest::Approx(vg * 5.0).epsilon(2e-2));
}

TEST_CASE("cm approximation tracks the exact normalized first moment") {
    // gamma = 0.1, p = 0.5: leading-term validity window t <= 20. The exact
    // CM carries a small static offset from the k-dependent Hopfield phase;
    // compare shapes sup-normalized and report the measured deviation.
    const ModelParams p = small_grid(0.1, 1024);
    double sup_exact = 0.0, sup_dev = 0.0;
    for (double t = 0.0; t <= 20.0; t += 0.5) {
        const double exact = moments::first_moment(kUp, p, t) / moments::population(kUp, p, t);
        const double approx = moments::cm_normalized(kUp, p, t);
        sup_exact = std::max(sup_exact, std::abs(exact));
        sup_dev = std::max(sup_dev, std::abs(exact - approx));
    }
    const double rel = sup_dev / sup_exact;
    std::cout << "[moments] leading-term vs exact CM deviation (gamma=0.1, p=0.5, t<=20): "
              << rel * 100.0 << "%\n";
    CHECK(rel < 0.05);
}

TEST_CASE("velocity decomposition") {
    // no decay weighting: correlation term vanishes
    const ModelParams lossless = small_grid(0.0);
    const auto [v0, corr0] = moments::cm_velocity_decomposition(kUp, lossless, 13.0);
    CHECK(corr0 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v0 == doctest::Approx(spectrum::group_velocity(lossless, kUp.p).first).epsilon(2e-2));

    // derivative identity: d(cm_approx)/dt = avg_vg - corr, against central
    // differences, at t = 0 and at the LP contraction case t = 20
    struct Case {
        wavepacket::Spec spec;
        ModelParams params;
        double t;
    };
    const std::vector<Case> cases = {{kUp, small_grid(0.1), 0.001},
                                     {kLp, small_grid(0.05), 20.0}};
    for (const auto &c : cases) {
        const double h = 1e-3;
        const double up = moments::cm_normalized(c.spec, c.params, c.t + h);
        const double dn = moments::cm_normalized(c.spec, c.params, c.t - h);
        const double fd = (up - dn) / (2.0 * h);
        const auto [avg, corr] = moments::cm_velocity_decomposition(c.spec, c.params, c.t);
        CHECK(avg - corr == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("msd basics") {
    // W convention pins msd(0) = 0
    CHECK(std::abs(moments::msd(kUp, small_grid(0.1), 0.0)) < 1e-8);
    CHECK(std::abs(moments::msd(kLp, small_grid(0.05), 0.0)) < 1e-8);

    // ballistic limit: gamma = 0, msd grows as t^2
    const ModelParams lossless = small_grid(0.0);
    const double m1 = moments::msd(kUp, lossless, 1.0);
    const double m2 = moments::msd(kUp, lossless, 2.0);
    const double m4 = moments::msd(kUp, lossless, 4.0);
    CHECK(m2 / m1 == doctest::Approx(4.0).epsilon(2e-2));
    CHECK(m4 / m2 == doctest::Approx(4.0).epsilon(5e-2));
}

TEST_CASE("LP packet: three-phase initial-normalized msd, contraction") {
    // ballistic rise, overshoot, then contraction once decay dominates; the
    // instantaneous-population-normalized msd is monotone here, the decay of
    // the packet shows in the msd0 column.
    const ModelParams p = small_grid(0.05, 1024);
    moments::TimeGrid grid;
    grid.dt = 0.25;
    grid.t_max = 120.0;
    const auto traj = moments::simulate(kLp, p, grid);

    std::size_t peak = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        if (traj.msd0[i] > traj.msd0[peak]) peak = i;
    CHECK(peak > 0);
    CHECK(peak + 1 < traj.times.size());
    CHECK(traj.msd0.back() < 0.5 * traj.msd0[peak]);

    // cm0 shows the same rise-then-contract shape
    std::size_t cm_peak = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        if (traj.cm0[i] > traj.cm0[cm_peak]) cm_peak = i;
    CHECK(cm_peak > 0);
    CHECK(cm_peak + 1 < traj.times.size());
    CHECK(traj.cm0.back() < 0.5 * traj.cm0[cm_peak]);
}

TEST_CASE("LP population: initial decay rate grows linearly with the loss rate") {
    // log-linear fit of the population over an early window
    auto initial_rate = [](double gamma) {
        const ModelParams p = small_grid(gamma, 1024);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double t = 0.0; t <= 5.0; t += 0.25) {
            const double y = std::log(moments::population(kLp, p, t));
            sx += t;
            sy += y;
            sxx += t * t;
            sxy += t * y;
            ++n;
        }
        return -(sxy - sx * sy / n) / (sxx - sx * sx / n);
    };
    const double r1 = initial_rate(0.01);
    const double r5 = initial_rate(0.05);
    const double r7 = initial_rate(0.07);
    CHECK(r1 < r5);
    CHECK(r5 < r7);
    // approximately proportional to gamma
    CHECK(r5 / r1 == doctest::Approx(5.0).epsilon(0.15));
    CHECK(r7 / r5 == doctest::Approx(1.4).epsilon(0.15));
}

TEST_CASE("LP ballistic window scales as t^2 at weak loss") {
    const ModelParams p = small_grid(0.01, 1024);
    moments::TimeGrid grid;
    grid.dt = 0.25;
    grid.t_max = 10.0;
    const auto traj = moments::simulate(kLp, p, grid);
    double beta;
    {
        // log-log slope over the early window [0.5, 5]
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            if (t < 0.5 || t > 5.0) continue;
            sx += std::log(t);
            sy += std::log(traj.msd0[i]);
            sxx += std::log(t) * std::log(t);
            sxy += std::log(t) * std::log(traj.msd0[i]);
            ++n;
        }
        beta = (sxy - sx * sy / n) / (sxx - sx * sx / n);
    }
    CHECK(beta == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("doubling the mode count leaves the moments unchanged") {
    const ModelParams coarse = small_grid(0.1, 2000);
    const ModelParams fine = small_grid(0.1, 4000);
    for (double t : {1.0, 10.0, 50.0}) {
        const double p2 = moments::population(kUp, coarse, t);
        const double p4 = moments::population(kUp, fine, t);
        CHECK(std::abs(p2 - p4) / p4 < 1e-6);
        const double c2 = moments::first_moment(kUp, coarse, t) / p2;
        const double c4 = moments::first_moment(kUp, fine, t) / p4;
        CHECK(std::abs(c2 - c4) / std::max(1.0, std::abs(c4)) < 1e-6);
        const double m2 = moments::msd(kUp, coarse, t);
        const double m4 = moments::msd(kUp, fine, t);
        CHECK(std::abs(m2 - m4) / std::max(1.0, std::abs(m4)) < 1e-6);
    }
}

TEST_CASE("trajectory assembly") {
    const ModelParams p = small_grid(0.1);
    moments::TimeGrid grid;
    grid.dt = 0.5;
    grid.t_max = 10.0;
    const auto traj = moments::simulate(kUp, p, grid);
    REQUIRE(traj.times.size() == 21);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(traj.msd[0]) < 1e-8);
    CHECK(std::abs(traj.msd0[0]) < 1e-8);
    CHECK(traj.W == doctest::Approx(kUp.w).epsilon(2e-2));

    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        CHECK(traj.population[i] > 0.0);
        CHECK(traj.population[i] <= 1.0 + 1e-12);
        if (i > 0) CHECK(traj.population[i] <= traj.population[i - 1] + 1e-15);
        // spot-check columns against the one-shot operations
        if (i == 7) {
            const double t = traj.times[i];
            CHECK(traj.population[i] == doctest::Approx(moments::population(kUp, p, t)).epsilon(1e-12));
            CHECK(traj.cm_approx[i] == doctest::Approx(moments::cm_normalized(kUp, p, t)).epsilon(1e-12));
            CHECK(traj.msd[i] == doctest::Approx(moments::msd(kUp, p, t)).epsilon(1e-10));
        }
    }

    CHECK_THROWS_AS(moments::simulate(kUp, p, std::vector<double>{0.0, 1.0, 1.0}), ConfigError);
}

TEST_CASE("moments against the lattice oracle over a full run") {
    const ModelParams p = small_grid(0.1, 512);
    const auto state0 = refprop::make_packet_state(p, kUp.p, kUp.w, kUp.branch);
    const auto om0 = refprop::oracle_moments(state0);
    const double var0 = om0.n2_mean - om0.n_mean * om0.n_mean;

    for (double t : {1.0, 10.0, 40.0}) {
        const auto lattice = refprop::propagate_lattice(p, state0, t);
        const auto om = refprop::oracle_moments(lattice);
        const double pop = moments::population(kUp, p, t);
        const double cm = moments::first_moment(kUp, p, t) / pop;
        CHECK(std::abs(pop - om.population) / om.population < 1e-6);
        CHECK(std::abs(cm - om.n_mean) / std::max(1.0, std::abs(om.n_mean)) < 1e-6);

        const double msd_oracle = (om.n2_mean - om.n_mean * om.n_mean) - var0;
        const double msd_t = moments::msd(kUp, p, t);
        CHECK(std::abs(msd_t - msd_oracle) / std::max(1.0, std::abs(msd_oracle)) < 1e-6);
    }
}

TEST_CASE("wraparound aborts the run") {
    ModelParams p = small_grid(0.0, 64);
    // strongly moving packet on a tiny lattice eventually hits the edge
    const wavepacket::Spec spec{0.5, 4.0, Branch::up};
    CHECK_THROWS_AS(moments::first_moment(spec, p, 400.0), WrapAroundError);
}
