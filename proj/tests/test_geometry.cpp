#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hxray/geometry.hpp"

using namespace hxray;

namespace {

// Independent oracle for geodesic points: hand substitution of chi into the
// Moebius expression, kept separate from the library path.
cplx oracle_point(double beta, double a, double chi) {
    const cplx i(0.0, 1.0);
    const cplx num = (2.0 + i * a) * chi + i * a;
    const cplx den = i * a * chi - 2.0 + i * a;
    return std::exp(i * beta) * num / den;
}

std::mt19937 rng(20240811);

Geodesic random_geodesic() {
    std::uniform_real_distribution<double> ub(0.0, kTwoPi), ua(-3.0, 3.0);
    return Geodesic{ub(rng), ua(rng)};
}

}  // namespace

TEST_CASE("disk point admission") {
    CHECK_NOTHROW(DiskPoint(cplx(0.3, 0.4)));
    CHECK_THROWS_AS(DiskPoint(cplx(1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(DiskPoint(cplx(0.8, 0.6001)), std::invalid_argument);
    DiskPoint p{cplx(0.0, 0.0)};
    CHECK(p.c() == doctest::Approx(0.5));
    CHECK(p.x() == doctest::Approx(1.0));
}

TEST_CASE("geodesic point: frozen values") {
    // (0,0,t=0) -> 0
    CHECK(std::abs(geodesic_point(Geodesic{0.0, 0.0}, 0.0)) < 1e-15);
    // (0,0,t->inf) -> -1
    CHECK(std::abs(geodesic_point(Geodesic{0.0, 0.0}, 60.0) - cplx(-1.0, 0.0)) < 1e-12);
    // (pi/2, 1, t=0): hand substitution chi=0 gives z = i * i/(i-2) = (2+i)/5.
    // Cross-checks: the independent oracle, and membership of the hyperbolic
    // geodesic from i to 1, the circle |z - (1+i)| = 1.
    const cplx z = geodesic_point(Geodesic{0.5 * kPi, 1.0}, 0.0);
    CHECK(std::abs(z - cplx(0.4, 0.2)) < 1e-14);
    CHECK(std::abs(z - oracle_point(0.5 * kPi, 1.0, 0.0)) < 1e-14);
    CHECK(std::abs(std::abs(z - cplx(1.0, 1.0)) - 1.0) < 1e-14);
}

TEST_CASE("geodesic point stays in the open disk and hits its endpoints") {
    for (int trial = 0; trial < 50; ++trial) {
        const Geodesic g = random_geodesic();
        for (double t : {-15.0, -2.0, -0.3, 0.0, 0.7, 3.0, 12.0})
            CHECK(std::abs(geodesic_point(g, t)) < 1.0);
        CHECK(std::abs(geodesic_point_chi(g, -1.0) - g.endpoint_backward()) < 1e-12);
        CHECK(std::abs(geodesic_point_chi(g, 1.0) - g.endpoint_forward()) < 1e-12);
    }
}

TEST_CASE("geodesic velocity: value, finite differences, unit speed") {
    // hand value -(0-1)(0+1)/(-1-1) = -1/2, fiber angle pi
    const cplx v0 = geodesic_velocity(Geodesic{0.0, 0.0}, 0.0);
    CHECK(std::abs(v0 - cplx(-0.5, 0.0)) < 1e-14);
    CHECK(angle_dist(std::arg(v0), kPi) < 1e-14);

    for (int trial = 0; trial < 30; ++trial) {
        const Geodesic g = random_geodesic();
        std::uniform_real_distribution<double> ut(-4.0, 4.0);
        const double t = ut(rng);
        // finite-difference oracle of geodesic_point
        const double h = 1e-5;
        const cplx fd = (geodesic_point(g, t + h) - geodesic_point(g, t - h)) / (2.0 * h);
        const cplx v = geodesic_velocity(g, t);
        CHECK(std::abs(v - fd) < 1e-8);
        // |zdot| = c(z)
        CHECK(std::abs(std::abs(v) / conf_factor(geodesic_point(g, t)) - 1.0) < 1e-12);
    }
}

TEST_CASE("antipodal scattering relation") {
    const Geodesic g1 = antipodal(Geodesic{0.0, 0.0});
    CHECK(angle_dist(g1.beta, kPi) < 1e-12);
    CHECK(g1.a == doctest::Approx(0.0));

    const Geodesic g2 = antipodal(Geodesic{0.0, 1.0});
    CHECK(angle_dist(g2.beta, 1.5 * kPi) < 1e-12);
    CHECK(g2.a == doctest::Approx(-1.0));

    for (int trial = 0; trial < 50; ++trial) {
        const Geodesic g = random_geodesic();
        const Geodesic gg = antipodal(antipodal(g));
        CHECK(angle_dist(gg.beta, g.beta) < 1e-10);
        CHECK(gg.a == doctest::Approx(g.a).epsilon(1e-10));
    }
}

TEST_CASE("antipodal geodesic is the same set, reversed") {
    const Geodesic g{1.1, 0.7};
    const Geodesic ag = antipodal(g);
    CHECK(std::abs(g.endpoint_backward() - ag.endpoint_forward()) < 1e-12);
    CHECK(std::abs(g.endpoint_forward() - ag.endpoint_backward()) < 1e-12);
}

TEST_CASE("first integrals at the origin and their algebra") {
    for (double th : {0.0, 0.9, 2.5, 5.0}) {
        const auto fi = first_integrals(PhasePoint(DiskPoint(cplx(0.0)), th));
        CHECK(std::abs(fi.xi_minus + unit_phase(th)) < 1e-14);
        CHECK(std::abs(fi.xi_plus - unit_phase(th)) < 1e-14);
        CHECK(std::abs(fi.w) < 1e-14);
        CHECK(std::abs(fi.xi - 0.5 * unit_phase(th)) < 1e-14);
    }

    std::uniform_real_distribution<double> ur(0.0, 0.95), uphi(0.0, kTwoPi);
    for (int trial = 0; trial < 100; ++trial) {
        const cplx z = ur(rng) * unit_phase(uphi(rng));
        const auto fi = first_integrals(PhasePoint(DiskPoint(z), uphi(rng)));
        CHECK(std::abs(std::abs(fi.xi_plus) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(fi.xi_minus) - 1.0) < 1e-12);
        CHECK(std::abs(std::norm(fi.w) + 4.0 * std::norm(fi.xi) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(fi.w * fi.w - 4.0 * fi.xi * fi.xi) - 1.0) < 1e-12);
    }
}

TEST_CASE("first integrals traced along geodesics match the closed form") {
    // The chart-to-geodesic map has condition number ~ 1/(1-|z|^2), which is
    // ~e^{|t|} along the flow, so the strict tolerance is only attainable in
    // doubles up to |t| ~ 13; beyond that the bound scales with x(z)^{-1}.
    for (int trial = 0; trial < 30; ++trial) {
        const Geodesic g = random_geodesic();
        const auto [w_ref, xi_ref] = trace_w_xi(g);
        for (double t : {-12.0, -5.0, 0.0, 1.3, 9.0, 11.5}) {
            const auto fi = first_integrals(geodesic_phase_point(g, t));
            CHECK(std::abs(fi.w - w_ref) < 1e-10);
            CHECK(std::abs(fi.xi - xi_ref) < 1e-10);
        }
        for (double t : {-20.0, -13.0, 16.0, 20.0}) {
            const PhasePoint p = geodesic_phase_point(g, t);
            const double tol = 1e-10 + 100.0 * 2.3e-16 / bdf_x(p.base.z());
            const auto fi = first_integrals(p);
            CHECK(std::abs(fi.w - w_ref) < tol);
            CHECK(std::abs(fi.xi - xi_ref) < tol);
        }
    }
}

TEST_CASE("projection to the geodesic manifold") {
    // diameters through the origin
    for (double th : {0.0, 1.0, 3.5}) {
        const auto gt = project_to_geodesic(PhasePoint(DiskPoint(cplx(0.0)), th));
        CHECK(angle_dist(gt.g.beta, th + kPi) < 1e-12);
        CHECK(std::abs(gt.g.a) < 1e-12);
        CHECK(std::abs(gt.t) < 1e-12);
    }

    // right inverse of (geodesic_point, arg geodesic_velocity)
    for (int trial = 0; trial < 200; ++trial) {
        const Geodesic g = random_geodesic();
        std::uniform_real_distribution<double> ut(-6.0, 6.0);
        const double t = ut(rng);
        const auto gt = project_to_geodesic(geodesic_phase_point(g, t));
        CHECK(angle_dist(gt.g.beta, g.beta) < 1e-10);
        CHECK(std::abs(gt.g.a - g.a) < 1e-9 * (1.0 + std::fabs(g.a)));
        CHECK(std::abs(gt.t - t) < 1e-9);
    }
}

TEST_CASE("projection oracle: dense search plus bisection at z=0.3, theta=0") {
    const PhasePoint p(DiskPoint(cplx(0.3, 0.0)), 0.0);
    const auto gt = project_to_geodesic(p);

    // oracle: the geodesic through the endpoints xi-(p), xi+(p); locate t by
    // dense search over the chord distance, then bisect on its derivative.
    const auto fi = first_integrals(p);
    Geodesic og;
    og.beta = std::arg(fi.xi_minus);
    double delta = std::arg(fi.xi_plus / fi.xi_minus);
    if (delta <= 0.0) delta += kTwoPi;
    og.a = std::tan(0.5 * (delta - kPi));

    auto dist = [&](double t) { return std::abs(geodesic_point(og, t) - cplx(0.3, 0.0)); };
    double best_t = 0.0, best = 1e9;
    for (double t = -20.0; t <= 20.0; t += 1e-3)
        if (dist(t) < best) best = dist(t), best_t = t;
    double lo = best_t - 2e-3, hi = best_t + 2e-3;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dist(mid - 1e-9) < dist(mid + 1e-9) ? hi : lo) = mid;
    }
    const double t_oracle = 0.5 * (lo + hi);

    CHECK(std::abs(gt.t - t_oracle) < 1e-6);
    CHECK(angle_dist(gt.g.beta, og.beta) < 1e-12);
    CHECK(gt.g.a == doctest::Approx(og.a));
    // and the round trip reproduces the phase point
    const cplx z = geodesic_point(gt.g, gt.t);
    CHECK(std::abs(z - cplx(0.3, 0.0)) < 1e-10);
    CHECK(angle_dist(std::arg(geodesic_velocity(gt.g, gt.t)), 0.0) < 1e-10);
}

TEST_CASE("geodesic vector field annihilates constants and first integrals") {
    auto zero_grad = [](const PhasePoint&) { return PhaseGradient{cplx(0.0), cplx(0.0), cplx(0.0)}; };
    CHECK(std::abs(apply_X(zero_grad, PhasePoint(DiskPoint(cplx(0.2, 0.1)), 0.4))) == 0.0);

    // pullback of a data function is flow invariant; finite-difference gradients
    auto data_fn = [](const Geodesic& g) {
        return std::exp(cplx(0.0, 1.0) * (2.0 * g.beta)) / (1.0 + g.a * g.a);
    };
    auto pullback = [&](cplx z, double th) {
        return data_fn(project_to_geodesic(PhasePoint(DiskPoint(z), th)).g);
    };
    auto fd_grad = [&](const PhasePoint& p) {
        const double h = 1e-6;
        const cplx z = p.base.z();
        PhaseGradient gr;
        gr.du1 = (pullback(z + h, p.theta) - pullback(z - h, p.theta)) / (2.0 * h);
        gr.du2 = (pullback(z + cplx(0.0, h), p.theta) - pullback(z - cplx(0.0, h), p.theta)) /
                 (2.0 * h);
        gr.dtheta = (pullback(z, p.theta + h) - pullback(z, p.theta - h)) / (2.0 * h);
        return gr;
    };
    std::uniform_real_distribution<double> ur(0.0, 0.8), uphi(0.0, kTwoPi);
    for (int trial = 0; trial < 20; ++trial) {
        const PhasePoint p(DiskPoint(ur(rng) * unit_phase(uphi(rng))), uphi(rng));
        CHECK(std::abs(apply_X(fd_grad, p)) < 1e-6);
    }
}
