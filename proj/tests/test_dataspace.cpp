#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hxray/dataspace.hpp"

using namespace hxray;

namespace {

std::mt19937 rng(90210);

ScalarField cutoff_bump(cplx center, double width, cplx amp) {
    ScalarField f;
    f.evaluator = [=](cplx z) {
        const double u = std::norm(z) / (0.9 * 0.9);
        if (u >= 1.0) return cplx(0.0);
        return amp * std::exp(-0.05 * u / (1.0 - u)) *
               std::exp(-std::norm(z - center) / (2.0 * width * width));
    };
    f.decay_delta = 2.0;
    return f;
}

// Chebyshev-U oracle: p_n^0 should equal U_n / pi up to sign convention.
double chebyshev_u(int n, double x) {
    double u0 = 1.0, u1 = 2.0 * x;
    if (n == 0) return u0;
    for (int j = 2; j <= n; ++j) {
        const double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

}  // namespace

TEST_CASE("jacobi basis polynomials: normalization and parity") {
    CHECK(jacobi_p(0, 0.37) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
    CHECK(std::fabs(jacobi_p(1, 0.0)) < 1e-15);

    // numerical-integration oracle for the normalization
    std::vector<double> xs, ws;
    gauss_chebyshev2(64, xs, ws);
    for (int n = 0; n <= 10; ++n)
        for (int m = n; m <= 10; ++m) {
            double s = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                s += ws[i] * jacobi_p(n, xs[i]) * jacobi_p(m, xs[i]);
            CHECK(std::fabs(s - (n == m ? 1.0 / kTwoPi : 0.0)) < 1e-13);
        }

    // independent closed form: scalar multiple of Chebyshev U_n
    for (int n = 0; n <= 8; ++n)
        for (double x : {-0.7, 0.1, 0.62})
            CHECK(jacobi_p(n, x) == doctest::Approx(chebyshev_u(n, x) / kPi).epsilon(1e-11));
}

TEST_CASE("geodesic grid carries the right measure") {
    const GeodesicGrid grid(64, 96);
    CHECK(std::fabs(grid.mu4_integral() - kPi * kPi) < 1e-10);
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        total += grid.weight(i) / std::pow(1.0 + grid.node(i).a * grid.node(i).a, 2.0);
    CHECK(std::fabs(total - kPi * kPi) < 1e-10);
}

TEST_CASE("psi basis values and symmetries") {
    const Geodesic g{1.1, 0.8};
    CHECK(std::abs(psi(BasisIndex{0, 0}, g) - 1.0 / (kPi * (1.0 + g.a * g.a))) < 1e-14);

    for (int n : {0, 1, 3})
        for (int k : {-2, 0, 1, 4})
            CHECK(std::abs(std::conj(psi(BasisIndex{n, k}, g)) - psi(BasisIndex{n, n - k}, g)) <
                  1e-14);
}

TEST_CASE("psi family is orthonormal on the default grid") {
    auto grid = make_grid(64, 96);
    std::vector<Sinogram> fams;
    std::vector<BasisIndex> idx;
    for (int n = 0; n <= 5; ++n)
        for (int k = -2; k <= n + 2; ++k) idx.push_back(BasisIndex{n, k});
    for (const auto& b : idx) fams.push_back(psi_on_grid(b, grid));
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i; j < fams.size(); ++j) {
            const cplx v = inner_product(fams[i], fams[j]);
            const double expect =
                (idx[i].n == idx[j].n && idx[i].k == idx[j].k) ? 1.0 : 0.0;
            CHECK(std::abs(v - expect) < 1e-10);
        }
}

TEST_CASE("grid mismatch is refused") {
    auto g1 = make_grid(32, 40);
    auto g2 = make_grid(32, 48);
    const Sinogram h1 = Sinogram::zeros(g1);
    const Sinogram h2 = Sinogram::zeros(g2);
    CHECK_THROWS_AS(inner_product(h1, h2), GridMismatch);
}

TEST_CASE("norm law and orthogonality of the I_{p,2q} family") {
    auto grid = make_grid(64, 96);
    // spot value ||I_{0,2}||^2 = 4 pi^2 / 9
    CHECK(ipq_norm_sq(0, 2) == doctest::Approx(4.0 * kPi * kPi / 9.0).epsilon(1e-13));
    for (int q = 1; q <= 3; ++q)
        for (int p = 0; p <= 4; ++p) {
            const Sinogram s = ipq_on_grid(p, 2 * q, grid);
            const double grid_norm = std::norm(inner_product(s, s));
            const double expect = ipq_norm_sq(p, 2 * q);
            CHECK(std::abs(inner_product(s, s).real() - expect) < 1e-6 * expect);
        }
    // orthogonality between distinct indices
    const Sinogram a = ipq_on_grid(0, 2, grid);
    const Sinogram b = ipq_on_grid(1, 2, grid);
    const Sinogram c = ipq_on_grid(0, 4, grid);
    CHECK(std::abs(inner_product(a, b)) < 1e-8);
    CHECK(std::abs(inner_product(a, c)) < 1e-8);
    CHECK(std::abs(inner_product(b, c)) < 1e-8);
}

TEST_CASE("scalar range is orthogonal to the I_{p,2q} blocks") {
    auto grid = make_grid(64, 96);
    const ScalarField f = cutoff_bump(cplx(0.2, -0.1), 0.25, cplx(1.0, 0.3));
    QuadratureSpec spec;
    const Sinogram data = Sinogram::sample(
        grid, [&](const Geodesic& g) { return xray_scalar(f, g, spec); }, Parity::even);
    const double dn = data.norm();
    for (int q = 1; q <= 2; ++q)
        for (int p = 0; p <= 3; ++p) {
            CHECK(std::abs(inner_product(data, ipq_hat_on_grid(p, 2 * q, grid))) < 1e-6 * dn);
            CHECK(std::abs(inner_product(data, ipq_hat_on_grid(p, 2 * q, grid, true))) <
                  1e-6 * dn);
        }
    // and the projections onto those blocks vanish
    for (int q : {1, 2}) {
        const Projection pr = project_Pi(data, q, 8);
        CHECK(pr.projected.norm() < 1e-5 * dn);
    }
}

TEST_CASE("projections reproduce range elements") {
    auto grid = make_grid(64, 96);
    // h = I_{0,2}: pure q=1 block
    const Sinogram h = ipq_on_grid(0, 2, grid);
    const Projection p2 = project_Pi(h, 1, 8);
    Sinogram diff = h;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] -= p2.projected.values[i];
    CHECK(diff.norm() < 1e-6 * h.norm());
    const Projection p0 = project_Pi(h, 0, 8, 8);
    CHECK(p0.projected.norm() < 1e-6 * h.norm());
    const Projection p4 = project_Pi(h, 2, 8);
    CHECK(p4.projected.norm() < 1e-6 * h.norm());

    // h = psi_{1,-1}: the E+ block at eigenvalue 3 is one-dimensional
    const Sinogram psi1m1 = psi_on_grid(BasisIndex{1, -1}, grid);
    const Projection pr = project_Pi(psi1m1, 1, 8);
    Sinogram d2 = psi1m1;
    for (std::size_t i = 0; i < d2.values.size(); ++i) d2.values[i] -= pr.projected.values[i];
    CHECK(d2.norm() < 1e-6);
}

TEST_CASE("triangular span identity at fixed D_beta eigenvalue") {
    // each psi_{r-2p,-p} expands exactly in { I-hat_{r-2q,2q}, q = 1..floor(r/2) }
    auto grid = make_grid(64, 96);
    for (int r : {2, 3, 4, 5, 6}) {
        for (int p = 1; p <= r / 2; ++p) {
            const Sinogram target = psi_on_grid(BasisIndex{r - 2 * p, -p}, grid);
            Sinogram recon = Sinogram::zeros(grid);
            for (int q = 1; q <= r / 2; ++q) {
                const Sinogram b = ipq_hat_on_grid(r - 2 * q, 2 * q, grid);
                const cplx coef = inner_product(target, b);
                for (std::size_t i = 0; i < recon.values.size(); ++i)
                    recon.values[i] += coef * b.values[i];
            }
            Sinogram diff = target;
            for (std::size_t i = 0; i < diff.values.size(); ++i)
                diff.values[i] -= recon.values[i];
            CHECK(diff.norm() < 1e-6);
        }
    }
}

TEST_CASE("spectral coefficients and Parseval") {
    auto grid = make_grid(64, 96);
    // h = sigma_0 psi_{0,0} -> a_{0,0} = 1
    Sinogram h = psi_on_grid(BasisIndex{0, 0}, grid);
    for (auto& v : h.values) v *= sigma0(0);
    const SpectralData sd = spectral_coeffs(h, 4);
    CHECK(std::abs(sd.a[0][0] - cplx(1.0)) < 1e-10);

    // h = psi_{2,1} -> a_{2,1} = sqrt(3) / (2 sqrt(pi))
    const Sinogram h2 = psi_on_grid(BasisIndex{2, 1}, grid);
    const SpectralData sd2 = spectral_coeffs(h2, 4);
    CHECK(std::abs(sd2.a[2][1] - std::sqrt(3.0) / (2.0 * std::sqrt(kPi))) < 1e-10);

    // Parseval/Bessel on a random finite combination
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Sinogram mix = Sinogram::zeros(grid, Parity::even);
    double nrm2 = 0.0;
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) {
            const cplx c(u(rng), u(rng));
            nrm2 += std::norm(c);
            const Sinogram b = psi_on_grid(BasisIndex{n, k}, grid);
            for (std::size_t i = 0; i < mix.values.size(); ++i)
                mix.values[i] += c * b.values[i];
        }
    const SpectralData sdm = spectral_coeffs(mix, 5);
    CHECK(sdm.total_energy() <= nrm2 + 1e-8);
    CHECK(sdm.total_energy() == doctest::Approx(nrm2).epsilon(1e-9));
}

TEST_CASE("moment test flags energy above the declared rank") {
    auto grid = make_grid(64, 96);
    const Sinogram zero = Sinogram::zeros(grid, Parity::even);
    CHECK(moment_test(zero, 0, 3, 6).pass);

    const Sinogram h6 = ipq_on_grid(0, 6, grid);
    const MomentReport bad = moment_test(h6, 2, 4, 6, 1e-5);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_q == 3);

    // rank-4 phantom data passes at n = 2
    IttTensor f;
    f.rank = 4;
    f.f0 = cutoff_bump(cplx(0.1, 0.2), 0.25, cplx(1.0));
    f.components.push_back(realize(TTComponent{2, {cplx(1.0, 0.0), cplx(-1.0, 0.0)}, {}}));
    f.components.push_back(realize(TTComponent{4, {cplx(0.0), cplx(1.0)}, {}}));
    QuadratureSpec spec;
    const Sinogram data = Sinogram::sample(
        grid, [&](const Geodesic& g) { return xray_tensor(f, g, spec); }, Parity::even);
    CHECK(moment_test(data, 2, 4, 8, 1e-5).pass);
    CHECK_FALSE(moment_test(data, 1, 4, 8, 1e-5).pass);
}

TEST_CASE("finite-difference spectral checks of D_beta and T_0") {
    for (int n = 0; n <= 4; ++n)
        for (int k : {-1, 0, n / 2, n, n + 1}) {
            auto h = [&](double b, double a) { return psi(BasisIndex{n, k}, Geodesic{b, a}); };
            for (const Geodesic g : {Geodesic{0.7, 0.3}, Geodesic{2.1, -0.9}}) {
                const cplx base = psi(BasisIndex{n, k}, g);
                const cplx db = apply_Dbeta_fd(h, g);
                CHECK(std::abs(db - double(n - 2 * k) * base) < 1e-6);
                const cplx t0 = apply_T0_fd(h, g);
                const double lam = double(n + 1) * double(n + 1);
                CHECK(std::abs(t0 - lam * base) < 1e-4);
            }
        }

    // real operator on beta-independent real input with mu^2 decay
    auto real_h = [](double, double a) { return cplx(1.0 / (1.0 + a * a)); };
    const cplx v = apply_T0_fd(real_h, Geodesic{0.3, 0.6});
    CHECK(std::fabs(v.imag()) < 1e-10);
}

TEST_CASE("even-parity defect of even data is small") {
    auto grid = make_grid(64, 96);
    const Sinogram h = ipq_on_grid(1, 2, grid);
    // I_{1,2} is even under the antipodal relation
    CHECK(parity_defect(h) < 1e-3 * h.norm());
}
