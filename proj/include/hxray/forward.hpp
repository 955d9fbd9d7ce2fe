#pragma once

// The X-ray transform: geodesic quadrature for scalar and phase integrands,
// the closed-form I_{p,q} family, the transform of iterated-tt tensors,
// Santalo integration and the explicit right inverse.

#include <cmath>
#include <vector>

#include "hxray/fiber.hpp"
#include "hxray/geometry.hpp"
#include "hxray/quadrature.hpp"
#include "hxray/special.hpp"
#include "hxray/util.hpp"

namespace hxray {

// I_0 f(gamma) = integral over R of f(z_{beta,a}(t)) dt.
inline cplx xray_scalar(const ScalarField& f, const Geodesic& g, const QuadratureSpec& spec = {}) {
    if (f.trivial) return cplx(0.0);
    auto integrand = [&](double t) { return f(geodesic_point(g, t)); };
    return integrate_line(integrand, spec);
}

// Line integral of a phase function F(z, theta) along the lifted geodesic,
// with theta(t) = arg zdot(t).  Samples inside the DiskPoint guard band are
// taken as zero; in-scope phase integrands decay at least like x^{1/2} there.
template <class F>
cplx xray_phase(const F& f, const Geodesic& g, const QuadratureSpec& spec = {}) {
    auto integrand = [&](double t) {
        const cplx z = geodesic_point(g, t);
        if (std::abs(z) >= 1.0 - kBoundaryEps) return cplx(0.0);
        return f(z, std::arg(geodesic_velocity(g, t)));
    };
    return integrate_line(integrand, spec);
}

// Closed form of Prop.-style I_{p,q} as a polynomial in (w, xi):
//   I_{p,q} = 2 xi^q sum_l binom(p,2l) B(l+1/2, q) (2 xi)^{2l} w^{p-2l},
// coefficients through log-gamma.
inline cplx ipq_closed(int p, int q, const Geodesic& g) {
    const auto [w, xi] = trace_w_xi(g);
    cplx acc(0.0);
    for (int l = 0; 2 * l <= p; ++l) {
        const double lc = std::lgamma(double(p) + 1.0) - std::lgamma(2.0 * l + 1.0) -
                          std::lgamma(double(p - 2 * l) + 1.0) + log_beta(l + 0.5, double(q));
        acc += std::exp(lc) * pow_int(2.0 * xi, 2 * l) * pow_int(w, p - 2 * l);
    }
    return 2.0 * pow_int(xi, q) * acc;
}

// Quadrature oracle for I_{p,q}: integral of z^p zdot^q dt, computed in the
// chi = tanh(t/2) variable where the integrand is rational on [-1,1]:
//   zdot dt/dchi = -8 e^{2 i beta} / ((z_+ - z_-)(ia chi - 2 + ia)^2 (ia - 1)).
inline cplx xray_numeric_pq(int p, int q, const Geodesic& g, const QuadratureSpec& spec = {}) {
    const cplx zm = g.endpoint_backward();
    const cplx zp = g.endpoint_forward();
    const cplx ia(0.0, g.a);
    const cplx e2ib = unit_phase(2.0 * g.beta);
    auto integrand = [&](double chi) {
        const cplx den = ia * chi - 2.0 + ia;
        const cplx z = unit_phase(g.beta) * ((2.0 + ia) * chi + ia) / den;
        const cplx zdot_dt = -8.0 * e2ib / ((zp - zm) * den * den * (ia - 1.0));
        cplx zdot_pow(1.0);
        if (q > 1) zdot_pow = pow_int(-(z - zm) * (z - zp) / (zp - zm), q - 1);
        return pow_int(z, p) * zdot_pow * zdot_dt;
    };
    return integrate_adaptive(integrand, std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}, spec);
}

// I_{2n} f = I_0 f0 + sum_{k,p} [ b_{p,k} I_{p,2k} + m_{p,k} conj(I_{p,2k}) ];
// the antiholomorphic side transforms to the conjugate at the same geodesic.
inline cplx xray_tensor(const IttTensor& f, const Geodesic& g, const QuadratureSpec& spec = {}) {
    cplx acc = xray_scalar(f.f0, g, spec);
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const int k = int(i) + 1;
        const auto& tt = f.components[i];
        for (std::size_t p = 0; p < tt.plus.size(); ++p)
            if (tt.plus[p] != cplx(0.0)) acc += tt.plus[p] * ipq_closed(int(p), 2 * k, g);
        for (std::size_t p = 0; p < tt.minus.size(); ++p)
            if (tt.minus[p] != cplx(0.0))
                acc += tt.minus[p] * std::conj(ipq_closed(int(p), 2 * k, g));
    }
    return acc;
}

// Phase-space side of Santalo's formula for f supported in |z| <= r0:
//   integral over S D of f dSigma^3 = int_D int_theta f(z,th) dth c^{-2} dA.
template <class F>
cplx santalo_lhs(const F& f, double r0, int n_r = 48, int n_phi = 64, int n_theta = 32) {
    std::vector<double> rn, rw;
    gauss_legendre(n_r, rn, rw);
    cplx acc(0.0);
    for (int i = 0; i < n_r; ++i) {
        const double r = 0.5 * r0 * (rn[i] + 1.0);
        const double wr = 0.5 * r0 * rw[i];
        const double c = 0.5 * (1.0 - r * r);
        cplx ring(0.0);
        for (int j = 0; j < n_phi; ++j) {
            const cplx z = r * unit_phase(kTwoPi * j / n_phi);
            for (int l = 0; l < n_theta; ++l) ring += f(z, kTwoPi * l / n_theta);
        }
        acc += ring * (kTwoPi / n_phi) * (kTwoPi / n_theta) * wr * r / (c * c);
    }
    return acc;
}

// Right inverse of the transform through the exact weight identity
// I x^alpha = B(alpha/2, 1/2) mu^alpha:
//   F(z,th) = x^alpha(z) h(pi_H(z,th)) (1+a^2)^{alpha/2} / B(alpha/2,1/2)
// satisfies I F = h.
template <class H>
auto right_inverse_lift(H h, double alpha) {
    const double inv_b = 1.0 / beta(0.5 * alpha, 0.5);
    return [h = std::move(h), alpha, inv_b](cplx z, double theta) -> cplx {
        const GeodesicTime gt = project_to_geodesic(PhasePoint(DiskPoint(z), theta));
        return std::pow(bdf_x(z), alpha) * h(gt.g) * std::pow(gt.g.mu(), -alpha) * inv_b;
    };
}

}  // namespace hxray
