#pragma once

// Poincare-disk primitives: metric factors, geodesics and their endpoints,
// first integrals of the flow, the fiber-to-geodesic projection and the
// geodesic vector field in the conformal chart.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hxray/util.hpp"

namespace hxray {

inline constexpr double kBoundaryEps = 1e-12;

// Conformal factor c(z) = (1-|z|^2)/2; the metric is c^{-2}|dz|^2.
inline double conf_factor(cplx z) { return 0.5 * (1.0 - std::norm(z)); }

// Boundary defining function x(z) = (1-|z|^2)/(1+|z|^2).
inline double bdf_x(cplx z) { return (1.0 - std::norm(z)) / (1.0 + std::norm(z)); }

// Interior point of the disk, |z| < 1 strictly.
class DiskPoint {
  public:
    explicit DiskPoint(cplx z) : z_(z) {
        if (std::abs(z) >= 1.0 - kBoundaryEps)
            throw std::invalid_argument("DiskPoint: |z| must be < 1 - 1e-12");
    }
    cplx z() const { return z_; }
    double c() const { return conf_factor(z_); }
    double x() const { return bdf_x(z_); }

  private:
    cplx z_;
};

// Point of the 0-sphere bundle: base point plus fiber angle in [0, 2*pi).
struct PhasePoint {
    DiskPoint base;
    double theta;
    PhasePoint(DiskPoint b, double th) : base(b), theta(wrap_angle(th)) {}
};

// Oriented geodesic (beta, a); beta is the backward endpoint angle and
// a the slope parameter, with boundary weight mu = (1+a^2)^(-1/2).
struct Geodesic {
    double beta = 0.0;
    double a = 0.0;
    double mu() const { return 1.0 / std::sqrt(1.0 + a * a); }
    // omega = beta + atan(a) + pi/2, the phase carried by w and xi on this geodesic.
    double omega() const { return beta + std::atan(a) + 0.5 * kPi; }
    cplx endpoint_backward() const { return unit_phase(beta); }
    cplx endpoint_forward() const { return unit_phase(beta + kPi + 2.0 * std::atan(a)); }
};

// z_{beta,a}(t) = e^{i beta} ((2+ia) chi + ia) / (ia chi - 2 + ia), chi = tanh(t/2).
inline cplx geodesic_point_chi(const Geodesic& g, double chi) {
    const cplx ia(0.0, g.a);
    return unit_phase(g.beta) * ((2.0 + ia) * chi + ia) / (ia * chi - 2.0 + ia);
}

inline cplx geodesic_point(const Geodesic& g, double t) {
    return geodesic_point_chi(g, std::tanh(0.5 * t));
}

// Velocity of the unit-speed geodesic through z with endpoints z-:
//   zdot = -(z - z_-)(z - z_+)/(z_+ - z_-).
inline cplx geodesic_velocity_at(const Geodesic& g, cplx z) {
    const cplx zm = g.endpoint_backward();
    const cplx zp = g.endpoint_forward();
    return -(z - zm) * (z - zp) / (zp - zm);
}

// Velocity in the time parameter, through the factored Moebius form
//   zdot(t) = -4 e^{2 i beta} sech^2(t/2) / ( D^2 (ia - 1) (z_+ - z_-) ),
//   D = ia chi - 2 + ia,
// which avoids the endpoint cancellation of (z - z_+-) at large |t|.
inline cplx geodesic_velocity(const Geodesic& g, double t) {
    const cplx ia(0.0, g.a);
    const double ch = std::cosh(0.5 * t);
    const double sech2 = 1.0 / (ch * ch);
    const cplx d = ia * std::tanh(0.5 * t) - 2.0 + ia;
    const cplx dz = cplx(0.0, 2.0) * unit_phase(g.omega()) * g.mu();  // z_+ - z_-
    return -4.0 * unit_phase(2.0 * g.beta) * sech2 / (d * d * (ia - 1.0) * dz);
}

// Phase point traced by the geodesic at time t; the fiber angle is arg(zdot).
inline PhasePoint geodesic_phase_point(const Geodesic& g, double t) {
    return PhasePoint(DiskPoint(geodesic_point(g, t)), std::arg(geodesic_velocity(g, t)));
}

// Antipodal scattering relation (beta, a) -> (beta + pi + 2 atan a, -a);
// deck transformation of the 2-to-1 cover of unoriented geodesics.
inline Geodesic antipodal(const Geodesic& g) {
    return Geodesic{wrap_angle(g.beta + kPi + 2.0 * std::atan(g.a)), -g.a};
}

// First integrals of the flow at a phase point.  xi_minus/xi_plus are the
// backward/forward geodesic endpoints; w = (xi_+ + xi_-)/2, xi = (xi_+ - xi_-)/4.
struct FirstIntegrals {
    cplx xi_minus;
    cplx xi_plus;
    cplx w;
    cplx xi;
};

inline FirstIntegrals first_integrals(const PhasePoint& p) {
    const cplx z = p.base.z();
    const cplx e = unit_phase(p.theta);
    const cplx zb = std::conj(z);
    FirstIntegrals f;
    f.xi_minus = (z - e) / (1.0 - zb * e);
    f.xi_plus = (z + e) / (1.0 + zb * e);
    f.w = 0.5 * (f.xi_plus + f.xi_minus);
    f.xi = 0.25 * (f.xi_plus - f.xi_minus);
    return f;
}

// w and xi traced along the geodesic (independent of t):
//   w  = e^{i omega} (-a) mu,   xi = e^{i omega} i mu / 2.
inline std::pair<cplx, cplx> trace_w_xi(const Geodesic& g) {
    const cplx ph = unit_phase(g.omega());
    const double mu = g.mu();
    return {ph * (-g.a) * mu, ph * cplx(0.0, 0.5) * mu};
}

struct GeodesicTime {
    Geodesic g;
    double t;
};

// Projection pi_H: phase point -> (geodesic through it, time along it).
// beta = arg xi_-, and arg(xi_+/xi_-) = pi + 2 atan a reduced to (0, 2*pi)
// fixes the branch of a; t is recovered by inverting the Moebius map for chi.
inline GeodesicTime project_to_geodesic(const PhasePoint& p) {
    const FirstIntegrals fi = first_integrals(p);
    GeodesicTime r;
    r.g.beta = wrap_angle(std::arg(fi.xi_minus));
    double delta = std::arg(fi.xi_plus / fi.xi_minus);  // in (-pi, pi]
    if (delta <= 0.0) delta += kTwoPi;                  // branch: delta in (0, 2*pi)
    r.g.a = std::tan(0.5 * (delta - kPi));

    const cplx ia(0.0, r.g.a);
    const cplx Z = p.base.z() * unit_phase(-r.g.beta);
    const cplx chi = (ia - Z * (ia - 2.0)) / (ia * Z - 2.0 - ia);
    double c = chi.real();
    c = std::max(-1.0 + 1e-16, std::min(1.0 - 1e-16, c));
    r.t = 2.0 * std::atanh(c);
    return r;
}

// Gradient of a phase function at a point: partials along u1, u2 and theta.
struct PhaseGradient {
    cplx du1;
    cplx du2;
    cplx dtheta;
};

// Geodesic vector field in the conformal chart (rho = c):
//   Xu = cos(th) c u_1 + sin(th) c u_2 + (c_1 sin(th) - c_2 cos(th)) u_th,
// with c_1 = -u1, c_2 = -u2.
template <class GradFn>
cplx apply_X(GradFn&& grad, const PhasePoint& p) {
    const PhaseGradient gr = grad(p);
    const cplx z = p.base.z();
    const double c = conf_factor(z);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    return ct * c * gr.du1 + st * c * gr.du2 + (-z.real() * st + z.imag() * ct) * gr.dtheta;
}

}  // namespace hxray
