#pragma once

// Adaptive Gauss-Kronrod quadrature for complex-valued integrands, plus the
// geodesic line integral with its tanh(t/2) evaluation and tail control.

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "hxray/geometry.hpp"
#include "hxray/util.hpp"

namespace hxray {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double t_max = 40.0;      // truncation time; x(gamma(t)) = O(e^{-|t|}) beyond
    int max_refinement = 12;  // bisection generations; budget 2^max_refinement panels
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(const F& f, double a, double b, cplx& value, double& err) {
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    cplx fc = f(m);
    cplx kron = kWgk[7] * fc;
    cplx gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        cplx f1 = f(m - h * kXgk[j]);
        cplx f2 = f(m + h * kXgk[j]);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    value = kron * h;
    err = std::abs(kron - gauss) * std::fabs(h);
}

struct Panel {
    double a, b, err;
    cplx value;
    bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

// Adaptive integration over the union of [edges[i], edges[i+1]].
// Splits the worst panel until the summed error estimate meets the
// tolerances or the panel budget (2^max_refinement) is exhausted.
template <class F>
cplx integrate_adaptive(const F& f, const std::vector<double>& edges, const QuadratureSpec& spec) {
    std::priority_queue<detail::Panel> queue;
    cplx total(0.0, 0.0);
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        detail::Panel p{edges[i], edges[i + 1], 0.0, cplx(0.0, 0.0)};
        detail::gk15(f, p.a, p.b, p.value, p.err);
        total += p.value;
        total_err += p.err;
        queue.push(p);
    }
    long budget = 1L << std::min(spec.max_refinement, 30);
    auto converged = [&] {
        return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    };
    while (!converged() && budget-- > 0) {
        detail::Panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            detail::Panel p{lo, hi, 0.0, cplx(0.0, 0.0)};
            detail::gk15(f, p.a, p.b, p.value, p.err);
            total += p.value;
            total_err += p.err;
            queue.push(p);
        }
    }
    if (!converged())
        throw NonConvergent("integrate_adaptive: refinement budget exhausted, err=" +
                            std::to_string(total_err));
    return total;
}

template <class F>
cplx integrate_adaptive(const F& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_adaptive(f, std::vector<double>{a, b}, spec);
}

namespace detail {

inline std::vector<double> line_edges(double t_max) {
    std::vector<double> e{0.0};
    for (double t : {1.0, 2.0, 4.0, 8.0})
        if (t < t_max) e.push_back(t);
    e.push_back(0.5 * t_max);
    e.push_back(t_max);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    std::vector<double> full;
    for (auto it = e.rbegin(); it != e.rend(); ++it) full.push_back(-*it);
    for (std::size_t i = 1; i < e.size(); ++i) full.push_back(e[i]);
    return full;
}

// Crude tail estimate from samples at T-1 and T, assuming exponential decay.
template <class F>
double tail_estimate(const F& f, double T) {
    double fT = std::abs(f(T)) + std::abs(f(-T));
    if (fT == 0.0) return 0.0;
    double fT1 = std::abs(f(T - 1.0)) + std::abs(f(-T + 1.0));
    double rate = (fT1 > fT) ? std::log(fT1 / fT) : 0.05;
    rate = std::max(rate, 0.05);
    return fT / rate;
}

}  // namespace detail

// Integral over R of a function of the time parameter along a geodesic.
// Integrates [-T, T] adaptively and extends T while the estimated tail
// exceeds abs_tol (up to 4x the configured truncation time).
template <class F>
cplx integrate_line(const F& f, const QuadratureSpec& spec) {
    double T = spec.t_max;
    const double T_cap = 4.0 * spec.t_max;
    while (T < T_cap && detail::tail_estimate(f, T) > spec.abs_tol) T += 10.0;
    auto edges = detail::line_edges(T);
    return integrate_adaptive(f, edges, spec);
}

}  // namespace hxray
