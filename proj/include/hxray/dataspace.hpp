#pragma once

// The L^2(G) apparatus on the geodesic manifold: quadrature grid, the
// Jacobi-polynomial basis psi_{n,k}, the normalized I_{p,2q} family, inner
// products, block projections, spectral coefficients and moment tests.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "hxray/forward.hpp"
#include "hxray/geometry.hpp"
#include "hxray/special.hpp"
#include "hxray/util.hpp"

namespace hxray {

// Tensor-product quadrature grid on (beta, a): uniform periodic angles times
// Gauss-Legendre nodes in s with a = tan(s); weights carry the sec^2 Jacobian.
class GeodesicGrid {
  public:
    GeodesicGrid(int n_beta, int n_a) : n_beta_(n_beta), n_a_(n_a) {
        beta_.resize(n_beta);
        for (int j = 0; j < n_beta; ++j) beta_[j] = kTwoPi * j / n_beta;
        std::vector<double> sn, sw;
        gauss_legendre(n_a, sn, sw);
        a_.resize(n_a);
        wa_.resize(n_a);
        for (int i = 0; i < n_a; ++i) {
            const double s = 0.5 * kPi * sn[i];
            const double sec = 1.0 / std::cos(s);
            a_[i] = std::tan(s);
            wa_[i] = 0.5 * kPi * sw[i] * sec * sec;
        }
    }

    int n_beta() const { return n_beta_; }
    int n_a() const { return n_a_; }
    std::size_t size() const { return std::size_t(n_beta_) * n_a_; }

    // Flattened node index: a-major, beta-minor.
    Geodesic node(std::size_t idx) const {
        return Geodesic{beta_[idx % n_beta_], a_[idx / n_beta_]};
    }
    double weight(std::size_t idx) const { return wa_[idx / n_beta_] * kTwoPi / n_beta_; }

    const std::vector<double>& betas() const { return beta_; }
    const std::vector<double>& as() const { return a_; }
    const std::vector<double>& a_weights() const { return wa_; }

    // Closed-form sanity check: integral of (1+a^2)^{-2} over the grid is pi^2.
    double mu4_integral() const {
        double s = 0.0;
        for (int i = 0; i < n_a_; ++i) s += wa_[i] / ((1.0 + a_[i] * a_[i]) * (1.0 + a_[i] * a_[i]));
        return s * kTwoPi;
    }

    bool operator==(const GeodesicGrid& o) const {
        return n_beta_ == o.n_beta_ && n_a_ == o.n_a_ && a_ == o.a_;
    }

  private:
    int n_beta_, n_a_;
    std::vector<double> beta_, a_, wa_;
};

using GridPtr = std::shared_ptr<const GeodesicGrid>;

inline GridPtr make_grid(int n_beta, int n_a) {
    return std::make_shared<GeodesicGrid>(n_beta, n_a);
}

enum class Parity { none, even, odd };

// Complex samples of a function on the geodesic manifold over a grid.
struct Sinogram {
    GridPtr grid;
    std::vector<cplx> values;
    Parity parity = Parity::none;

    static Sinogram zeros(GridPtr g, Parity p = Parity::none) {
        return Sinogram{g, std::vector<cplx>(g->size(), cplx(0.0)), p};
    }

    template <class F>
    static Sinogram sample(GridPtr g, const F& f, Parity p = Parity::none, int workers = 1) {
        Sinogram s = zeros(g, p);
        parallel_for(g->size(), workers,
                     [&](std::size_t i) { s.values[i] = f(g->node(i)); });
        return s;
    }

    double norm() const {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            acc += grid->weight(i) * std::norm(values[i]);
        return std::sqrt(acc);
    }
};

inline void require_same_grid(const Sinogram& h1, const Sinogram& h2) {
    if (h1.grid != h2.grid && !(*h1.grid == *h2.grid))
        throw GridMismatch("sinograms live on different grids");
}

// L^2(G) pairing: sum of weights * h1 * conj(h2).
inline cplx inner_product(const Sinogram& h1, const Sinogram& h2) {
    require_same_grid(h1, h2);
    cplx acc(0.0);
    for (std::size_t i = 0; i < h1.values.size(); ++i)
        acc += h1.grid->weight(i) * h1.values[i] * std::conj(h2.values[i]);
    return acc;
}

namespace detail {

// Normalization scales for p_n^0: p_n = scale_n * P_n^{(1/2,1/2)} with
// integral of p_n^2 (1-x^2)^{1/2} equal to 1/(2 pi).  The recurrence gives
// the raw Jacobi polynomial, the scale comes from one Gauss-Chebyshev-2
// integral per degree (the paper pins the normalization only via that
// integral, not via a closed-form constant).
class JacobiNormalizer {
  public:
    double scale(int n) const {
        std::lock_guard<std::mutex> lock(mutex_);
        while (int(scales_.size()) <= n) extend();
        return scales_[n];
    }

    // Raw P_n^{(1/2,1/2)}(x) by three-term recurrence.
    static double raw(int n, double x) {
        if (n == 0) return 1.0;
        double p0 = 1.0, p1 = 1.5 * x;
        for (int j = 2; j <= n; ++j) {
            // alpha = beta = 1/2: even-odd symmetric recurrence
            const double a1 = 2.0 * j * (j + 1.0) * (2.0 * j - 1.0);
            const double a2 = (2.0 * j) * (2.0 * j - 1.0) * (2.0 * j + 1.0);
            const double a3 = 2.0 * (j - 0.5) * (j - 0.5) * (2.0 * j + 1.0);
            const double p2 = (a2 * x * p1 - a3 * p0) / a1;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    }

  private:
    void extend() const {
        const int n = int(scales_.size());
        const int quad_n = std::max(64, n + 8);
        std::vector<double> xs, ws;
        gauss_chebyshev2(quad_n, xs, ws);
        double norm2 = 0.0;
        for (int i = 0; i < quad_n; ++i) {
            const double v = raw(n, xs[i]);
            norm2 += ws[i] * v * v;
        }
        scales_.push_back(std::sqrt(1.0 / (kTwoPi * norm2)));
    }

    mutable std::mutex mutex_;
    mutable std::vector<double> scales_;
};

inline const JacobiNormalizer& jacobi_normalizer() {
    static JacobiNormalizer instance;
    return instance;
}

}  // namespace detail

// p_n^0(x): scalar multiple of the Jacobi polynomial P_n^{(1/2,1/2)} with
// integral of p_n^2 (1-x^2)^{1/2} over [-1,1] equal to (2 pi)^{-1}.
inline double jacobi_p(int n, double x) {
    return detail::jacobi_normalizer().scale(n) * detail::JacobiNormalizer::raw(n, x);
}

// All of p_0 .. p_n at once through one recurrence pass.
inline void jacobi_p_all(int n_max, double x, std::vector<double>& out) {
    out.resize(n_max + 1);
    double p0 = 1.0, p1 = 1.5 * x;
    if (n_max >= 0) out[0] = p0;
    if (n_max >= 1) out[1] = p1;
    for (int j = 2; j <= n_max; ++j) {
        const double a1 = 2.0 * j * (j + 1.0) * (2.0 * j - 1.0);
        const double a2 = (2.0 * j) * (2.0 * j - 1.0) * (2.0 * j + 1.0);
        const double a3 = 2.0 * (j - 0.5) * (j - 0.5) * (2.0 * j + 1.0);
        const double p2 = (a2 * x * p1 - a3 * p0) / a1;
        out[j] = p2;
        p0 = p1;
        p1 = p2;
    }
    const auto& norm = detail::jacobi_normalizer();
    for (int n = 0; n <= n_max; ++n) out[n] *= norm.scale(n);
}

struct BasisIndex {
    int n = 0;
    int k = 0;
    int gamma = 0;  // only gamma = 0 is supported in this artifact
    int dbeta_eigenvalue() const { return n - 2 * k; }
};

// psi_{n,k}^{0,H}(beta, a) = mu^2 e^{i(n-2k)(beta + atan a + pi/2)} p_n(a mu).
inline cplx psi(const BasisIndex& idx, const Geodesic& g) {
    const double mu = g.mu();
    return mu * mu * unit_phase(idx.dbeta_eigenvalue() * g.omega()) * jacobi_p(idx.n, g.a * mu);
}

inline Sinogram psi_on_grid(const BasisIndex& idx, GridPtr grid) {
    return Sinogram::sample(grid, [&](const Geodesic& g) { return psi(idx, g); }, Parity::even);
}

// sigma_{n,k}^0 = 2 sqrt(pi) / sqrt(n+1): singular values of the scalar block.
inline double sigma0(int n) { return 2.0 * std::sqrt(kPi) / std::sqrt(double(n) + 1.0); }

// ||I_{p,q}||^2 = 4 pi^2 B(1/2,q) 4^{1-q} B(p+1, 2q-1).
inline double ipq_norm_sq(int p, int q) {
    return 4.0 * kPi * kPi * beta(0.5, double(q)) * std::pow(4.0, 1.0 - q) *
           beta(double(p) + 1.0, 2.0 * q - 1.0);
}

inline Sinogram ipq_on_grid(int p, int q, GridPtr grid) {
    return Sinogram::sample(
        grid, [&](const Geodesic& g) { return ipq_closed(p, q, g); },
        (q % 2 == 0) ? Parity::even : Parity::odd);
}

// Normalized range element I_{p,q} / ||I_{p,q}||, conjugated for the
// antiholomorphic copy.
inline Sinogram ipq_hat_on_grid(int p, int q, GridPtr grid, bool conjugated = false) {
    Sinogram s = ipq_on_grid(p, q, grid);
    const double inv = 1.0 / std::sqrt(ipq_norm_sq(p, q));
    for (auto& v : s.values) {
        v *= inv;
        if (conjugated) v = std::conj(v);
    }
    return s;
}

// Coefficients of a sinogram against psi_{n,k}, with the moment-condition
// normalization a_{n,k} = c_{n,k} / sigma_{n,k}^0 on the 0 <= k <= n window.
struct SpectralData {
    int n_max = 0;
    std::vector<std::vector<cplx>> c;  // c[n][k], 0 <= k <= n
    std::vector<std::vector<cplx>> a;

    double total_energy() const {
        double s = 0.0;
        for (const auto& row : c)
            for (cplx v : row) s += std::norm(v);
        return s;
    }
    // Energy carried by the top shells, used as a truncation indicator.
    double tail_energy(int shells = 2) const {
        double s = 0.0;
        for (int n = std::max(0, n_max - shells + 1); n <= n_max; ++n)
            for (cplx v : c[n]) s += std::norm(v);
        return s;
    }
};

// Finite expansion sum_{n,k} coef[n][k] psi_{n,k}, evaluated anywhere on G.
// One recurrence pass per call; phases accumulated multiplicatively.
struct PsiExpansion {
    std::vector<std::vector<cplx>> coef;  // coef[n][k], 0 <= k <= n

    cplx eval(const Geodesic& g) const {
        if (coef.empty()) return cplx(0.0);
        const int n_max = int(coef.size()) - 1;
        const double mu = g.mu();
        const double omega = g.omega();
        std::vector<double> pn;
        jacobi_p_all(n_max, g.a * mu, pn);
        const cplx eiw = unit_phase(omega);
        const cplx em2 = unit_phase(-2.0 * omega);
        cplx ein(1.0);  // e^{i n omega}
        cplx acc(0.0);
        for (int n = 0; n <= n_max; ++n) {
            cplx inner(0.0), ek(1.0);  // ek = e^{-2ik omega}
            for (int k = 0; k <= n && k < int(coef[n].size()); ++k) {
                inner += coef[n][k] * ek;
                ek *= em2;
            }
            acc += pn[n] * ein * inner;
            ein *= eiw;
        }
        return mu * mu * acc;
    }
};

inline SpectralData spectral_coeffs(const Sinogram& h, int n_max) {
    SpectralData sd;
    sd.n_max = n_max;
    sd.c.resize(n_max + 1);
    sd.a.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        sd.c[n].resize(n + 1);
        sd.a[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            const Sinogram b = psi_on_grid(BasisIndex{n, k}, h.grid);
            sd.c[n][k] = inner_product(h, b);
            sd.a[n][k] = sd.c[n][k] / sigma0(n);
        }
    }
    return sd;
}

// Orthogonal projections Pi_{2q} of the data-space decomposition.
struct Projection {
    Sinogram projected;
    std::vector<cplx> coeffs_plus;   // against I-hat_{p,2q} (q >= 1)
    std::vector<cplx> coeffs_minus;  // against conj(I-hat_{p,2q})
    SpectralData scalar;             // q = 0 expansion
};

// q = 0: expansion in {psi_{n,k}, 0 <= k <= n <= n_max}.
// q >= 1: expansion in the normalized I_{p,2q} and their conjugates, p <= p_max,
// using the analytic Beta-function norms.
inline Projection project_Pi(const Sinogram& h, int q, int p_max, int n_max = 12) {
    Projection out;
    out.projected = Sinogram::zeros(h.grid, Parity::even);
    if (q == 0) {
        out.scalar = spectral_coeffs(h, n_max);
        for (int n = 0; n <= n_max; ++n)
            for (int k = 0; k <= n; ++k) {
                const Sinogram b = psi_on_grid(BasisIndex{n, k}, h.grid);
                for (std::size_t i = 0; i < b.values.size(); ++i)
                    out.projected.values[i] += out.scalar.c[n][k] * b.values[i];
            }
        return out;
    }
    out.coeffs_plus.resize(p_max + 1);
    out.coeffs_minus.resize(p_max + 1);
    for (int p = 0; p <= p_max; ++p) {
        const Sinogram bp = ipq_hat_on_grid(p, 2 * q, h.grid, false);
        const Sinogram bm = ipq_hat_on_grid(p, 2 * q, h.grid, true);
        out.coeffs_plus[p] = inner_product(h, bp);
        out.coeffs_minus[p] = inner_product(h, bm);
        for (std::size_t i = 0; i < bp.values.size(); ++i)
            out.projected.values[i] +=
                out.coeffs_plus[p] * bp.values[i] + out.coeffs_minus[p] * bm.values[i];
    }
    return out;
}

// Vanishing-moment check: max over n < q <= q_max, p <= p_max of the pairings
// with I-hat_{p,2q} and its conjugate, normalized by ||h||.
struct MomentReport {
    double max_violation = 0.0;  // relative to ||h||
    double h_norm = 0.0;
    int worst_p = -1, worst_q = -1;
    double tolerance = 1e-4;
    bool pass = true;
};

inline MomentReport moment_test(const Sinogram& h, int n, int q_max, int p_max,
                                double tolerance = 1e-4) {
    MomentReport rep;
    rep.tolerance = tolerance;
    rep.h_norm = h.norm();
    const double scale = (rep.h_norm > 0.0) ? rep.h_norm : 1.0;
    for (int q = n + 1; q <= q_max; ++q)
        for (int p = 0; p <= p_max; ++p) {
            const double vp = std::abs(inner_product(h, ipq_hat_on_grid(p, 2 * q, h.grid, false)));
            const double vm = std::abs(inner_product(h, ipq_hat_on_grid(p, 2 * q, h.grid, true)));
            const double v = std::max(vp, vm) / scale;
            if (v > rep.max_violation) {
                rep.max_violation = v;
                rep.worst_p = p;
                rep.worst_q = q;
            }
        }
    rep.pass = rep.max_violation <= tolerance;
    return rep;
}

// Finite-difference application of the data-space operators
//   D_beta = (1/i) d_beta,
//   T_0 = -(d_beta - (1+a^2) d_a)^2 + 2a (d_beta - (1+a^2) d_a) - (2a^2+1).
// h is any smooth callable (beta, a) -> complex; fourth-order central stencils.
namespace detail {

template <class H>
cplx fd4(const H& f, double x, double step) {
    return (-f(x + 2 * step) + 8.0 * f(x + step) - 8.0 * f(x - step) + f(x - 2 * step)) /
           (12.0 * step);
}

template <class H>
cplx fd4_second(const H& f, double x, double step) {
    return (-f(x + 2 * step) + 16.0 * f(x + step) - 30.0 * f(x) + 16.0 * f(x - step) -
            f(x - 2 * step)) /
           (12.0 * step * step);
}

}  // namespace detail

template <class H>
cplx apply_Dbeta_fd(const H& h, const Geodesic& g, double step = 1e-2) {
    auto slice = [&](double b) { return h(b, g.a); };
    return detail::fd4(slice, g.beta, step) / cplx(0.0, 1.0);
}

template <class H>
cplx apply_T0_fd(const H& h, const Geodesic& g, double step = 5e-3) {
    const double a = g.a, b = g.beta;
    const double a2 = 1.0 + a * a;
    auto hb = [&](double bb) { return h(bb, a); };
    auto ha = [&](double aa) { return h(b, aa); };
    const cplx hbb = detail::fd4_second(hb, b, step);
    const cplx haa = detail::fd4_second(ha, a, step);
    const cplx h_b = detail::fd4(hb, b, step);
    const cplx h_a = detail::fd4(ha, a, step);
    // mixed term by nested fourth-order first differences
    auto dbeta_at = [&](double aa) {
        auto slice = [&](double bb) { return h(bb, aa); };
        return detail::fd4(slice, b, step);
    };
    const cplx hba = detail::fd4(dbeta_at, a, step);
    return -hbb + 2.0 * a2 * hba - a2 * a2 * haa - 4.0 * a * a2 * h_a + 2.0 * a * h_b -
           (2.0 * a * a + 1.0) * h(b, a);
}

// Even-parity defect: values at antipodal-image nodes against a periodic
// cubic interpolation in beta (the -a node exists by grid symmetry).
inline double parity_defect(const Sinogram& h) {
    const auto& grid = *h.grid;
    const int nb = grid.n_beta(), na = grid.n_a();
    double worst = 0.0;
    for (int ia = 0; ia < na; ++ia) {
        const double a = grid.as()[ia];
        // grid a-nodes are symmetric: the mirror of node ia is na-1-ia
        const int ia_m = na - 1 - ia;
        for (int jb = 0; jb < nb; ++jb) {
            const Geodesic g{grid.betas()[jb], a};
            const Geodesic ag = antipodal(g);
            const double pos = wrap_angle(ag.beta) * nb / kTwoPi;
            const int j0 = int(std::floor(pos));
            const double u = pos - j0;
            auto at = [&](int j) { return h.values[std::size_t(ia_m) * nb + ((j % nb + nb) % nb)]; };
            // cubic Lagrange through 4 periodic neighbors
            const cplx interp = at(j0 - 1) * (-u * (u - 1.0) * (u - 2.0) / 6.0) +
                                at(j0) * ((u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0) +
                                at(j0 + 1) * (-(u + 1.0) * u * (u - 2.0) / 2.0) +
                                at(j0 + 2) * ((u + 1.0) * u * (u - 1.0) / 6.0);
            worst = std::max(worst, std::abs(interp - h.values[std::size_t(ia) * nb + jb]));
        }
    }
    return worst;
}

}  // namespace hxray
