#pragma once

// The three reconstruction procedures:
//   * coefficient peeling from X-ray data, top rank down (recover_tt_stage /
//     recover_all_tt),
//   * spectral filtered backprojection for the scalar part
//     (recover_f0_spectral),
//   * normal-operator assembly and its triangular inversion, bottom rank up
//     (apply_normal / invert_normal), with a CG solve standing in for the
//     closed-form inverse of N_0.

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "hxray/dataspace.hpp"
#include "hxray/fiber.hpp"
#include "hxray/forward.hpp"
#include "hxray/geometry.hpp"
#include "hxray/quadrature.hpp"
#include "hxray/special.hpp"
#include "hxray/util.hpp"

namespace hxray {

// ---------------------------------------------------------------------------
// Peeling from X-ray data.

struct TTStage {
    TTComponent component;
    double truncation_indicator = 0.0;  // |b_{P_max}| / max_p |b_p|
    bool truncation_suspect = false;
};

// One stage of the sequential reconstruction.  The caller must already have
// stripped stages j > k from the data.  Coefficients:
//   b_p = C(p,k) * sum_grid data * e^{-i(p+2k) omega} (-a)^p (-1)^k mu^{p+2k},
//   C(p,k) = 2^{2k-3} / ((4k-2)! pi^2) * (4k+p-1)!/p!   (log-gamma form),
// and the antiholomorphic coefficients from the conjugated kernel.
inline TTStage recover_tt_stage(const Sinogram& data, int k, int p_max) {
    TTStage out;
    out.component.degree = 2 * k;
    out.component.plus.resize(p_max + 1);
    out.component.minus.resize(p_max + 1);
    const auto& grid = *data.grid;
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;  // (-i)^{2k}

    for (int p = 0; p <= p_max; ++p) {
        const double log_c = (2.0 * k - 3.0) * std::log(2.0) - std::lgamma(4.0 * k - 1.0) -
                             2.0 * std::log(kPi) + log_factorial_ratio(4 * k + p - 1, p);
        const double c_pk = std::exp(log_c);
        cplx acc_plus(0.0), acc_minus(0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Geodesic g = grid.node(i);
            const double mu = g.mu();
            const double amp = sign_k * pow_int(-g.a, p) * std::pow(mu, double(p + 2 * k));
            const cplx kern = amp * unit_phase(-(p + 2 * k) * g.omega());
            const cplx dw = grid.weight(i) * data.values[i];
            acc_plus += dw * kern;
            acc_minus += dw * std::conj(kern);
        }
        out.component.plus[p] = c_pk * acc_plus;
        out.component.minus[p] = c_pk * acc_minus;
    }

    double peak = 0.0;
    for (int p = 0; p <= p_max; ++p)
        peak = std::max({peak, std::abs(out.component.plus[p]), std::abs(out.component.minus[p])});
    if (peak > 0.0) {
        out.truncation_indicator =
            std::max(std::abs(out.component.plus[p_max]), std::abs(out.component.minus[p_max])) /
            peak;
        out.truncation_suspect = out.truncation_indicator > 1e-3;
    }
    return out;
}

// Subtract the closed-form transform of a tt component from a sinogram.
inline void subtract_tt_transform(Sinogram& data, const TTComponent& tt) {
    const int k2 = tt.degree;
    const auto& grid = *data.grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Geodesic g = grid.node(i);
        cplx s(0.0);
        for (std::size_t p = 0; p < tt.plus.size(); ++p)
            if (tt.plus[p] != cplx(0.0)) s += tt.plus[p] * ipq_closed(int(p), k2, g);
        for (std::size_t p = 0; p < tt.minus.size(); ++p)
            if (tt.minus[p] != cplx(0.0)) s += tt.minus[p] * std::conj(ipq_closed(int(p), k2, g));
        data.values[i] -= s;
    }
}

struct PeelResult {
    std::vector<TTStage> stages;   // stages[k-1] has degree 2k
    Sinogram remainder;            // should lie in the scalar range
    std::vector<double> residuals; // ||remainder|| after peeling each stage, top first
};

// Sequential peeling for k = n down to 1; each stage is removed with the
// closed-form transform (never re-quadrature), so errors stay additive.
inline PeelResult recover_all_tt(const Sinogram& data, int n, int p_max) {
    PeelResult out;
    out.stages.resize(n);
    out.remainder = data;
    out.residuals.push_back(out.remainder.norm());
    for (int k = n; k >= 1; --k) {
        out.stages[k - 1] = recover_tt_stage(out.remainder, k, p_max);
        subtract_tt_transform(out.remainder, out.stages[k - 1].component);
        out.residuals.push_back(out.remainder.norm());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectral filtered backprojection for the scalar part:
//   f0 = (1/4 pi) x I_0^* T_0^{1/2} I_0 f0,
// realized as: expand the data in psi_{n,k}, scale c_{n,k} by (n+1),
// pull back through pi_H, fiber-average, multiply by x/(4 pi).

struct ScalarRecovery {
    PsiExpansion filtered;  // (n+1)-scaled coefficient table, evaluable anywhere
    std::vector<cplx> values;
    double tail_fraction = 0.0;
    bool truncation_warning = false;
};

inline cplx backproject_psi_expansion(const PsiExpansion& filt, cplx z, int n_theta) {
    cplx acc(0.0);
    for (int j = 0; j < n_theta; ++j) {
        const double th = kTwoPi * j / n_theta;
        acc += filt.eval(project_to_geodesic(PhasePoint(DiskPoint(z), th)).g);
    }
    return acc * (kTwoPi / n_theta) * bdf_x(z) / (4.0 * kPi);
}

inline ScalarRecovery recover_f0_spectral(const Sinogram& data_scalar, int n_max,
                                          const std::vector<cplx>& z_points, int n_theta = 64,
                                          int workers = 1) {
    ScalarRecovery out;
    const SpectralData sd = spectral_coeffs(data_scalar, n_max);
    out.filtered.coef.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        out.filtered.coef[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) out.filtered.coef[n][k] = double(n + 1) * sd.c[n][k];
    }
    const double total = sd.total_energy();
    out.tail_fraction = (total > 0.0) ? sd.tail_energy(2) / total : 0.0;
    out.truncation_warning = out.tail_fraction > 0.01;

    out.values.resize(z_points.size());
    parallel_for(z_points.size(), workers, [&](std::size_t i) {
        out.values[i] = backproject_psi_expansion(out.filtered, z_points[i], n_theta);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Base-space polar sampling grid with hyperbolic quadrature weights.

struct DiskGrid {
    double r_max = 0.99;
    int n_r = 24;
    int n_phi = 32;
    std::vector<double> r, wr;  // Gauss-Legendre radii on (0, r_max)

    static DiskGrid make(double r_max, int n_r, int n_phi) {
        DiskGrid g;
        g.r_max = r_max;
        g.n_r = n_r;
        g.n_phi = n_phi;
        std::vector<double> xs, ws;
        gauss_legendre(n_r, xs, ws);
        g.r.resize(n_r);
        g.wr.resize(n_r);
        for (int i = 0; i < n_r; ++i) {
            g.r[i] = 0.5 * r_max * (xs[i] + 1.0);
            g.wr[i] = 0.5 * r_max * ws[i];
        }
        return g;
    }

    std::size_t size() const { return std::size_t(n_r) * n_phi; }
    cplx point(std::size_t idx) const {
        return r[idx / n_phi] * unit_phase(kTwoPi * double(idx % n_phi) / n_phi);
    }
    // Hyperbolic area weight c^{-2} r dr dphi at a node.
    double weight(std::size_t idx) const {
        const double rr = r[idx / n_phi];
        const double c = 0.5 * (1.0 - rr * rr);
        return wr[idx / n_phi] * rr / (c * c) * (kTwoPi / n_phi);
    }
};

// Samples of N_m f in the frame components dz^k dzbar^{m-k}/c^m over a grid.
struct NormalData {
    int m = 0;
    DiskGrid grid;
    std::vector<std::vector<cplx>> comp;  // comp[k][node], k = 0..m
};

// N_m f = l_m^* ( (I l_m f) o pi_H ) assembled pointwise: evaluate the
// transform on the geodesic through each phase point, take fiber modes,
// apply l_m^*.
inline NormalData apply_normal(const IttTensor& f, const DiskGrid& grid, int n_theta = 64,
                               const QuadratureSpec& spec = {}, int workers = 1) {
    NormalData out;
    out.m = f.rank;
    out.grid = grid;
    out.comp.assign(out.m + 1, std::vector<cplx>(grid.size(), cplx(0.0)));
    const int m = out.m;
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        const cplx z = grid.point(i);
        std::vector<cplx> samples(n_theta);
        for (int j = 0; j < n_theta; ++j) {
            const double th = kTwoPi * j / n_theta;
            const Geodesic g = project_to_geodesic(PhasePoint(DiskPoint(z), th)).g;
            samples[j] = xray_tensor(f, g, spec);
        }
        std::vector<cplx> modes(m + 1);
        for (int j = 0; j <= m; ++j) modes[j] = fiber_mode(samples, -m + 2 * j);
        const std::vector<cplx> comps = ell_m_adjoint(modes, m);
        for (int k = 0; k <= m; ++k) out.comp[k][i] = comps[k];
    });
    return out;
}

// ---------------------------------------------------------------------------
// Inversion of the normal operator.

// Smooth compactly supported radial-Fourier basis on |z| <= r_support:
//   b_{n,j}(r e^{i phi}) = e^{i n phi} rho^{|n|} P_j(2 rho^2 - 1) (1 - rho^2)^2,
// rho = r / r_support.  The (1-rho^2)^2 factor keeps the disk pairings local.
struct DiskBasis {
    double r_support = 0.9;
    int n_ang = 6;  // angular modes -n_ang..n_ang
    int j_rad = 8;  // radial degrees 0..j_rad-1

    int blocks() const { return 2 * n_ang + 1; }
    int block_mode(int b) const { return b - n_ang; }

    double radial(int n, int j, double r) const {
        const double rho = r / r_support;
        if (rho >= 1.0) return 0.0;
        const double u = 2.0 * rho * rho - 1.0;
        double p0 = 1.0, p1 = u, pj = (j == 0) ? 1.0 : u;
        for (int l = 2; l <= j; ++l) {
            pj = ((2.0 * l - 1.0) * u * p1 - (l - 1.0) * p0) / l;
            p0 = p1;
            p1 = pj;
        }
        const double cutoff = (1.0 - rho * rho) * (1.0 - rho * rho);
        return std::pow(rho, std::abs(n)) * pj * cutoff;
    }

    cplx eval(int n, int j, cplx z) const {
        const double r = std::abs(z);
        if (r >= r_support) return cplx(0.0);
        const double phi = std::arg(z);
        return radial(n, j, r) * unit_phase(n * phi);
    }
};

struct CGOptions {
    int max_iterations = 200;
    double tolerance = 1e-8;  // on the normal residual, relative
};

namespace detail {

// Plain conjugate gradients for a Hermitian positive semi-definite matrix.
inline std::vector<cplx> cg_solve(const std::vector<std::vector<cplx>>& A,
                                  const std::vector<cplx>& b, const CGOptions& opt) {
    const std::size_t n = b.size();
    std::vector<cplx> x(n, cplx(0.0)), r = b, p = b, Ap(n);
    auto dot = [](const std::vector<cplx>& u, const std::vector<cplx>& v) {
        cplx s(0.0);
        for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
        return s;
    };
    const double b_norm = std::sqrt(std::abs(dot(b, b)));
    if (b_norm == 0.0) return x;
    double rho = std::abs(dot(r, r));
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (std::sqrt(rho) <= opt.tolerance * b_norm) return x;
        for (std::size_t i = 0; i < n; ++i) {
            cplx s(0.0);
            for (std::size_t j = 0; j < n; ++j) s += A[i][j] * p[j];
            Ap[i] = s;
        }
        const cplx denom = dot(p, Ap);
        if (std::abs(denom) == 0.0) break;
        const cplx alpha = rho / denom;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        const double rho_new = std::abs(dot(r, r));
        const cplx beta_step = rho_new / rho;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta_step * p[i];
        rho = rho_new;
    }
    if (std::sqrt(rho) > opt.tolerance * b_norm)
        throw CGNonConvergence("cg_solve: residual " + std::to_string(std::sqrt(rho) / b_norm) +
                               " after iteration cap");
    return x;
}

}  // namespace detail

struct NormalInversion {
    IttTensor recovered;
    std::vector<cplx> f0_basis_coeffs;  // against DiskBasis, block-major
    DiskBasis basis;
    double f0_cg_residual = 0.0;
    std::vector<double> stage_fit_residuals;  // polynomial fit residual per tt stage
};

struct NormalInversionOptions {
    DiskBasis basis;
    CGOptions cg;
    GridPtr gram_grid;       // geodesic grid for the Galerkin Gram matrix
    double r_fit = 0.85;     // radii used for polynomial coefficient extraction
    int n_theta = 64;        // fiber samples for the correction terms
    QuadratureSpec quad;
    int workers = 1;
    double zero_rhs_norm = 1e-12;  // skip the scalar solve below this
};

namespace detail {

// Weighted least squares of ring Fourier data m_p(r) ~ coeff * r^p c(r)^k2.
inline cplx fit_ring_coefficient(const DiskGrid& grid, const std::vector<cplx>& mode_by_radius,
                                 int p, int k2, double r_fit, double* residual = nullptr) {
    cplx num(0.0);
    double den = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        if (grid.r[i] > r_fit) continue;
        const double shape =
            pow_int(grid.r[i], p) * pow_int(conf_factor(cplx(grid.r[i], 0.0)), k2);
        const double w = grid.wr[i] * grid.r[i];
        num += w * mode_by_radius[i] * shape;
        den += w * shape * shape;
    }
    const cplx c = (den > 0.0) ? num / den : cplx(0.0);
    if (residual) {
        double rss = 0.0, tot = 0.0;
        for (int i = 0; i < grid.n_r; ++i) {
            if (grid.r[i] > r_fit) continue;
            const double shape =
                pow_int(grid.r[i], p) * pow_int(conf_factor(cplx(grid.r[i], 0.0)), k2);
            rss += std::norm(mode_by_radius[i] - c * shape);
            tot += std::norm(mode_by_radius[i]);
        }
        *residual = (tot > 0.0) ? std::sqrt(rss / tot) : 0.0;
    }
    return c;
}

}  // namespace detail

// Triangular inversion of D = N_m f (Thm.-style, ascending fiber modes):
//   * scalar block: N_0 f0 = mode-0 of l_m A_m D, solved by Galerkin CG over
//     a compactly supported disk basis (the closed-form inverse of N_0 is
//     intentionally not used),
//   * tt blocks k' = 2, 4, ..., m:
//     g_{k'} = [ mode_{k'}(l_m A_m D)/(2 pi) - P_{k'} I^* I (lower stages) ]
//              / (2 B(1/2, k')),
//     coefficients read off the rings of g_{k'} / c^{k'}.
inline NormalInversion invert_normal(const NormalData& D, int p_max,
                                     const NormalInversionOptions& opt) {
    NormalInversion out;
    out.basis = opt.basis;
    const int m = D.m;
    const DiskGrid& grid = D.grid;
    out.recovered.rank = m;
    out.recovered.components.resize(m / 2);

    // --- scalar block ---------------------------------------------------
    std::vector<cplx> rhs0(grid.size());
    const double a_mid = apply_A_m(m, m / 2);
    for (std::size_t i = 0; i < grid.size(); ++i) rhs0[i] = a_mid * D.comp[m / 2][i];

    double rhs0_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) rhs0_norm += grid.weight(i) * std::norm(rhs0[i]);
    rhs0_norm = std::sqrt(rhs0_norm);

    const DiskBasis& basis = opt.basis;
    const int nb = basis.blocks();
    const int nj = basis.j_rad;
    std::vector<cplx> coeffs(std::size_t(nb) * nj, cplx(0.0));

    if (rhs0_norm > opt.zero_rhs_norm) {
        // factorized sinograms: I_0 b_{n,j}(beta, a) = e^{i n beta} s_{n,j}(a)
        GridPtr gram_grid = opt.gram_grid ? opt.gram_grid : make_grid(64, 96);
        const auto& ggrid = *gram_grid;
        const int na = ggrid.n_a();
        std::vector<std::vector<cplx>> s(std::size_t(nb) * nj, std::vector<cplx>(na));
        parallel_for(std::size_t(nb) * nj, opt.workers, [&](std::size_t bi) {
            const int n = basis.block_mode(int(bi) / nj);
            const int j = int(bi) % nj;
            ScalarField bf;
            bf.evaluator = [&basis, n, j](cplx z) { return basis.eval(n, j, z); };
            bf.decay_delta = 2.0;
            for (int ia = 0; ia < na; ++ia)
                s[bi][ia] = xray_scalar(bf, Geodesic{0.0, ggrid.as()[ia]}, opt.quad);
        });

        double worst_residual = 0.0;
        for (int b = 0; b < nb; ++b) {
            const int n = basis.block_mode(b);
            // Gram block and right-hand side for this angular mode
            std::vector<std::vector<cplx>> G(nj, std::vector<cplx>(nj, cplx(0.0)));
            for (int j1 = 0; j1 < nj; ++j1)
                for (int j2 = 0; j2 < nj; ++j2) {
                    cplx acc(0.0);
                    for (int ia = 0; ia < na; ++ia)
                        acc += ggrid.a_weights()[ia] * s[std::size_t(b) * nj + j1][ia] *
                               std::conj(s[std::size_t(b) * nj + j2][ia]);
                    G[j1][j2] = kTwoPi * acc;
                }
            std::vector<cplx> rhs(nj, cplx(0.0));
            for (int j = 0; j < nj; ++j) {
                cplx acc(0.0);
                for (std::size_t i = 0; i < grid.size(); ++i)
                    acc += grid.weight(i) * rhs0[i] * std::conj(basis.eval(n, j, grid.point(i)));
                rhs[j] = acc;
            }
            // diagonal rescaling keeps CG honest on ill-scaled radial families
            std::vector<double> d(nj, 1.0);
            for (int j = 0; j < nj; ++j)
                d[j] = 1.0 / std::sqrt(std::max(std::abs(G[j][j].real()), 1e-300));
            std::vector<std::vector<cplx>> Gs(nj, std::vector<cplx>(nj));
            std::vector<cplx> rs(nj);
            for (int j1 = 0; j1 < nj; ++j1) {
                for (int j2 = 0; j2 < nj; ++j2) Gs[j1][j2] = d[j1] * G[j1][j2] * d[j2];
                rs[j1] = d[j1] * rhs[j1];
            }
            const std::vector<cplx> cs = detail::cg_solve(Gs, rs, opt.cg);
            for (int j = 0; j < nj; ++j) coeffs[std::size_t(b) * nj + j] = d[j] * cs[j];
            // normal residual of the unscaled block
            double rnorm = 0.0, bnorm = 0.0;
            for (int j1 = 0; j1 < nj; ++j1) {
                cplx s1(0.0);
                for (int j2 = 0; j2 < nj; ++j2)
                    s1 += G[j1][j2] * coeffs[std::size_t(b) * nj + j2];
                rnorm += std::norm(s1 - rhs[j1]);
                bnorm += std::norm(rhs[j1]);
            }
            if (bnorm > 0.0) worst_residual = std::max(worst_residual, std::sqrt(rnorm / bnorm));
        }
        out.f0_cg_residual = worst_residual;
    }
    out.f0_basis_coeffs = coeffs;

    // scalar evaluator from the basis expansion
    {
        DiskBasis basis_copy = basis;
        std::vector<cplx> coef_copy = coeffs;
        const int nj_copy = nj;
        ScalarField f0;
        f0.decay_delta = 2.0;
        double cnorm = 0.0;
        for (const cplx& c : coeffs) cnorm += std::norm(c);
        f0.trivial = cnorm == 0.0;
        f0.evaluator = [basis_copy, coef_copy, nj_copy](cplx z) {
            cplx acc(0.0);
            for (int b = 0; b < basis_copy.blocks(); ++b) {
                const int n = basis_copy.block_mode(b);
                for (int j = 0; j < nj_copy; ++j) {
                    const cplx c = coef_copy[std::size_t(b) * nj_copy + j];
                    if (c != cplx(0.0)) acc += c * basis_copy.eval(n, j, z);
                }
            }
            return acc;
        };
        out.recovered.f0 = f0;
    }

    // --- tt blocks, ascending -------------------------------------------
    for (int kp = 2; kp <= m; kp += 2) {
        // lower stages seen by the correction terms
        IttTensor lower_plus;  // f0 + holomorphic stages below kp
        lower_plus.rank = m;
        lower_plus.f0 = out.recovered.f0;
        lower_plus.components.resize(m / 2);
        IttTensor lower_minus = lower_plus;
        for (int k = 2; k < kp; k += 2) {
            lower_plus.components[k / 2 - 1].degree = k;
            lower_plus.components[k / 2 - 1].plus = out.recovered.components[k / 2 - 1].plus;
            lower_minus.components[k / 2 - 1].degree = k;
            lower_minus.components[k / 2 - 1].minus = out.recovered.components[k / 2 - 1].minus;
        }

        const double a_plus = apply_A_m(m, (m + kp) / 2);
        const double a_minus = apply_A_m(m, (m - kp) / 2);
        const double inv_diag = 1.0 / (2.0 * beta(0.5, double(kp)));

        std::vector<cplx> g_plus(grid.size()), g_minus(grid.size());
        parallel_for(grid.size(), opt.workers, [&](std::size_t i) {
            const cplx z = grid.point(i);
            cplx corr_p(0.0), corr_m(0.0);
            for (int j = 0; j < opt.n_theta; ++j) {
                const double th = kTwoPi * j / opt.n_theta;
                const Geodesic g = project_to_geodesic(PhasePoint(DiskPoint(z), th)).g;
                const cplx ph = unit_phase(-kp * th);
                corr_p += xray_tensor(lower_plus, g, opt.quad) * ph;
                corr_m += xray_tensor(lower_minus, g, opt.quad) * std::conj(ph);
            }
            corr_p /= double(opt.n_theta);
            corr_m /= double(opt.n_theta);
            g_plus[i] =
                (a_plus * D.comp[(m + kp) / 2][i] / kTwoPi - corr_p) * inv_diag;
            g_minus[i] =
                (a_minus * D.comp[(m - kp) / 2][i] / kTwoPi - corr_m) * inv_diag;
        });

        // ring Fourier analysis, then radial least squares against r^p c^{kp}
        TTComponent tt;
        tt.degree = kp;
        tt.plus.resize(p_max + 1);
        tt.minus.resize(p_max + 1);
        double worst_fit = 0.0;
        for (int p = 0; p <= p_max; ++p) {
            std::vector<cplx> ring_p(grid.n_r, cplx(0.0)), ring_m(grid.n_r, cplx(0.0));
            for (int ir = 0; ir < grid.n_r; ++ir) {
                for (int jp = 0; jp < grid.n_phi; ++jp) {
                    const std::size_t idx = std::size_t(ir) * grid.n_phi + jp;
                    const cplx ph = unit_phase(-p * kTwoPi * jp / grid.n_phi);
                    ring_p[ir] += g_plus[idx] * ph;
                    ring_m[ir] += g_minus[idx] * std::conj(ph);
                }
                ring_p[ir] /= double(grid.n_phi);
                ring_m[ir] /= double(grid.n_phi);
            }
            double res_p = 0.0, res_m = 0.0;
            tt.plus[p] = detail::fit_ring_coefficient(grid, ring_p, p, kp, opt.r_fit, &res_p);
            tt.minus[p] = detail::fit_ring_coefficient(grid, ring_m, p, kp, opt.r_fit, &res_m);
            worst_fit = std::max({worst_fit, res_p, res_m});
        }
        out.recovered.components[kp / 2 - 1] = tt;
        out.stage_fit_residuals.push_back(worst_fit);
    }
    return out;
}

}  // namespace hxray
