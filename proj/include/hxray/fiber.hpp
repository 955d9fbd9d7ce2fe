#pragma once

// Symmetric-tensor <-> phase-function correspondence on the disk.
//
// Tensors are kept in the complex frame {dz^k dzbar^(m-k) / c^m}; every
// formula used here is diagonal or triangular in that frame.  A tt component
// of degree 2k is a holomorphic polynomial (dz^{2k} side) plus an
// antiholomorphic one (dzbar^{2k} side), stored as coefficient lists.

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hxray/geometry.hpp"
#include "hxray/special.hpp"
#include "hxray/util.hpp"

namespace hxray {

// Scalar part: pointwise evaluator plus a decay tag delta with
// |f(z)| <= C x(z)^delta near the boundary.
struct ScalarField {
    std::function<cplx(cplx)> evaluator;
    double decay_delta = 1.0;
    bool trivial = false;  // identically zero; lets the transform skip quadrature

    cplx operator()(cplx z) const { return trivial ? cplx(0.0) : evaluator(z); }

    static ScalarField zero() {
        ScalarField f;
        f.evaluator = [](cplx) { return cplx(0.0); };
        f.decay_delta = 1.0;
        f.trivial = true;
        return f;
    }
};

// Holomorphic side of a tt component: sum_p coeffs[p] z^p dz^degree.
struct HolomorphicPart {
    int degree = 2;
    std::vector<cplx> coeffs;

    cplx eval(cplx z) const {
        cplx r(0.0);
        for (std::size_t p = coeffs.size(); p-- > 0;) r = r * z + coeffs[p];
        return r;
    }
};

// Summability weight of Lemma-style coefficient tests:
// sum_p |a_p|^2 B(2k - 2 delta - 1, p + 1); finite lists are always finite,
// the value guides truncation for non-polynomial parts.
inline double tt_summability(std::span<const cplx> coeffs, int k, double delta) {
    double s = 0.0;
    for (std::size_t p = 0; p < coeffs.size(); ++p)
        s += std::norm(coeffs[p]) * beta(2.0 * k - 2.0 * delta - 1.0, double(p) + 1.0);
    return s;
}

// Transverse-traceless component of degree 2k:
//   plus(z) dz^{2k} + minus(zbar) dzbar^{2k},
// with plus, minus polynomial coefficient lists (minus in powers of zbar).
struct TTComponent {
    int degree = 2;  // 2k
    std::vector<cplx> plus;
    std::vector<cplx> minus;

    cplx eval_plus(cplx z) const {
        cplx r(0.0);
        for (std::size_t p = plus.size(); p-- > 0;) r = r * z + plus[p];
        return r;
    }
    cplx eval_minus(cplx z) const {
        const cplx zb = std::conj(z);
        cplx r(0.0);
        for (std::size_t p = minus.size(); p-- > 0;) r = r * zb + minus[p];
        return r;
    }
    bool empty() const { return plus.empty() && minus.empty(); }
};

// Rank-2n tensor in iterated-tt form: scalar part f0 plus one tt component
// per degree 2k, k = 1..n.  Represents sum_k L^{n-k} f_{2k}.
struct IttTensor {
    int rank = 0;  // 2n
    ScalarField f0 = ScalarField::zero();
    std::vector<TTComponent> components;  // components[k-1] has degree 2k

    int half_rank() const { return rank / 2; }

    static IttTensor scalar(ScalarField f) {
        IttTensor t;
        t.rank = 0;
        t.f0 = std::move(f);
        return t;
    }
};

// Metric multiplication is pure bookkeeping here: the X-ray transform is
// L-invariant, so only the rank tag moves.
inline IttTensor apply_L(IttTensor f, int power) {
    f.rank += 2 * power;
    return f;
}

// l_{2n} f at a phase point:
//   f0(z) + sum_k c^{2k}(z) [ e^{2ik th} plus_k(z) + e^{-2ik th} minus_k(zbar) ].
inline cplx ell_m(const IttTensor& f, const PhasePoint& p) {
    const cplx z = p.base.z();
    cplx acc = f.f0(z);
    const double c = conf_factor(z);
    double c2k = 1.0;
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const int k = int(i) + 1;
        c2k *= c * c;  // c^{2k}
        const auto& tt = f.components[i];
        if (tt.empty()) continue;
        const cplx e = unit_phase(2.0 * k * p.theta);
        acc += c2k * (e * tt.eval_plus(z) + std::conj(e) * tt.eval_minus(z));
    }
    return acc;
}

// Coefficient of e^{ik theta} from uniform fiber samples (trapezoid rule;
// exact for trigonometric polynomials of degree < N/2).
inline cplx fiber_mode(std::span<const cplx> samples, int k) {
    const int n = int(samples.size());
    cplx acc(0.0);
    for (int j = 0; j < n; ++j) acc += samples[j] * unit_phase(-k * kTwoPi * j / n);
    return acc / double(n);
}

// Same, evaluating h(z, theta_j) on N_theta uniform angles.
// Requesting |k| >= N_theta/2 aliases; flagged through the optional pointer.
template <class H>
cplx fiber_mode(const H& h, cplx z, int k, int n_theta, bool* aliasing = nullptr) {
    if (aliasing && 2 * std::abs(k) >= n_theta) *aliasing = true;
    cplx acc(0.0);
    for (int j = 0; j < n_theta; ++j) {
        const double th = kTwoPi * j / n_theta;
        acc += h(z, th) * unit_phase(-k * th);
    }
    return acc / double(n_theta);
}

// Adjoint of l_m.  modes[j] = h_{-m+2j}, j = 0..m; returns the components of
// l_m^* h along dz^k dzbar^{m-k}/c^m:  2^{1-m} pi binom(m,k) h_{-m+2k}.
inline std::vector<cplx> ell_m_adjoint(std::span<const cplx> modes, int m) {
    std::vector<cplx> comp(m + 1);
    const double scale = std::pow(2.0, 1.0 - m) * kPi;
    for (int k = 0; k <= m; ++k) comp[k] = scale * binom(m, k) * modes[k];
    return comp;
}

// Automorphism A_m on the frame element dz^k dzbar^{m-k}/c^m.
inline double apply_A_m(int m, int k) { return std::pow(2.0, m) / binom(m, k); }

// Mirror a tt component so the tensor is real: minus = conj(plus) coefficients.
inline TTComponent realize(TTComponent tt) {
    tt.minus.resize(tt.plus.size());
    for (std::size_t p = 0; p < tt.plus.size(); ++p) tt.minus[p] = std::conj(tt.plus[p]);
    return tt;
}

}  // namespace hxray
