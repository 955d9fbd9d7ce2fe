#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hxray/util.hpp"

namespace hxray {

inline double log_beta(double x, double y) {
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

inline double beta(double x, double y) { return std::exp(log_beta(x, y)); }

// Binomial coefficient, exact in double for the ranges used here.
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

// (num)! / (den)! through log-gamma; overflows fast otherwise.
inline double log_factorial_ratio(int num, int den) {
    return std::lgamma(double(num) + 1.0) - std::lgamma(double(den) + 1.0);
}

// Gauss-Legendre rule on [-1,1].  Newton iteration on P_n, standard.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Gauss-Chebyshev rule of the second kind: exact for
// integral of poly(x) * sqrt(1-x^2) over [-1,1] up to degree 2n-1.
inline void gauss_chebyshev2(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 1; i <= n; ++i) {
        double phi = kPi * i / (n + 1.0);
        nodes[i - 1] = std::cos(phi);
        weights[i - 1] = kPi / (n + 1.0) * std::sin(phi) * std::sin(phi);
    }
}

}  // namespace hxray
