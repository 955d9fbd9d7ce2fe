#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hxray {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when adaptive quadrature exhausts its refinement budget.
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two sinograms living on different grids are combined.
struct GridMismatch : std::invalid_argument {
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when the conjugate-gradient solve for the scalar part stalls.
struct CGNonConvergence : std::runtime_error {
    explicit CGNonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownPhantom : std::invalid_argument {
    explicit UnknownPhantom(const std::string& what) : std::invalid_argument(what) {}
};

// Reduce an angle to [0, 2*pi).
inline double wrap_angle(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    // fmod can return 2*pi for inputs just below a multiple of it
    if (y >= kTwoPi) y -= kTwoPi;
    return y;
}

// Minimal circular distance between two angles.
inline double angle_dist(double x, double y) {
    double d = std::fabs(wrap_angle(x) - wrap_angle(y));
    return std::min(d, kTwoPi - d);
}

inline cplx unit_phase(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

// x^n for small non-negative integer n.
inline cplx pow_int(cplx x, int n) {
    cplx r(1.0, 0.0);
    cplx b = x;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

inline double pow_int(double x, int n) {
    double r = 1.0, b = x;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// Index-sharded map.  Each worker writes only to its own indices, so the
// result is identical for any worker count.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const int nw = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::exception_ptr err;
    std::mutex err_mutex;
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += nw) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace hxray
