#pragma once

#include <cmath>

#include "nlkg/field.hpp"

namespace nlkg {

/// Re int f conj(g) dx over R^N by weighted quadrature.
inline double l2_inner(const Field& f, const Field& g) {
    require_same_grid(f, g, "l2_inner");
    const auto& w = f.grid->w;
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j)
        acc += w[j] * (f[j].real() * g[j].real() + f[j].imag() * g[j].imag());
    return acc;
}

inline double l2_norm_sq(const Field& f) { return l2_inner(f, f); }

/// Im int f conj(g) dx, i.e. the real pairing (f, i g)_{L^2}.
inline double l2_inner_imag(const Field& f, const Field& g) {
    require_same_grid(f, g, "l2_inner_imag");
    const auto& w = f.grid->w;
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j)
        acc += w[j] * (f[j].imag() * g[j].real() - f[j].real() * g[j].imag());
    return acc;
}

/// Radial Laplacian f'' + (N-1)/r f' by second-order central differences.
/// At r = 0 the regularity limit lap f(0) = N f''(0) ~ 2N (f1 - f0)/h^2;
/// at r = R the stencil closes with ghost value 0.
inline Field laplacian(const Field& f) {
    const RadialGrid& g = *f.grid;
    if (g.npts < 3) throw std::domain_error("laplacian: need at least 3 grid points");
    const double h = g.h;
    const int n = g.npts;
    const int N = g.dim;
    Field out(f.grid);
    out[0] = 2.0 * N * (f[1] - f[0]) / (h * h);
    for (int j = 1; j < n; ++j) {
        const Complex fp = (j + 1 < n) ? f[j + 1] : Complex{};
        out[j] = (fp - 2.0 * f[j] + f[j - 1]) / (h * h) +
                 (N - 1) / g.r[j] * (fp - f[j - 1]) / (2.0 * h);
    }
    return out;
}

/// d/dr by 5-point central differences, one-sided at the boundary nodes.
inline Field radial_derivative(const Field& f) {
    const RadialGrid& g = *f.grid;
    if (g.npts < 5) throw std::domain_error("radial_derivative: need at least 5 grid points");
    const double d = 12.0 * g.h;
    const int n = g.npts;
    Field out(f.grid);
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / d;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / d;
    for (int j = 2; j < n - 2; ++j)
        out[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) / d;
    out[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]) / d;
    out[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]) / d;
    return out;
}

inline double grad_norm_sq(const Field& f) {
    Field df = radial_derivative(f);
    return l2_norm_sq(df);
}

/// ||f||_{L^2}^2 + ||grad f||_{L^2}^2.
inline double h1_norm_sq(const Field& f) { return l2_norm_sq(f) + grad_norm_sq(f); }

/// Squared X-norm: sum of H^1 norms of u1, u2 plus L^2 norms of v1, v2.
inline double xnorm_sq(const State& s) {
    return h1_norm_sq(s.u1) + h1_norm_sq(s.u2) + l2_norm_sq(s.v1) + l2_norm_sq(s.v2);
}

inline double xnorm(const State& s) { return std::sqrt(xnorm_sq(s)); }

} // namespace nlkg
