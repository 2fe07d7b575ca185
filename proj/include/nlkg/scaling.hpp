#pragma once

#include <algorithm>
#include <cmath>

#include "nlkg/field.hpp"

namespace nlkg {

/// Value of the field at radius x by local 4-point Lagrange interpolation,
/// zero beyond R.
inline Complex interpolate_cubic(const Field& f, double x) {
    const RadialGrid& g = *f.grid;
    if (x > g.rmax) return {};
    const int n = g.npts;
    const double h = g.h;
    int cell = static_cast<int>(std::floor(x / h));
    cell = std::clamp(cell, 0, n - 2);
    const int i0 = std::clamp(cell - 1, 0, n - 4);
    double basis[4];
    for (int m = 0; m < 4; ++m) {
        double num = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == m) continue;
            num *= (x - (i0 + l) * h) / ((m - l) * h);
        }
        basis[m] = num;
    }
    Complex v{};
    for (int m = 0; m < 4; ++m) v += basis[m] * f[i0 + m];
    return v;
}

/// Resample a field onto another grid (cubic interpolation, zero-extended).
inline Field resample(const Field& f, const GridPtr& target) {
    Field out(target);
    for (int j = 0; j < target->npts; ++j)
        out[j] = interpolate_cubic(f, target->r[j]);
    out[target->npts - 1] = {};
    return out;
}

namespace detail {

inline Field scale_field(const Field& f, double lambda, double amplitude) {
    Field out(f.grid);
    const auto& r = f.grid->r;
    for (int j = 0; j < f.size(); ++j)
        out[j] = amplitude * interpolate_cubic(f, lambda * r[j]);
    out[f.size() - 1] = {};
    return out;
}

} // namespace detail

/// u^lambda(x) = lambda^2 u(lambda x), the profile half of the charge-invariant scaling.
inline Field scale_profile(const Field& u, double lambda) {
    if (lambda <= 0.0) throw std::domain_error("scale: lambda must be positive");
    return detail::scale_field(u, lambda, lambda * lambda);
}

/// v_lambda(x) = lambda^{N-2} v(lambda x), the velocity half.
inline Field scale_velocity(const Field& v, double lambda) {
    if (lambda <= 0.0) throw std::domain_error("scale: lambda must be positive");
    return detail::scale_field(v, lambda, std::pow(lambda, v.grid->dim - 2));
}

inline FieldPair scale_pair(const FieldPair& u, double lambda) {
    return {scale_profile(u.u1, lambda), scale_profile(u.u2, lambda)};
}

/// The charge-invariant scaling (u^lambda, v_lambda) applied to a whole state.
/// lambda = 1 returns the state bitwise unchanged.
inline State scale_state(const State& s, double lambda) {
    if (lambda <= 0.0) throw std::domain_error("scale_state: lambda must be positive");
    if (lambda == 1.0) return s;
    return {scale_profile(s.u1, lambda), scale_profile(s.u2, lambda),
            scale_velocity(s.v1, lambda), scale_velocity(s.v2, lambda)};
}

} // namespace nlkg
