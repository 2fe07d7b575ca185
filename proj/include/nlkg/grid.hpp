#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nlkg {

/// Uniform radial mesh on [0, R] with quadrature weights for integrals over R^N,
///   int_{R^N} f(|x|) dx  ~=  sum_j w[j] f(r[j]),   w[j] = sigma_N r_j^{N-1} h c_j.
/// c_j is the trapezoid end factor; for N=2 the node-0 weight carries the
/// Euler-Maclaurin correction sigma_2 h^2/12 (the integrand sigma_2 r f(r) has
/// slope sigma_2 f(0) at r=0), which restores O(h^4) accuracy for smooth radial
/// profiles. For N=3 the integrand r^2 f has vanishing endpoint derivatives and
/// plain trapezoid is already O(h^4) on such profiles.
struct RadialGrid {
    int dim;
    double rmax;
    int npts;
    double h;
    std::vector<double> r;
    std::vector<double> w;

    RadialGrid(int dim_, double rmax_, int npts_) : dim(dim_), rmax(rmax_), npts(npts_) {
        if (dim != 2 && dim != 3) throw std::domain_error("grid: dim must be 2 or 3");
        if (rmax <= 0.0) throw std::domain_error("grid: rmax must be positive");
        if (npts < 16) throw std::domain_error("grid: npts must be >= 16");
        h = rmax / (npts - 1);
        r.resize(npts);
        w.resize(npts);
        const double sigma = surface_measure();
        for (int j = 0; j < npts; ++j) {
            r[j] = j * h;
            w[j] = sigma * std::pow(r[j], dim - 1) * h;
        }
        w[0] *= 0.5;
        w[npts - 1] *= 0.5;
        if (dim == 2) w[0] += sigma * h * h / 12.0;
    }

    /// sigma_N: 2*pi for N=2, 4*pi for N=3.
    double surface_measure() const {
        return dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr make_grid(int dim, double rmax, int npts) {
    return std::make_shared<const RadialGrid>(dim, rmax, npts);
}

inline bool same_grid(const RadialGrid& a, const RadialGrid& b) {
    return &a == &b || (a.dim == b.dim && a.npts == b.npts && a.rmax == b.rmax);
}

} // namespace nlkg
