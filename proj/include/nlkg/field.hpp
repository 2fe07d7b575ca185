#pragma once

#include <complex>
#include <vector>

#include "nlkg/errors.hpp"
#include "nlkg/grid.hpp"

namespace nlkg {

using Complex = std::complex<double>;

/// Samples of a complex radial function on a grid; the value at r = R is 0.
struct Field {
    GridPtr grid;
    std::vector<Complex> values;

    Field() = default;
    explicit Field(GridPtr g) : grid(std::move(g)), values(grid->npts, Complex{}) {}
    Field(GridPtr g, std::vector<Complex> v) : grid(std::move(g)), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid->npts)
            throw std::domain_error("field: value count does not match grid");
    }

    int size() const { return grid->npts; }
    Complex& operator[](int j) { return values[j]; }
    const Complex& operator[](int j) const { return values[j]; }
};

inline void require_same_grid(const Field& f, const Field& g, const char* where) {
    if (!f.grid || !g.grid || !same_grid(*f.grid, *g.grid))
        throw GridMismatchError(std::string(where) + ": fields live on different grids");
}

/// A point (u1, u2, v1, v2) of the energy space X, all on one grid.
struct State {
    Field u1, u2, v1, v2;

    explicit State(GridPtr g) : u1(g), u2(g), v1(g), v2(g) {}
    State(Field u1_, Field u2_, Field v1_, Field v2_)
        : u1(std::move(u1_)), u2(std::move(u2_)), v1(std::move(v1_)), v2(std::move(v2_)) {
        require_same_grid(u1, u2, "state");
        require_same_grid(u1, v1, "state");
        require_same_grid(u1, v2, "state");
    }

    const GridPtr& grid() const { return u1.grid; }
};

/// Just the profile pair (u1, u2); used by the functionals that ignore velocities.
struct FieldPair {
    Field u1, u2;

    FieldPair(Field u1_, Field u2_) : u1(std::move(u1_)), u2(std::move(u2_)) {
        require_same_grid(u1, u2, "field pair");
    }
    const GridPtr& grid() const { return u1.grid; }
};

} // namespace nlkg
