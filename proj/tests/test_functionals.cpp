#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace nlkg;
using oracle::pi;
using oracle::rel;

TEST_CASE("interaction term on Gaussians") {
    const GridPtr g = make_grid(2, 20.0, 4096);
    const Field f = oracle::gaussian(g, 1.0, 1.0);
    const Field zero(g);
    CHECK(interaction_G(f, zero) == 0.0);
    CHECK(rel(interaction_G(f, f), pi / 3.0) < 1e-5);  // int e^{-3r^2} dx over R^2
    const Field fi = oracle::gaussian(g, Complex{0.0, 1.0}, 1.0);
    CHECK(std::abs(interaction_G(f, fi)) < 1e-14);
}

TEST_CASE("charge examples") {
    const GridPtr g = make_grid(2, 20.0, 4096);
    State s(g);
    CHECK(charge_Q(s) == 0.0);

    // v1 = i w u1, v2 = 2 i w u2 gives Q = w ||u1||^2 + 4 w ||u2||^2
    const double om = 0.37;
    s.u1 = oracle::gaussian(g, Complex{1.1, 0.3}, 1.0);
    s.u2 = oracle::gaussian(g, Complex{0.6, -0.2}, 0.7);
    for (int j = 0; j < g->npts; ++j) {
        s.v1[j] = Complex{0.0, om} * s.u1[j];
        s.v2[j] = Complex{0.0, 2.0 * om} * s.u2[j];
    }
    const double want = om * l2_norm_sq(s.u1) + 4.0 * om * l2_norm_sq(s.u2);
    CHECK(rel(charge_Q(s), want) < 1e-10);

    // Gaussian closed form
    State t(g);
    t.u1 = oracle::gaussian(g, 1.0, 1.0);
    t.v1 = oracle::gaussian(g, Complex{0.0, 1.0}, 1.0);
    CHECK(rel(charge_Q(t), pi / 2.0) < 1e-5);
}

TEST_CASE("energy and K/M/L on Gaussian data") {
    const Params p{1.0, 1.0, 0.0, 2};
    const GridPtr g = make_grid(2, 20.0, 4096);
    State s(g);
    CHECK(energy_E(s, p) == 0.0);
    s.u1 = oracle::gaussian(g, 1.0, 1.0);
    s.u2 = oracle::gaussian(g, 1.0, 1.0);
    CHECK(rel(energy_E(s, p), 7.0 * pi / 6.0) < 1e-4);

    const KML k = kml(s, p);
    CHECK(std::abs(k.K) < 1e-15);
    CHECK(rel(k.M, pi / 2.0) < 1e-4);
    CHECK(rel(k.L, -2.0 * pi / 3.0) < 1e-4);  // -pi + pi/3
    CHECK(std::abs(energy_E(s, p) - (k.K + k.M - k.L)) < 1e-12);

    State v(g);
    v.v1 = oracle::gaussian(g, 1.0, 1.0);
    CHECK(rel(kml(v, p).K, pi / 4.0) < 1e-5);
}

TEST_CASE("H matches the scaled-energy derivative on a Gaussian state") {
    const Params p{1.0, 2.0, 0.5, 2};
    const GridPtr g = make_grid(2, 20.0, 4096);
    State s(g);
    CHECK(dilation_H(s, p) == 0.0);
    s.u1 = oracle::gaussian(g, 1.0, 1.0);
    s.u2 = oracle::gaussian(g, 0.5, 0.8);
    s.v1 = oracle::gaussian(g, Complex{0.0, 0.3}, 1.2);
    s.v2 = oracle::gaussian(g, 0.2, 0.9);
    const double eps = 1e-4;
    const double fd = (energy_E(scale_state(s, 1.0 + eps), p) -
                       energy_E(scale_state(s, 1.0 - eps), p)) /
                      (2.0 * eps);
    CHECK(rel(dilation_H(s, p), fd) < 1e-5);
}

TEST_CASE("variational suite: derivative characterizations of P and K") {
    const Params p{1.0, 2.0, 0.5, 2};
    const GridPtr g = make_grid(2, 20.0, 4096);
    const FieldPair u{oracle::gaussian(g, 1.0, 1.0), oracle::gaussian(g, 0.6, 0.8)};
    const VariationalSuite vs = variational_suite(u, p);
    const double eps = 1e-4;

    auto J_of = [&](const FieldPair& q) { return variational_suite(q, p).Jomega; };

    // P_omega = d/dlambda J(u^lambda) at lambda = 1
    const double fdP = (J_of(scale_pair(u, 1.0 + eps)) - J_of(scale_pair(u, 1.0 - eps))) /
                       (2.0 * eps);
    CHECK(rel(vs.Pomega, fdP) < 1e-5);

    // K_omega = d/dlambda J(lambda u) at lambda = 1
    auto amp = [&](double c) {
        FieldPair q = u;
        for (int j = 0; j < g->npts; ++j) {
            q.u1[j] *= c;
            q.u2[j] *= c;
        }
        return q;
    };
    const double fdK = (J_of(amp(1.0 + eps)) - J_of(amp(1.0 - eps))) / (2.0 * eps);
    CHECK(rel(vs.Komega, fdK) < 1e-6);

    const FieldPair zero{Field(g), Field(g)};
    const VariationalSuite z = variational_suite(zero, p);
    CHECK(z.Jomega == 0.0);
    CHECK(z.Momega == 0.0);
    CHECK(z.Komega == 0.0);
    CHECK(z.Pomega == 0.0);
}

TEST_CASE("action and its Nehari-side decomposition") {
    const GridPtr g = make_grid(2, 20.0, 2048);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const State s = oracle::random_state(g, rng);
        const Params p{1.0, 2.0, 0.5, 2};
        const ActionValue a = action_S(s, p);
        CHECK(rel(a.direct, a.decomposed) < 1e-10);
        const Params p0{1.0, 2.0, 0.0, 2};
        CHECK(action_S(s, p0).direct == Catch::Approx(energy_E(s, p0)).epsilon(1e-14));
    }
}

TEST_CASE("report identities hold to rounding on random states") {
    const GridPtr g = make_grid(2, 25.0, 2048);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const State s = oracle::random_state(g, rng);
        const Params p{1.0, 2.0, 0.45, 2};
        const FunctionalReport f = evaluate_report(s, p);
        const double a = p.alpha();
        const double scale = std::max({1.0, std::abs(f.E), std::abs(f.Momega)});
        CHECK(std::abs(f.E - (f.K + f.M - f.L)) < 1e-10 * scale);
        CHECK(std::abs(f.H - (-a * f.K + a * f.M - (a + 2.0) * f.L)) < 1e-10 * scale);
        CHECK(std::abs(f.Somega - (f.E - p.omega * f.Q)) < 1e-10 * scale);
        CHECK(std::abs(f.Jomega - (f.Momega - f.L)) < 1e-10 * scale);
        CHECK(std::abs((a + 2.0) * f.Jomega - f.Pomega - 2.0 * f.Momega) < 1e-10 * scale);
        CHECK(std::abs(a * f.Jomega - f.Pomega - 2.0 * f.L) < 1e-10 * scale);
    }
}

TEST_CASE("standing-wave velocity identity K(psi) = M(phi) - M_omega(phi)") {
    const GridPtr g = make_grid(2, 20.0, 2048);
    const Params p{1.0, 2.0, 0.5, 2};
    State s(g);
    s.u1 = oracle::gaussian(g, 0.9, 1.0);
    s.u2 = oracle::gaussian(g, 0.7, 0.9);
    for (int j = 0; j < g->npts; ++j) {
        s.v1[j] = Complex{0.0, p.omega} * s.u1[j];
        s.v2[j] = Complex{0.0, 2.0 * p.omega} * s.u2[j];
    }
    const FunctionalReport f = evaluate_report(s, p);
    CHECK(std::abs(f.K - (f.M - f.Momega)) < 1e-10 * std::abs(f.M));
}
