#include <catch2/catch_amalgamated.hpp>

#include "nlslab/norms.hpp"

using namespace nlslab;

TEST_CASE("sobolev norm on single and paired modes", "[norms]") {
    Grid g = integer_grid(2, 32);
    SpaceTimeField f(g, Rep::fourier);
    f.set_mode(0, 0, 0, 0, 1.0);
    CHECK(sobolev_norm(f, 0.7) == Catch::Approx(1.0));
    CHECK(sobolev_norm(f, -2.0) == Catch::Approx(1.0));

    SpaceTimeField h(g, Rep::fourier);
    h.set_mode(0, 3, 4, 0, 1.0);  // |xi| = 5
    double s = 1.3;
    CHECK(sobolev_norm(h, s) == Catch::Approx(std::pow(1.0 + 25.0, s / 2.0)));

    SpaceTimeField two(g, Rep::fourier);
    two.set_mode(0, 2, 0, 0, 0.6);
    two.set_mode(0, 0, 7, 0, -0.8);
    CHECK(sobolev_norm(two, 0.0) == Catch::Approx(1.0));
    CHECK(sobolev_norm(two, 0.0) == Catch::Approx(two.l2_avg()));
}

TEST_CASE("xsb norm of a single space-time mode is N^s L^b", "[norms]") {
    Grid g = integer_grid(2, 16, 64);
    double sigma = 1.0;
    std::uint64_t nshell = 4, lshell = 2;
    // |xi| = 4 so psi_4 = 1; tau = -sigma|xi|^2 + L so psi_2(L) = 1
    SpaceTimeField f(g, Rep::fourier);
    f.set_mode(-16 + 2, 4, 0, 0, 1.0);
    for (double p : {1.0, 2.0, kInfExponent}) {
        NormSpec spec(0.5, 0.4, p, sigma);
        double expect = std::pow(double(nshell), spec.s) * std::pow(double(lshell), spec.b);
        REQUIRE(xsb_norm(f, spec) == Catch::Approx(expect).epsilon(1e-10));
    }
    SpaceTimeField z(g, Rep::fourier);
    CHECK(xsb_norm(z, NormSpec(0.5, 0.4, 2.0, sigma)) == 0.0);
}

TEST_CASE("two-shell field orders the p-scale", "[norms]") {
    Grid g = integer_grid(2, 16, 64);
    double sigma = 1.0;
    SpaceTimeField f(g, Rep::fourier);
    double amp = 0.35;
    f.set_mode(-16 + 2, 4, 0, 0, amp);   // modulation shell 2
    f.set_mode(-16 + 8, 4, 0, 0, amp);   // modulation shell 8
    double s = 0.5, b = 0.4;
    double m = amp;
    // direct two-term oracle
    double n_s = std::pow(4.0, s);
    double p1 = n_s * (std::pow(2.0, b) + std::pow(8.0, b)) * m;
    double pinf = n_s * std::max(std::pow(2.0, b), std::pow(8.0, b)) * m;
    CHECK(xsb_norm(f, NormSpec(s, b, 1.0, sigma)) == Catch::Approx(p1).epsilon(1e-10));
    CHECK(xsb_norm(f, NormSpec(s, b, kInfExponent, sigma)) == Catch::Approx(pinf).epsilon(1e-10));
    CHECK(xsb_norm(f, NormSpec(s, b, kInfExponent, sigma)) <=
          xsb_norm(f, NormSpec(s, b, 1.0, sigma)));
}

TEST_CASE("p-monotonicity on random fields", "[norms]") {
    Grid g = integer_grid(2, 8, 16);
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        SpaceTimeField f = SpaceTimeField::random(g, rng, Rep::fourier);
        double s = rng.uniform(-1.0, 1.5), b = rng.uniform(-0.5, 0.8);
        double ninf = xsb_norm(f, NormSpec(s, b, kInfExponent, 1.0));
        double n2 = xsb_norm(f, NormSpec(s, b, 2.0, 1.0));
        double n1 = xsb_norm(f, NormSpec(s, b, 1.0, 1.0));
        REQUIRE(ninf <= n2 * (1.0 + 1e-12));
        REQUIRE(n2 <= n1 * (1.0 + 1e-12));
    }
}

TEST_CASE("strict positivity of added content", "[norms]") {
    Grid g = integer_grid(2, 16, 32);
    SpaceTimeField f(g, Rep::fourier);
    f.set_mode(2, 2, 0, 0, 1.0);
    NormSpec spec(0.3, 0.25, 2.0, 1.0);
    double base = xsb_norm(f, spec);
    SpaceTimeField h = f;
    h.set_mode(5, 0, 3, 0, 0.5);
    CHECK(xsb_norm(h, spec) > base);
}

TEST_CASE("mixed norms", "[norms]") {
    // unit-measure grid: constants have norm one
    Grid g = build_grid(2, 8, 1.0, 8, 1.0);
    SpaceTimeField f(g, Rep::physical);
    for (cplx& v : f.data()) v = 1.0;
    CHECK(mixed_norm(f, 3.0, 5.0) == Catch::Approx(1.0));
    CHECK(mixed_norm(f, kInfExponent, kInfExponent) == Catch::Approx(1.0));

    // p = q = 2 equals the integral L2 norm
    Grid g2 = integer_grid(2, 8, 16);
    Rng rng(41);
    SpaceTimeField r = SpaceTimeField::random(g2, rng, Rep::physical);
    CHECK(mixed_norm(r, 2.0, 2.0) == Catch::Approx(r.l2_integral()).epsilon(1e-12));

    // plane wave constant in time: L^inf_t L^2_x equals the spatial L2 norm
    SpaceTimeField w(g2, Rep::physical);
    for (int it = 0; it < g2.n_t; ++it)
        for (int i1 = 0; i1 < g2.n; ++i1)
            for (int i2 = 0; i2 < g2.n; ++i2)
                w.at(it, i1, i2) = std::exp(cplx(0.0, 2.0 * i1 * g2.dx()));
    double spatial_l2 = std::sqrt(std::pow(g2.dx(), 2) * g2.n * g2.n);
    CHECK(mixed_norm(w, kInfExponent, 2.0) == Catch::Approx(spatial_l2));
}

TEST_CASE("scaling-critical Sobolev norm is grid-pair invariant", "[norms][scaling]") {
    // data phi on the coarse grid, lambda^{-1} phi(x / lambda) on the refined
    // double-period grid; at s = s_c = d/2 - 1 the integral H^s norms agree.
    for (int dim : {2, 3}) {
        int n = 64;  // shells 20..28 keep the inhomogeneous weight within 1%
        Grid coarse(dim, n, kTwoPi);
        Grid fine(dim, 2 * n, 2.0 * kTwoPi);
        double sc = dim / 2.0 - 1.0;
        Rng rng(53 + dim);
        SpaceTimeField phi(coarse, Rep::fourier);
        SpaceTimeField phi_l(fine, Rep::fourier);
        // populate a high shell so the inhomogeneous weight is near-homogeneous
        int lo = (5 * n) / 16, hi = (7 * n) / 16;
        for (int k1 = -hi; k1 <= hi; ++k1)
            for (int k2 = -hi; k2 <= hi; ++k2)
                for (int k3 = (dim == 3 ? -hi : 0); k3 <= (dim == 3 ? hi : 0); ++k3) {
                    double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
                    if (r < lo || r > hi) continue;
                    cplx c = rng.gaussian_complex();
                    phi.set_mode(0, k1, k2, k3, c);
                    phi_l.set_mode(0, k1, k2, k3, c / 2.0);  // same physical frequency k/2 on the fine lattice
                }
        double a = sobolev_norm_integral(phi, sc);
        double b = sobolev_norm_integral(phi_l, sc);
        REQUIRE(std::fabs(a - b) <= 0.01 * a);
    }
}
