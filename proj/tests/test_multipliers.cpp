#include <catch2/catch_amalgamated.hpp>

#include "nlslab/caps3d.hpp"
#include "nlslab/multipliers.hpp"

using namespace nlslab;

TEST_CASE("P_N acts as identity where its symbol is one", "[project]") {
    Grid g = integer_grid(2, 32);
    SpaceTimeField f(g, Rep::fourier);
    f.set_mode(0, 4, 0, 0, 1.0);  // |xi| = 4, psi_4(4) = 1
    SpaceTimeField p = project(f, MultiplierSpec::frequency(4));
    double diff = 0.0;
    for (std::size_t i = 0; i < f.data().size(); ++i) diff += std::norm(p.data()[i] - f.data()[i]);
    CHECK(std::sqrt(diff) <= 1e-14);
}

TEST_CASE("frequency shells reconstruct the field", "[project]") {
    Grid g = integer_grid(2, 32);
    Rng rng(11);
    SpaceTimeField u = SpaceTimeField::random(g, rng, Rep::fourier);
    SpaceTimeField sum(g, Rep::fourier);
    for (std::uint64_t n = 1; n <= 64; n <<= 1) {
        SpaceTimeField p = project(u, MultiplierSpec::frequency(n));
        for (std::size_t i = 0; i < sum.data().size(); ++i) sum.data()[i] += p.data()[i];
    }
    double err = 0.0;
    for (std::size_t i = 0; i < u.data().size(); ++i) err += std::norm(sum.data()[i] - u.data()[i]);
    CHECK(std::sqrt(err) <= 1e-10 * u.l2());
}

TEST_CASE("angular sectors reconstruct in 2D", "[project][angular]") {
    Grid g = integer_grid(2, 32);
    Rng rng(12);
    SpaceTimeField u = SpaceTimeField::random(g, rng, Rep::fourier);
    const std::uint64_t aperture = 64;
    SpaceTimeField sum(g, Rep::fourier);
    for (long j = 0; j < static_cast<long>(aperture); ++j) {
        SpaceTimeField p = project(u, MultiplierSpec::cap2d(aperture, j));
        for (std::size_t i = 0; i < sum.data().size(); ++i) sum.data()[i] += p.data()[i];
    }
    double err = 0.0;
    for (std::size_t i = 0; i < u.data().size(); ++i) err += std::norm(sum.data()[i] - u.data()[i]);
    CHECK(std::sqrt(err) <= 1e-10 * u.l2());
}

TEST_CASE("sector weights form a partition on the circle", "[angular]") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        double theta = rng.uniform(-M_PI, M_PI);
        double s = 0.0;
        for (long j = 0; j < 128; ++j) s += angular2d::sector_weight(128, j, theta);
        REQUIRE(std::fabs(s - 1.0) <= 1e-12);
    }
    // antipodal pairing: the same sector covers theta and theta - pi
    CHECK(angular2d::sector_weight(64, 10, 10.0 * M_PI / 64.0) ==
          Catch::Approx(angular2d::sector_weight(64, 10, 10.0 * M_PI / 64.0 - M_PI)));
}

TEST_CASE("frequency and modulation projections commute", "[project]") {
    Grid g = integer_grid(2, 16, 32);
    Rng rng(14);
    SpaceTimeField u = SpaceTimeField::random(g, rng, Rep::fourier);
    auto pn = MultiplierSpec::frequency(2);
    auto ql = MultiplierSpec::modulation(4, 1.0);
    SpaceTimeField a = project(project(u, pn), ql);
    SpaceTimeField b = project(project(u, ql), pn);
    // the symbols commute; composition rounds once per application
    for (std::size_t i = 0; i < a.data().size(); ++i)
        REQUIRE(std::abs(a.data()[i] - b.data()[i]) <=
                1e-15 * (1.0 + std::abs(a.data()[i])));
}

TEST_CASE("modulation projection needs a time axis", "[project]") {
    Grid g = integer_grid(2, 16);
    SpaceTimeField u(g, Rep::fourier);
    CHECK_THROWS_AS(project(u, MultiplierSpec::modulation(2, 1.0)), std::invalid_argument);
}

TEST_CASE("3D cap families cover the sphere with small overlap", "[caps3d]") {
    Rng rng(15);
    for (int aperture : {1, 2, 4, 8, 16, 32, 64}) {
        CapFamily3D caps(aperture);
        for (int i = 0; i < 2000; ++i) {
            double z = rng.uniform(-1.0, 1.0);
            double phi = rng.uniform(0.0, kTwoPi);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            Vec3 x{r * std::cos(phi), r * std::sin(phi), z};
            int m = caps.multiplicity(x);
            REQUIRE(m >= 1);
            REQUIRE(m <= 3);
        }
    }
}

TEST_CASE("cap angle function", "[caps3d]") {
    CapFamily3D caps(8);
    CHECK(caps.alpha(3, 3) == 0.0);
    // alpha is symmetric and respects the line (antipodal) identification
    for (int j1 : {0, 5, 20})
        for (int j2 : {1, 7, 33}) REQUIRE(caps.alpha(j1, j2) == Catch::Approx(caps.alpha(j2, j1)));
}

TEST_CASE("separated cap count is A-independent", "[caps3d]") {
    // number of caps at line angle ~ 1/A from a fixed cap stays bounded
    std::size_t worst = 0;
    for (int aperture : {4, 8, 16, 32, 64}) {
        CapFamily3D caps(aperture);
        std::size_t biggest = 0;
        for (int j1 = 0; j1 < caps.size(); j1 += std::max(1, caps.size() / 40)) {
            biggest = std::max(biggest, caps.separated_neighbors(j1, 0.5, 2.0).size());
        }
        worst = std::max(worst, biggest);
        CHECK(biggest >= 1);
    }
    CHECK(worst <= 160);  // frozen from exhaustive enumeration over these apertures
}

TEST_CASE("3D caps reconstruct", "[caps3d][project]") {
    Grid g = integer_grid(3, 8);
    Rng rng(16);
    SpaceTimeField u = SpaceTimeField::random(g, rng, Rep::fourier);
    auto family = std::make_shared<const CapFamily3D>(2);
    SpaceTimeField sum(g, Rep::fourier);
    for (long j = 0; j < family->size(); ++j) {
        SpaceTimeField p = project(u, MultiplierSpec::cap3d(family, j));
        for (std::size_t i = 0; i < sum.data().size(); ++i) sum.data()[i] += p.data()[i];
    }
    double err = 0.0;
    for (std::size_t i = 0; i < u.data().size(); ++i) err += std::norm(sum.data()[i] - u.data()[i]);
    CHECK(std::sqrt(err) <= 1e-10 * u.l2());
}
