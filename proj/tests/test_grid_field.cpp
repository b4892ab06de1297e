#include <catch2/catch_amalgamated.hpp>

#include "nlslab/field.hpp"

using namespace nlslab;

TEST_CASE("grid construction and validation", "[grid]") {
    Grid g = build_grid(2, 64, kTwoPi, 64, kTwoPi);
    CHECK(g.dk() == Catch::Approx(1.0));
    CHECK(g.mode_of_index(0) == 0);
    CHECK(g.mode_of_index(63) == -1);
    CHECK(g.mode_of_index(32) == -32);
    CHECK(g.total_points() == 64u * 64u * 64u);

    CHECK_THROWS_AS(build_grid(2, 63, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(4, 64, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2, 64, -1.0), std::invalid_argument);

    Grid g3 = build_grid(3, 16, kTwoPi, 16, kTwoPi);
    CHECK(g3.total_points() == 16u * 16u * 16u * 16u);
}

TEST_CASE("delta transforms to a flat spectrum", "[field][fft]") {
    Grid g = integer_grid(2, 16);
    SpaceTimeField f(g, Rep::physical);
    f.at(0, 0, 0) = 1.0;
    SpaceTimeField hat = transform(f, Direction::forward);
    double expect = 1.0 / std::sqrt(static_cast<double>(g.total_points()));
    for (const cplx& v : hat.data()) {
        REQUIRE(std::fabs(v.real() - expect) <= 1e-14);
        REQUIRE(std::fabs(v.imag()) <= 1e-14);
    }
}

TEST_CASE("plane wave maps to a single mode", "[field][fft]") {
    Grid g = integer_grid(2, 16);
    SpaceTimeField f(g, Rep::physical);
    int k1 = 3, k2 = -5;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            double x1 = i1 * g.dx(), x2 = i2 * g.dx();
            f.at(0, i1, i2) = std::exp(cplx(0.0, k1 * x1 + k2 * x2));
        }
    SpaceTimeField hat = transform(f, Direction::forward);
    double peak = std::abs(hat.at(0, g.index_of_mode(k1), g.index_of_mode(k2)));
    CHECK(peak == Catch::Approx(std::sqrt(static_cast<double>(g.total_points()))));
    double off = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            if (i1 != g.index_of_mode(k1) || i2 != g.index_of_mode(k2))
                off = std::max(off, std::abs(hat.at(0, i1, i2)));
    CHECK(off <= 1e-10 * peak);
}

TEST_CASE("round trip and Parseval", "[field][fft]") {
    for (int dim : {2, 3}) {
        Grid g = dim == 2 ? integer_grid(2, 32, 16) : integer_grid(3, 8, 8);
        Rng rng(7 + dim);
        SpaceTimeField f = SpaceTimeField::random(g, rng, Rep::physical);
        double n0 = f.l2();
        SpaceTimeField hat = transform(f, Direction::forward);
        CHECK(std::fabs(hat.l2() - n0) <= 1e-12 * n0);
        SpaceTimeField back = transform(hat, Direction::inverse);
        double err = 0.0;
        for (std::size_t i = 0; i < f.data().size(); ++i)
            err += std::norm(back.data()[i] - f.data()[i]);
        CHECK(std::sqrt(err) <= 1e-12 * n0);
    }
}

TEST_CASE("representation mismatch is rejected", "[field]") {
    Grid g = integer_grid(2, 8);
    SpaceTimeField f(g, Rep::fourier);
    CHECK_THROWS_AS(f.transformed(Direction::forward), std::invalid_argument);
}
