#include <catch2/catch_amalgamated.hpp>

#include "nlslab/multipliers.hpp"
#include "nlslab/pair_engine.hpp"
#include "nlslab/sparse_wave.hpp"

using namespace nlslab;

namespace {

// dense-grid reference: densify both factors, multiply pointwise in physical
// space, project, and take the coefficient-normalized L2 norm
double dense_projected_product_norm(const LocalizedWave& u1, const LocalizedWave& u2,
                                    const Grid& g, const OutputVariant& v, int draw) {
    SpaceTimeField f1 = to_grid(u1, g, draw).transformed(Direction::inverse);
    SpaceTimeField f2 = to_grid(u2, g, draw).transformed(Direction::inverse);
    SpaceTimeField prod(g, Rep::physical);
    double scale = std::sqrt(static_cast<double>(g.total_points()));
    for (std::size_t i = 0; i < prod.data().size(); ++i)
        prod.data()[i] = f1.data()[i] * f2.data()[i];
    SpaceTimeField p = project(prod, MultiplierSpec::frequency(v.n3));
    if (v.l3 != 0) p = project(p, MultiplierSpec::modulation(v.l3, v.sigma_out));
    (void)scale;
    return p.l2_avg();
}

}  // namespace

TEST_CASE("localized wave construction", "[wave]") {
    WaveLocalization none;
    LocalizedWave w = make_localized_wave(2, 4, 2, 1.3, none, 4, 99);
    CHECK(w.modes() > 0);
    // support honours the half-level thresholds
    for (std::size_t node = 0; node < w.nodes(); ++node) {
        double r = std::sqrt(w.xi_norm2(node));
        REQUIRE(r > 3.0);
        REQUIRE(r < 6.0);
        for (std::uint32_t m = w.node_begin[node]; m < w.node_end(node); ++m) {
            double mod = std::fabs(w.mode_tau[m] + 1.3 * w.xi_norm2(node));
            REQUIRE(mod > 1.5);
            REQUIRE(mod < 3.0);
        }
    }
    // unit norm per draw
    for (int d = 0; d < w.draws; ++d) {
        double s = 0.0;
        for (std::size_t m = 0; m < w.modes(); ++m) s += std::norm(w.coef_row(m)[d]);
        REQUIRE(std::sqrt(s) == Catch::Approx(1.0));
    }
}

TEST_CASE("same seed reproduces the field exactly", "[wave]") {
    WaveLocalization none;
    LocalizedWave a = make_localized_wave(2, 4, 1, -0.7, none, 2, 1234);
    LocalizedWave b = make_localized_wave(2, 4, 1, -0.7, none, 2, 1234);
    REQUIRE(a.coef == b.coef);
    LocalizedWave c = make_localized_wave(2, 4, 1, -0.7, none, 2, 1235);
    REQUIRE(a.coef != c.coef);
}

TEST_CASE("per-mode energy is uniform on average", "[wave]") {
    WaveLocalization none;
    const int draws = 100;
    LocalizedWave w = make_localized_wave(2, 2, 1, 1.0, none, draws, 777);
    double expect = 1.0 / static_cast<double>(w.modes());
    for (std::size_t m = 0; m < w.modes(); m += 7) {
        double avg = 0.0;
        for (int d = 0; d < draws; ++d) avg += std::norm(w.coef_row(m)[d]);
        avg /= draws;
        REQUIRE(avg > 0.2 * expect);
        REQUIRE(avg < 5.0 * expect);
    }
}

TEST_CASE("empty support is an error", "[wave]") {
    WaveLocalization impossible;
    impossible.extra = [](const std::array<int, 3>&) { return false; };
    CHECK_THROWS(make_localized_wave(2, 4, 1, 1.0, impossible, 1, 5));
}

TEST_CASE("densification rejects undersized grids", "[wave]") {
    WaveLocalization none;
    LocalizedWave w = make_localized_wave(2, 8, 1, 2.0, none, 1, 5);  // tau ~ 2*144
    CHECK_THROWS_AS(to_grid(w, integer_grid(2, 64, 64)), std::invalid_argument);
}

TEST_CASE("sparse product matches the dense grid product", "[engine][oracle]") {
    Grid g = integer_grid(2, 16, 64);
    WaveLocalization none;
    double s1 = 0.9 * std::sqrt(2.0), s2 = -0.7;
    LocalizedWave u1 = make_localized_wave(2, 2, 1, s1, none, 3, 2024);
    LocalizedWave u2 = make_localized_wave(2, 2, 2, s2, none, 3, 2025);

    std::vector<OutputVariant> variants = {
        {2, 0, 0.0},          // P_2 only
        {1, 0, 0.0},          // P_1 only
        {2, 2, 1.1},          // Q_2^{1.1} P_2
        {4, 1, -0.35},        // Q_1^{-0.35} P_4
    };
    auto got = projected_product_norms(u1, u2, variants, 2);
    for (std::size_t v = 0; v < variants.size(); ++v) {
        for (int d = 0; d < 3; ++d) {
            double ref = dense_projected_product_norm(u1, u2, g, variants[v], d);
            REQUIRE(got[v][d] == Catch::Approx(ref).margin(1e-10));
        }
    }
}

TEST_CASE("sparse product matches dense in 3D", "[engine][oracle]") {
    Grid g = integer_grid(3, 16, 64);
    WaveLocalization none;
    LocalizedWave u1 = make_localized_wave(3, 2, 1, 1.25, none, 2, 31);
    LocalizedWave u2 = make_localized_wave(3, 1, 2, -0.6, none, 2, 32);
    std::vector<OutputVariant> variants = {{2, 0, 0.0}, {2, 1, 0.8}};
    auto got = projected_product_norms(u1, u2, variants, 2);
    for (std::size_t v = 0; v < variants.size(); ++v)
        for (int d = 0; d < 2; ++d)
            REQUIRE(got[v][d] ==
                    Catch::Approx(dense_projected_product_norm(u1, u2, g, variants[v], d))
                        .margin(1e-10));
}

TEST_CASE("trilinear pairing matches the dense integral", "[engine][oracle]") {
    Grid g = integer_grid(2, 16, 64);
    WaveLocalization none;
    LocalizedWave u1 = make_localized_wave(2, 2, 1, 1.0, none, 2, 41);
    LocalizedWave u2 = make_localized_wave(2, 2, 1, 1.0, none, 2, 42);
    LocalizedWave u3 = make_localized_wave(2, 2, 4, -2.0, none, 2, 43);

    auto got = trilinear_pairing(u1, u2, u3, 2);
    for (int d = 0; d < 2; ++d) {
        SpaceTimeField f1 = to_grid(u1, g, d).transformed(Direction::inverse);
        SpaceTimeField f2 = to_grid(u2, g, d).transformed(Direction::inverse);
        SpaceTimeField f3 = to_grid(u3, g, d).transformed(Direction::inverse);
        cplx acc{};
        for (std::size_t i = 0; i < f1.data().size(); ++i)
            acc += f1.data()[i] * f2.data()[i] * f3.data()[i];
        acc /= static_cast<double>(g.total_points());
        REQUIRE(got[d] == Catch::Approx(std::abs(acc)).margin(1e-12));
    }
}

TEST_CASE("product norms are homogeneous of degree two", "[engine]") {
    WaveLocalization none;
    LocalizedWave u1 = make_localized_wave(2, 4, 1, 1.7, none, 1, 51);
    LocalizedWave u2 = make_localized_wave(2, 4, 1, -0.4, none, 1, 52);
    std::vector<OutputVariant> v = {{4, 0, 0.0}};
    double base = projected_product_norms(u1, u2, v, 1)[0][0];
    for (cplx& c : u1.coef) c *= 3.0;
    for (cplx& c : u2.coef) c *= 3.0;
    double scaled = projected_product_norms(u1, u2, v, 1)[0][0];
    CHECK(scaled == Catch::Approx(9.0 * base).epsilon(1e-12));
}

TEST_CASE("thread count does not change results", "[engine]") {
    WaveLocalization none;
    LocalizedWave u1 = make_localized_wave(2, 4, 2, 1.7, none, 2, 61);
    LocalizedWave u2 = make_localized_wave(2, 4, 1, -0.4, none, 2, 62);
    std::vector<OutputVariant> v = {{4, 2, -1.0}, {2, 0, 0.0}};
    auto a = projected_product_norms(u1, u2, v, 1);
    auto b = projected_product_norms(u1, u2, v, 2);
    for (std::size_t k = 0; k < v.size(); ++k)
        for (int d = 0; d < 2; ++d) REQUIRE(a[k][d] == Catch::Approx(b[k][d]).epsilon(1e-13));
}
