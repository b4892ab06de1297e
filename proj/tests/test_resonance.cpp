#include <catch2/catch_amalgamated.hpp>

#include "nlslab/resonance.hpp"

using namespace nlslab;

TEST_CASE("coefficient algebra", "[resonance]") {
    Coefficients c1 = coefficients(1, 1, 1);
    CHECK(c1.theta == Catch::Approx(-1.0));
    CHECK(c1.kappa == 0.0);

    Coefficients c2 = coefficients(3, 1, 1);  // hand oracle: 3(1/3 - 1 - 1) = -5, 2*2*2 = 8
    CHECK(c2.theta == Catch::Approx(-5.0));
    CHECK(c2.kappa == Catch::Approx(8.0));

    Coefficients c3 = coefficients(2, 1, -1);
    CHECK(c3.kappa == 0.0);

    CHECK_THROWS_AS(coefficients(0, 1, 1), std::invalid_argument);
}

TEST_CASE("kappa cannot vanish when theta is positive", "[resonance]") {
    Rng rng(61);
    int positive = 0;
    for (int i = 0; i < 100000; ++i) {
        double a = rng.uniform(-4, 4), b = rng.uniform(-4, 4), g = rng.uniform(-4, 4);
        if (a == 0 || b == 0 || g == 0) continue;
        Coefficients c(a, b, g);
        if (c.theta > 0) {
            ++positive;
            REQUIRE(c.kappa != 0.0);
        }
    }
    CHECK(positive > 1000);
}

TEST_CASE("interaction triples inherit the sign condition", "[resonance]") {
    Coefficients c(M_PI, std::sqrt(2.0), 1.0);
    REQUIRE(c.theta_negative());
    REQUIRE(c.kappa_nonzero());
    for (const SigmaTriple& t : interaction_triples(c)) {
        CHECK(t.pairwise_nonzero());
        CHECK(t.theta() > 0.0);  // sigma1 sigma2 sigma3 (sum of reciprocals) < 0
        double prod = t.s1 * t.s2 * t.s3 * (1.0 / t.s1 + 1.0 / t.s2 + 1.0 / t.s3);
        CHECK(prod < 0.0);
        CHECK(t.harmless_m() > 0.0);
    }
}

TEST_CASE("modulation values", "[resonance]") {
    SigmaTriple s(1.0, 2.0, -1.5);
    // on-surface points have zero modulation
    std::array<double, 3> x1{3, -1, 0}, x2{-2, 4, 0};
    double r1 = 10, r2 = 20;
    FrequencyTriple t(2, -s.s1 * r1, x1, -s.s2 * r2, x2, s);
    auto m = modulation_values(t);
    CHECK(m[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(m[1] == Catch::Approx(0.0).margin(1e-12));

    // zero frequencies, tau = (1, -1, 0)
    FrequencyTriple z(2, 1.0, {0, 0, 0}, -1.0, {0, 0, 0}, s);
    auto mz = modulation_values(z);
    CHECK(mz[0] == 1.0);
    CHECK(mz[1] == 1.0);
    CHECK(mz[2] == 0.0);

    // random triples match an independent scalar evaluation
    Rng rng(62);
    for (int i = 0; i < 200; ++i) {
        std::array<double, 3> a{rng.uniform(-5, 5), rng.uniform(-5, 5), 0};
        std::array<double, 3> b{rng.uniform(-5, 5), rng.uniform(-5, 5), 0};
        double t1 = rng.uniform(-30, 30), t2 = rng.uniform(-30, 30);
        FrequencyTriple ft(2, t1, a, t2, b, s);
        auto got = modulation_values(ft);
        double c0 = std::fabs(t1 + s.s1 * (a[0] * a[0] + a[1] * a[1]));
        double c1 = std::fabs(t2 + s.s2 * (b[0] * b[0] + b[1] * b[1]));
        double sx = -(a[0] + b[0]), sy = -(a[1] + b[1]);
        double c2 = std::fabs(-t1 - t2 + s.s3 * (sx * sx + sy * sy));
        REQUIRE(got[0] == Catch::Approx(c0).margin(1e-12));
        REQUIRE(got[1] == Catch::Approx(c1).margin(1e-12));
        REQUIRE(got[2] == Catch::Approx(c2).margin(1e-12));
    }
}

TEST_CASE("closed-form tau balancing matches grid search", "[resonance]") {
    Rng rng(63);
    for (int i = 0; i < 40; ++i) {
        double a1 = rng.uniform(-20, 20), a2 = rng.uniform(-20, 20), a3 = rng.uniform(-20, 20);
        double exact = min_max_modulation(a1, a2, a3);
        double grid = min_max_modulation_grid(a1, a2, a3);
        REQUIRE(grid >= exact - 1e-9);
        REQUIRE(grid <= exact + (std::fabs(a1 + a2 + a3) + 1.0) * 0.03);
    }
}

TEST_CASE("separated-frequency modulation lower bound", "[resonance][lemma]") {
    SigmaTriple s(1.0, 1.0, 1.0);
    auto r8 = check_separated_lemma(s, 8, 0, 1);
    CHECK(r8.constant > 0.0);
    // parabolic rescaling invariance: doubling the lattice scale keeps the
    // constant within a factor of two
    auto r16 = check_separated_lemma(s, 16, 0, 1);
    CHECK(r16.constant > 0.0);
    CHECK(r16.constant <= 2.0 * r8.constant);
    CHECK(r8.constant <= 2.0 * r16.constant);

    // degenerate sigma triple is rejected
    CHECK_THROWS_AS(check_separated_lemma(SigmaTriple(1.0, 1.0, -1.0), 8, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("comparable-frequency triples are excluded from sampling", "[resonance][lemma]") {
    // the sampler keeps only triples with min |xi_i|^2 <= max |xi_j|^2 / 16;
    // a triple with all norms comparable contributes nothing
    SigmaTriple s(1.0, 2.0, 3.0);
    auto r = check_separated_lemma(s, 8, 0, 1);
    CHECK(r.samples > 0);
}

TEST_CASE("strichartz admissibility", "[resonance]") {
    CHECK(admissible_check(2, 4.0, 4.0));
    CHECK(admissible_check(3, 2.0, 6.0));
    CHECK_FALSE(admissible_check(2, 2.0, kInfExponent));
    CHECK(admissible_check(2, kInfExponent, 2.0));
    CHECK_FALSE(admissible_check(2, 4.0, 8.0));
    CHECK_FALSE(admissible_check(2, 1.0, kInfExponent));
    CHECK(admissible_check(3, 4.0, 3.0));
}
