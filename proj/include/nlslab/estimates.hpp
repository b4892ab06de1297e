#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlslab/exponent_check.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/pair_engine.hpp"
#include "nlslab/resonance.hpp"
#include "nlslab/sparse_wave.hpp"

namespace nlslab {

// The verified inequality families. Each kind pairs a left-hand functional
// (projected product norm, trilinear pairing, or mixed norm) with the
// right-hand monomial evaluated at constant one.
enum class EstimateKind {
    bilinear_strichartz,     // transversal bilinear L2 bound
    bilinear_interp,         // its b'-interpolated variant
    bilinear_cauchy_schwarz, // fallback bound without the sigma hypothesis
    angular_2d,              // parallel-sector bilinear bound, 2D
    lowmod_2d,               // separated-sector low-modulation bound, 2D
    angular_3d,              // parallel-cap bilinear bound, 3D
    lowmod_3d,               // separated-cap low-modulation bound, 3D
    trilinear,               // the key trilinear form bound
    strichartz_linear        // modulation-localized Strichartz bound
};

inline const char* kind_name(EstimateKind k) {
    switch (k) {
        case EstimateKind::bilinear_strichartz: return "bilinear-strichartz";
        case EstimateKind::bilinear_interp: return "bilinear-interp";
        case EstimateKind::bilinear_cauchy_schwarz: return "bilinear-cauchy-schwarz";
        case EstimateKind::angular_2d: return "angular-2d";
        case EstimateKind::lowmod_2d: return "lowmod-2d";
        case EstimateKind::angular_3d: return "angular-3d";
        case EstimateKind::lowmod_3d: return "lowmod-3d";
        case EstimateKind::trilinear: return "trilinear";
        case EstimateKind::strichartz_linear: return "strichartz-linear";
    }
    return "?";
}

struct HypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// proof_localized realizes the proofs' harmless decompositions (matched
// cubes, sector arcs, slabs); full_shell leaves the dyadic shells whole
enum class VectorStyle { proof_localized, full_shell };

struct EstimateTuple {
    int dim = 2;
    std::uint64_t n1 = 1, n2 = 1, n3 = 1;
    std::uint64_t l1 = 1, l2 = 1, l3 = 1;
    std::uint64_t aperture = 64;
    long j1 = 0, j2 = 0;
    double b_prime = 5.0 / 12.0;
    double s = 0.5;
    double p = 4.0, q = 4.0;  // strichartz_linear exponents
    SigmaTriple sigmas{std::sqrt(2.0), 1.0, -M_PI};
    int samples = 64;
    bool coherent_probe = true;  // include one phase-aligned draw
    VectorStyle style = VectorStyle::proof_localized;
};

inline std::uint64_t tuple_nmin(const EstimateTuple& t) { return std::min({t.n1, t.n2, t.n3}); }
inline std::uint64_t tuple_nmax(const EstimateTuple& t) { return std::max({t.n1, t.n2, t.n3}); }
inline std::uint64_t tuple_lmax(const EstimateTuple& t) { return std::max({t.l1, t.l2, t.l3}); }

// operational reading of "L_max << |theta| N_min^2": a fixed 1/64 margin
inline bool lowmod_hypothesis(const EstimateTuple& t) {
    double theta = t.sigmas.theta();
    return theta > 0.0 &&
           static_cast<double>(tuple_lmax(t)) <=
               theta * static_cast<double>(tuple_nmin(t)) * static_cast<double>(tuple_nmin(t)) / 64.0;
}

inline void check_hypotheses(EstimateKind kind, const EstimateTuple& t) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw HypothesisError(msg);
    };
    switch (kind) {
        case EstimateKind::bilinear_strichartz:
            require(t.sigmas.s1 + t.sigmas.s2 != 0.0, "bilinear: sigma1 + sigma2 must be nonzero");
            break;
        case EstimateKind::bilinear_interp:
            require(t.sigmas.s1 + t.sigmas.s2 != 0.0, "bilinear: sigma1 + sigma2 must be nonzero");
            require(t.b_prime > 0.25 && t.b_prime < 0.5, "bilinear interp: b' must lie in (1/4, 1/2)");
            break;
        case EstimateKind::bilinear_cauchy_schwarz:
            break;  // no hypothesis
        case EstimateKind::angular_2d:
            require(t.dim == 2, "angular 2d: dim must be 2");
            require(t.aperture >= 64 && bump::is_dyadic(t.aperture), "angular 2d: A dyadic >= 64");
            require(angular2d::sector_distance(t.aperture, t.j1, t.j2) <= 1,
                    "angular 2d: sectors must be parallel (|j1-j2| <= 1)");
            require(lowmod_hypothesis(t), "angular 2d: need L_max << |theta| N_min^2");
            break;
        case EstimateKind::lowmod_2d: {
            require(t.dim == 2, "lowmod 2d: dim must be 2");
            require(t.aperture >= 64 && t.aperture <= tuple_nmax(t), "lowmod 2d: need 64 <= A <= N_max");
            long dj = angular2d::sector_distance(t.aperture, t.j1, t.j2);
            require(dj >= 16 && dj <= 32, "lowmod 2d: need 16 <= |j1-j2| <= 32");
            require(lowmod_hypothesis(t), "lowmod 2d: need L_max << |theta| N_min^2");
            break;
        }
        case EstimateKind::angular_3d: {
            require(t.dim == 3, "angular 3d: dim must be 3");
            require(t.aperture >= 1, "angular 3d: A >= 1");
            auto caps = CapFamily3D::shared(static_cast<int>(t.aperture));
            require(caps->alpha(t.j1, t.j2) <= 2.0 / static_cast<double>(t.aperture),
                    "angular 3d: caps must satisfy alpha(j1,j2) <~ 1/A");
            require(lowmod_hypothesis(t), "angular 3d: need L_max << |theta| N_min^2");
            break;
        }
        case EstimateKind::lowmod_3d: {
            require(t.dim == 3, "lowmod 3d: dim must be 3");
            require(t.aperture >= 64 && t.aperture <= tuple_nmax(t), "lowmod 3d: need 64 <= A <= N_max");
            auto caps = CapFamily3D::shared(static_cast<int>(t.aperture));
            double a = caps->alpha(t.j1, t.j2);
            require(a > 0.0 && a <= 2.0 / static_cast<double>(t.aperture),
                    "lowmod 3d: caps must be separated with alpha(j1,j2) ~ 1/A");
            require(lowmod_hypothesis(t), "lowmod 3d: need L_max << |theta| N_min^2");
            break;
        }
        case EstimateKind::trilinear:
            require(t.sigmas.pairwise_nonzero(), "trilinear: pairwise sigma sums must be nonzero");
            require(t.sigmas.theta() > 0.0,
                    "trilinear: need sigma1 sigma2 sigma3 (1/s1 + 1/s2 + 1/s3) < 0");
            require(t.b_prime > 0.0 && t.b_prime < 0.5, "trilinear: b' must lie in (0, 1/2)");
            break;
        case EstimateKind::strichartz_linear:
            require(admissible_check(t.dim, t.p, t.q), "strichartz: (p, q) must be admissible");
            break;
    }
}

// right-hand side of the estimate at the tuple, with constant one
inline double rhs_value(EstimateKind kind, const EstimateTuple& t) {
    double nmin = static_cast<double>(tuple_nmin(t));
    double nmax = static_cast<double>(tuple_nmax(t));
    double l1 = static_cast<double>(t.l1), l2 = static_cast<double>(t.l2),
           l3 = static_cast<double>(t.l3);
    double n1 = static_cast<double>(t.n1);
    double a = static_cast<double>(t.aperture);
    switch (kind) {
        case EstimateKind::bilinear_strichartz:
            return std::pow(nmin, t.dim / 2.0 - 1.0) * std::sqrt(nmin / nmax) * std::sqrt(l1 * l2);
        case EstimateKind::bilinear_interp: {
            double delta = delta_of(t.b_prime);
            return std::pow(nmin, t.dim / 2.0 - 1.0 + 4.0 * delta) *
                   std::pow(nmin / nmax, 0.5 - 2.0 * delta) * std::pow(l1 * l2, t.b_prime);
        }
        case EstimateKind::bilinear_cauchy_schwarz:
            return std::pow(nmin, t.dim / 2.0) * std::pow(l1 * l2, 0.25);
        case EstimateKind::angular_2d:
            return std::sqrt(l1 * l2) / std::sqrt(a);
        case EstimateKind::lowmod_2d:
            return std::sqrt(a) / n1 * std::sqrt(l1 * l2 * l3);
        case EstimateKind::angular_3d:
            return std::sqrt(n1) / a * std::sqrt(l1 * l2);
        case EstimateKind::lowmod_3d:
            return std::sqrt(l1 * l2 * l3) / std::sqrt(n1);
        case EstimateKind::trilinear:
            return std::pow(n1, t.s) * std::pow(l1 * l2 * l3, t.b_prime);
        case EstimateKind::strichartz_linear:
            return std::sqrt(l1);
    }
    return 0.0;
}

namespace estimate_detail {

inline void apply_coherent_probe(LocalizedWave& w) {
    double c = 1.0 / std::sqrt(static_cast<double>(w.modes()));
    for (std::size_t m = 0; m < w.modes(); ++m) w.coef[m * w.draws] = c;
}

// desk-scale budget: thin dense 2D shells to at most ~6000 spatial nodes
inline double shell_keep_fraction(int dim, std::uint64_t n_shell) {
    double expected = dim == 2 ? 5.4 * static_cast<double>(n_shell) * static_cast<double>(n_shell)
                               : 12.5 * std::pow(static_cast<double>(n_shell), 3.0);
    return std::min(1.0, 6000.0 / std::max(1.0, expected));
}

// transversal bilinear pair: matched frequency cubes of side ~ 2 N3 at
// antipodal base points (the proofs' {B_k}, {C_k} preprocessing); comparable
// shells stay unlocalized
inline std::array<LocalizedWave, 2> bilinear_pair(const EstimateTuple& t, int draws,
                                                  std::uint64_t seed) {
    WaveLocalization loc1, loc2;
    std::uint64_t nbig = std::max(t.n1, t.n2);
    bool transverse = t.style == VectorStyle::proof_localized && t.n3 * 4 <= nbig && t.n1 == t.n2;
    if (transverse) {
        int zeta = static_cast<int>(std::lround(1.1 * static_cast<double>(nbig)));
        int half = static_cast<int>(2 * t.n3);
        int offset = static_cast<int>(std::max<std::uint64_t>(1, (t.n3 * 21) / 20));
        loc1.extra = cube_filter({zeta, 0, 0}, half);
        loc2.extra = cube_filter({-zeta, offset, 0}, half);
    } else {
        loc1.keep_fraction = shell_keep_fraction(t.dim, t.n1);
        loc2.keep_fraction = shell_keep_fraction(t.dim, t.n2);
    }
    LocalizedWave u1 = make_localized_wave(t.dim, t.n1, t.l1, t.sigmas.s1, loc1, draws,
                                           split_seed(seed, 1));
    LocalizedWave u2 = make_localized_wave(t.dim, t.n2, t.l2, t.sigmas.s2, loc2, draws,
                                           split_seed(seed, 2));
    if (t.coherent_probe) {
        apply_coherent_probe(u1);
        apply_coherent_probe(u2);
    }
    return {std::move(u1), std::move(u2)};
}

// sector-localized pair on a thin annulus band (2D angular estimates)
inline std::array<LocalizedWave, 2> sector_pair(const EstimateTuple& t, int draws,
                                                std::uint64_t seed) {
    int band = static_cast<int>(std::max<std::uint64_t>(1, t.n1 / t.aperture));
    int r1 = static_cast<int>(std::lround(1.1 * static_cast<double>(t.n1)));
    int r2 = static_cast<int>(std::lround(1.1 * static_cast<double>(t.n2)));
    auto ring = [](int r0, int w) {
        return [r0, w](const std::array<int, 3>& xi) {
            double r = std::sqrt(double(xi[0]) * xi[0] + double(xi[1]) * xi[1]);
            return r >= r0 && r < r0 + w;
        };
    };
    WaveLocalization loc1, loc2;
    loc1.cap2d = Cap2dSpec{t.aperture, t.j1};
    loc1.extra = ring(r1, band);
    loc2.cap2d = Cap2dSpec{t.aperture, t.j2};
    loc2.extra = ring(r2, band);
    LocalizedWave u1 = make_localized_wave(2, t.n1, t.l1, t.sigmas.s1, loc1, draws,
                                           split_seed(seed, 1));
    LocalizedWave u2 = make_localized_wave(2, t.n2, t.l2, t.sigmas.s2, loc2, draws,
                                           split_seed(seed, 2));
    if (t.coherent_probe) {
        apply_coherent_probe(u1);
        apply_coherent_probe(u2);
    }
    return {std::move(u1), std::move(u2)};
}

// cap-localized pair in 3D restricted to the proof's slab and radial band
inline std::array<LocalizedWave, 2> cap3d_pair(const EstimateTuple& t, int draws,
                                               std::uint64_t seed) {
    auto caps = CapFamily3D::shared(static_cast<int>(t.aperture));
    Vec3 p1 = caps->center(t.j1), p2 = caps->center(t.j2);
    Vec3 cr{p1[1] * p2[2] - p1[2] * p2[1], p1[2] * p2[0] - p1[0] * p2[2],
            p1[0] * p2[1] - p1[1] * p2[0]};
    double n = std::sqrt(dot3(cr, cr));
    if (n < 1e-9) {
        // caps (anti)parallel: any direction orthogonal to p1
        cr = std::fabs(p1[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        double d = dot3(cr, p1);
        for (int a = 0; a < 3; ++a) cr[a] -= d * p1[a];
        n = std::sqrt(dot3(cr, cr));
    }
    for (int a = 0; a < 3; ++a) cr[a] /= n;
    double slab = std::max(1.5, static_cast<double>(t.n1) / static_cast<double>(t.aperture));
    int band = static_cast<int>(std::max<std::uint64_t>(1, t.n1 / t.aperture));
    auto band_filter = [band](std::uint64_t nshell) {
        int r0 = static_cast<int>(std::lround(1.1 * static_cast<double>(nshell)));
        return [r0, band](const std::array<int, 3>& xi) {
            double r = std::sqrt(double(xi[0]) * xi[0] + double(xi[1]) * xi[1] +
                                 double(xi[2]) * xi[2]);
            return r >= r0 && r < r0 + band;
        };
    };
    WaveLocalization loc1, loc2;
    loc1.cap3d = Cap3dSpec{caps, t.j1};
    loc2.cap3d = Cap3dSpec{caps, t.j2};
    auto slab_f = slab_filter(cr, slab);
    auto ring1 = band_filter(t.n1), ring2 = band_filter(t.n2);
    loc1.extra = [slab_f, ring1](const std::array<int, 3>& xi) { return slab_f(xi) && ring1(xi); };
    loc2.extra = [slab_f, ring2](const std::array<int, 3>& xi) { return slab_f(xi) && ring2(xi); };
    LocalizedWave u1 = make_localized_wave(3, t.n1, t.l1, t.sigmas.s1, loc1, draws,
                                           split_seed(seed, 1));
    LocalizedWave u2 = make_localized_wave(3, t.n2, t.l2, t.sigmas.s2, loc2, draws,
                                           split_seed(seed, 2));
    if (t.coherent_probe) {
        apply_coherent_probe(u1);
        apply_coherent_probe(u2);
    }
    return {std::move(u1), std::move(u2)};
}

}  // namespace estimate_detail

struct RatioRow {
    EstimateKind kind;
    EstimateTuple tuple;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

// Build the kind's test vectors, evaluate the left-hand functional on every
// draw (plus the phase-aligned probe in draw zero), and report the largest
// ratio against the paper bound at constant one.
inline RatioRow estimate_ratio(EstimateKind kind, const EstimateTuple& t, std::uint64_t seed,
                               int threads = default_threads()) {
    check_hypotheses(kind, t);
    RatioRow row;
    row.kind = kind;
    row.tuple = t;
    row.samples = t.samples;
    row.seed = seed;
    row.rhs = rhs_value(kind, t);
    int draws = std::max(1, t.samples);

    double lhs = 0.0;
    switch (kind) {
        case EstimateKind::bilinear_strichartz:
        case EstimateKind::bilinear_interp:
        case EstimateKind::bilinear_cauchy_schwarz: {
            auto pair = estimate_detail::bilinear_pair(t, draws, seed);
            std::vector<OutputVariant> v{{t.n3, 0, 0.0}};
            auto norms = projected_product_norms(pair[0], pair[1], v, threads);
            lhs = *std::max_element(norms[0].begin(), norms[0].end());
            break;
        }
        case EstimateKind::angular_2d:
        case EstimateKind::lowmod_2d: {
            auto pair = estimate_detail::sector_pair(t, draws, seed);
            std::vector<OutputVariant> v{{t.n3, t.l3, -t.sigmas.s3}};
            auto norms = projected_product_norms(pair[0], pair[1], v, threads);
            lhs = *std::max_element(norms[0].begin(), norms[0].end());
            break;
        }
        case EstimateKind::angular_3d:
        case EstimateKind::lowmod_3d: {
            auto pair = estimate_detail::cap3d_pair(t, draws, seed);
            std::vector<OutputVariant> v{{t.n3, t.l3, -t.sigmas.s3}};
            auto norms = projected_product_norms(pair[0], pair[1], v, threads);
            lhs = *std::max_element(norms[0].begin(), norms[0].end());
            break;
        }
        case EstimateKind::trilinear: {
            WaveLocalization w1, w2, w3;
            w1.keep_fraction = estimate_detail::shell_keep_fraction(t.dim, t.n1);
            w2.keep_fraction = estimate_detail::shell_keep_fraction(t.dim, t.n2);
            w3.keep_fraction = estimate_detail::shell_keep_fraction(t.dim, t.n3);
            LocalizedWave u1 = make_localized_wave(t.dim, t.n1, t.l1, t.sigmas.s1, w1, draws,
                                                   split_seed(seed, 1));
            LocalizedWave u2 = make_localized_wave(t.dim, t.n2, t.l2, t.sigmas.s2, w2, draws,
                                                   split_seed(seed, 2));
            LocalizedWave u3 = make_localized_wave(t.dim, t.n3, t.l3, t.sigmas.s3, w3, draws,
                                                   split_seed(seed, 3));
            if (t.coherent_probe) {
                estimate_detail::apply_coherent_probe(u1);
                estimate_detail::apply_coherent_probe(u2);
                estimate_detail::apply_coherent_probe(u3);
            }
            auto vals = trilinear_pairing(u1, u2, u3, threads);
            lhs = static_cast<double>(t.n2) * *std::max_element(vals.begin(), vals.end());
            break;
        }
        case EstimateKind::strichartz_linear: {
            // grid-based: Q_L-localized wave at small N, mixed L^p_t L^q_x norm
            WaveLocalization none;
            double smax = std::fabs(t.sigmas.s1);
            double tau_extent = 1.5 * smax * std::pow(1.5 * static_cast<double>(t.n1), 2.0) +
                                1.5 * static_cast<double>(t.l1) + 4.0;
            int n_t = 64;
            while (n_t < 2.0 * tau_extent) n_t <<= 1;
            int n = 8;
            while (n < 4 * static_cast<int>(t.n1)) n <<= 1;
            Grid g = integer_grid(t.dim, n, n_t);
            int use_draws = std::min(draws, 16);
            for (int d = 0; d < use_draws; ++d) {
                LocalizedWave u = make_localized_wave(t.dim, t.n1, t.l1, t.sigmas.s1, none, 1,
                                                      split_seed(seed, 100 + d));
                SpaceTimeField f = to_grid(u, g, 0).transformed(Direction::inverse);
                // normalize by the integral L2 norm so the bound reads L^{1/2}
                lhs = std::max(lhs, mixed_norm(f, t.p, t.q) / f.l2_integral());
            }
            row.samples = use_draws;
            break;
        }
    }
    row.lhs = lhs;
    row.ratio = row.rhs == 0.0 ? 0.0 : lhs / row.rhs;
    return row;
}

}  // namespace nlslab
