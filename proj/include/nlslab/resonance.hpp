#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlslab/norms.hpp"
#include "nlslab/rng.hpp"

namespace nlslab {

inline double japanese_bracket(double x) { return std::sqrt(1.0 + x * x); }

// Dispersion coefficients of the three-wave system and their derived
// resonance quantities.
struct Coefficients {
    double alpha, beta, gamma;
    double theta;  // alpha beta gamma (1/alpha - 1/beta - 1/gamma)
    double kappa;  // (alpha - beta)(alpha - gamma)(beta + gamma)

    Coefficients(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
        if (a == 0.0 || b == 0.0 || g == 0.0)
            throw std::invalid_argument("coefficients: alpha, beta, gamma must be nonzero");
        theta = a * b * g * (1.0 / a - 1.0 / b - 1.0 / g);
        kappa = (a - b) * (a - g) * (b + g);
    }

    bool theta_negative() const { return theta < 0.0; }
    bool kappa_nonzero() const { return kappa != 0.0; }
};

inline Coefficients coefficients(double a, double b, double g) { return Coefficients(a, b, g); }

// A sigma-triple as it appears in the bilinear estimates. The system's three
// nonlinear interactions use (beta, gamma, -alpha), (-gamma, alpha, -beta),
// (alpha, -beta, -gamma).
struct SigmaTriple {
    double s1, s2, s3;

    SigmaTriple(double a, double b, double c) : s1(a), s2(b), s3(c) {
        if (a == 0.0 || b == 0.0 || c == 0.0)
            throw std::invalid_argument("sigma triple: entries must be nonzero");
    }

    double pairwise_product() const { return (s1 + s2) * (s2 + s3) * (s3 + s1); }
    bool pairwise_nonzero() const { return pairwise_product() != 0.0; }

    // The |theta| entering the low-modulation estimates: the triple satisfies
    // sigma1 sigma2 sigma3 (1/s1 + 1/s2 + 1/s3) < 0 exactly when this is
    // positive.
    double theta() const { return -(s1 * s2 + s2 * s3 + s3 * s1); }

    // harmless constant M from the transversality bound
    double harmless_m() const {
        double j1 = japanese_bracket(s1), j2 = japanese_bracket(s2), j3 = japanese_bracket(s3);
        double m = std::min({1.0, std::fabs(s1 + s2), std::fabs(s2 + s3), std::fabs(s3 + s1)});
        return m / (j1 * j1 * j2 * j2 * j3 * j3);
    }

    double at(int j) const { return j == 0 ? s1 : (j == 1 ? s2 : s3); }
};

inline std::array<SigmaTriple, 3> interaction_triples(const Coefficients& c) {
    return {SigmaTriple(c.beta, c.gamma, -c.alpha), SigmaTriple(-c.gamma, c.alpha, -c.beta),
            SigmaTriple(c.alpha, -c.beta, -c.gamma)};
}

// Zero-sum space-time frequency triple: the third entry is derived from the
// first two, so the constraints hold exactly.
struct FrequencyTriple {
    int dim;
    std::array<double, 3> tau;
    std::array<std::array<double, 3>, 3> xi;  // xi[j][axis]
    SigmaTriple sigmas;

    FrequencyTriple(int d, double tau1, std::array<double, 3> xi1, double tau2,
                    std::array<double, 3> xi2, SigmaTriple s)
        : dim(d), sigmas(s) {
        if (d != 2 && d != 3) throw std::invalid_argument("frequency triple: dim must be 2 or 3");
        tau = {tau1, tau2, -tau1 - tau2};
        xi[0] = xi1;
        xi[1] = xi2;
        xi[2] = {-xi1[0] - xi2[0], -xi1[1] - xi2[1], -xi1[2] - xi2[2]};
        if (d == 2) xi[0][2] = xi[1][2] = xi[2][2] = 0.0;
    }

    double xi_norm2(int j) const {
        return xi[j][0] * xi[j][0] + xi[j][1] * xi[j][1] + xi[j][2] * xi[j][2];
    }
};

// the three modulation magnitudes |tau_j + sigma_j |xi_j|^2|
inline std::array<double, 3> modulation_values(const FrequencyTriple& t) {
    std::array<double, 3> m;
    for (int j = 0; j < 3; ++j) m[j] = std::fabs(t.tau[j] + t.sigmas.at(j) * t.xi_norm2(j));
    return m;
}

// resonance level Omega = sum_j sigma_j |xi_j|^2 on a zero-sum spatial triple
inline double resonance_level(const SigmaTriple& s, double r1sq, double r2sq, double r3sq) {
    return s.s1 * r1sq + s.s2 * r2sq + s.s3 * r3sq;
}

// Exact minimization over (tau_1, tau_2) with tau_3 = -tau_1 - tau_2 of
// max_j |tau_j + a_j|: substituting x = tau_1 + a_1, y = tau_2 + a_2 turns it
// into min max(|x|, |y|, |x + y - S|) with S = a_1 + a_2 + a_3, whose optimum
// is |S| / 3 (balance all three levels at S/3).
inline double min_max_modulation(double a1, double a2, double a3) {
    return std::fabs(a1 + a2 + a3) / 3.0;
}

// brute-force cross-check of the balancing formula on a tau grid
inline double min_max_modulation_grid(double a1, double a2, double a3, int steps = 120) {
    double s = a1 + a2 + a3;
    double span = std::fabs(s) + 1.0;
    double best = kInfExponent;
    for (int i = -steps; i <= steps; ++i) {
        for (int j = -steps; j <= steps; ++j) {
            double t1 = -a1 + span * i / steps;
            double t2 = -a2 + span * j / steps;
            double v = std::max({std::fabs(t1 + a1), std::fabs(t2 + a2), std::fabs(-t1 - t2 + a3)});
            best = std::min(best, v);
        }
    }
    return best;
}

struct SeparatedLemmaResult {
    double constant;       // min over samples of (min-max modulation) / max |xi|^2
    std::size_t samples;   // triples inspected
};

// Empirical constant in the separated-frequency modulation bound: over
// zero-sum triples with some |xi_i| <= |xi_j| / 4, the best possible
// max-modulation (free choice of tau) divided by max_j |xi_j|^2.
// Exhaustive over the integer lattice |xi|_inf <= scale when
// scale^(2 dim) is small, Monte Carlo otherwise.
inline SeparatedLemmaResult check_separated_lemma(const SigmaTriple& s, int scale,
                                                  std::size_t samples, std::uint64_t seed,
                                                  int dim = 2) {
    if (!s.pairwise_nonzero())
        throw std::invalid_argument("separated lemma: degenerate sigma triple (pairwise sum vanishes)");
    if (scale < 2) throw std::invalid_argument("separated lemma: scale too small");

    double worst = kInfExponent;
    std::size_t used = 0;

    auto consider = [&](const std::array<double, 3>& x1, const std::array<double, 3>& x2) {
        std::array<double, 3> x3{-x1[0] - x2[0], -x1[1] - x2[1], -x1[2] - x2[2]};
        double r1 = x1[0] * x1[0] + x1[1] * x1[1] + x1[2] * x1[2];
        double r2 = x2[0] * x2[0] + x2[1] * x2[1] + x2[2] * x2[2];
        double r3 = x3[0] * x3[0] + x3[1] * x3[1] + x3[2] * x3[2];
        double rmax = std::max({r1, r2, r3});
        if (rmax == 0.0) return;
        double rmin = std::min({r1, r2, r3});
        if (rmin > rmax / 16.0) return;  // keep only separated triples (|xi_i| <= |xi_j|/4)
        double best = min_max_modulation(s.s1 * r1, s.s2 * r2, s.s3 * r3);
        worst = std::min(worst, best / rmax);
        ++used;
    };

    bool exhaustive = dim == 2 ? scale <= 24 : scale <= 8;
    if (exhaustive) {
        int k3 = dim == 3 ? scale : 0;
        for (int a1 = -scale; a1 <= scale; ++a1)
            for (int a2 = -scale; a2 <= scale; ++a2)
                for (int a3 = -k3; a3 <= k3; ++a3)
                    for (int b1 = -scale; b1 <= scale; ++b1)
                        for (int b2 = -scale; b2 <= scale; ++b2)
                            for (int b3 = -k3; b3 <= k3; ++b3)
                                consider({double(a1), double(a2), double(a3)},
                                         {double(b1), double(b2), double(b3)});
    } else {
        Rng rng(seed);
        while (used < samples) {
            std::array<double, 3> x1{}, x2{};
            for (int a = 0; a < dim; ++a) {
                x1[a] = std::round(rng.uniform(-scale, scale));
                x2[a] = std::round(rng.uniform(-scale, scale));
            }
            // force separation: shrink x1 under |x2| / 4
            double n2 = std::sqrt(x2[0] * x2[0] + x2[1] * x2[1] + x2[2] * x2[2]);
            if (n2 < 8.0) continue;
            for (int a = 0; a < dim; ++a) x1[a] = std::round(x1[a] * (n2 / (8.0 * scale)));
            consider(x1, x2);
        }
    }
    if (used == 0) throw std::runtime_error("separated lemma: no admissible samples");
    return {worst, used};
}

// Strichartz admissibility: p >= 2, 2/p = d(1/2 - 1/q), excluding (2, 2, inf).
inline bool admissible_check(int d, double p, double q) {
    if (!(p >= 2.0)) return false;
    if (d == 2 && p == 2.0 && q == kInfExponent) return false;
    double lhs = 2.0 / p;  // 0 for p = inf
    double invq = q == kInfExponent ? 0.0 : 1.0 / q;
    double rhs = d * (0.5 - invq);
    return std::fabs(lhs - rhs) <= 1e-12;
}

}  // namespace nlslab
