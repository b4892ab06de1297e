#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlslab/bump.hpp"
#include "nlslab/multipliers.hpp"
#include "nlslab/resonance.hpp"
#include "nlslab/rng.hpp"

namespace nlslab {

// Monte-Carlo estimation of the bilinear interaction set
//   E(tau, xi) = { (tau1, xi1) :  <tau1 + sigma1 |xi1|^2>        ~ L1,
//                                 <tau - tau1 + sigma2 |xi-xi1|^2> ~ L2,
//                                 xi1 in sector j1,  xi - xi1 in sector j2 }
// for a 2D output point (tau, xi) on the support of psi_{N3,L3}^{sigma3}.
// The tau1-section is a pair of intervals intersected exactly, so only xi1
// is sampled; dyadic size conditions use the same half-level windows as the
// projection shells.

struct MeasureInstance {
    double tau;
    std::array<double, 2> xi;
    SigmaTriple sigmas{1.0, 1.0, 1.0};
    std::uint64_t l1 = 1, l2 = 1;
    std::uint64_t aperture = 64;
    long j1 = 0, j2 = 0;
    double box_radius = 0.0;  // xi1 sampling box half-width (0: derived)
};

// an output point (tau, xi) with psi_{N3}(|xi|) = 1 and psi_{L3} modulation,
// xi pointing along sector j of the given aperture
inline MeasureInstance make_measure_instance(const SigmaTriple& s, std::uint64_t n3,
                                             std::uint64_t l3, std::uint64_t aperture,
                                             std::uint64_t l1, std::uint64_t l2, long dj) {
    MeasureInstance inst;
    inst.sigmas = s;
    inst.l1 = l1;
    inst.l2 = l2;
    inst.aperture = aperture;
    double r = static_cast<double>(n3);
    inst.j1 = static_cast<long>(aperture) / 7;  // generic sector, away from axes
    inst.j2 = inst.j1 + dj;
    double theta = M_PI * static_cast<double>(inst.j1) / static_cast<double>(aperture);
    inst.xi = {r * std::cos(theta), r * std::sin(theta)};
    double m3 = l3 == 1 ? 0.0 : 1.0 * static_cast<double>(l3);  // psi_{L3} core
    inst.tau = s.s3 * (inst.xi[0] * inst.xi[0] + inst.xi[1] * inst.xi[1]) + m3;
    inst.box_radius = 4.0 * r + 4.0 * std::sqrt(double(l1 + l2) / std::fabs(s.s1) + 1.0);
    return inst;
}

namespace measure_detail {

struct Windows {
    // |x| in [lo, hi] (from <x> in the dyadic window), empty if hi < lo
    double lo, hi;
    bool empty;
};

inline Windows bracket_window(std::uint64_t l) {
    double plo = l == 1 ? 1.0 : bump::kHalfLoFactor * static_cast<double>(l);
    double phi = bump::kHalfHiFactor * static_cast<double>(l);
    if (phi < 1.0) return {0, 0, true};
    double lo = plo <= 1.0 ? 0.0 : std::sqrt(plo * plo - 1.0);
    double hi = std::sqrt(phi * phi - 1.0);
    return {lo, hi, false};
}

// measure of { t : |t - a| in [w.lo, w.hi] and |b - t| in [v.lo, v.hi] }
inline double section_length(double a, const Windows& w, double b, const Windows& v) {
    if (w.empty || v.empty) return 0.0;
    double total = 0.0;
    for (int sa = 0; sa < 2; ++sa) {
        double alo = sa == 0 ? a + w.lo : a - w.hi;
        double ahi = sa == 0 ? a + w.hi : a - w.lo;
        for (int sb = 0; sb < 2; ++sb) {
            double blo = sb == 0 ? b - v.hi : b + v.lo;
            double bhi = sb == 0 ? b - v.lo : b + v.hi;
            double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
            if (hi > lo) total += hi - lo;
        }
    }
    return total;
}

inline bool in_sector(std::uint64_t aperture, long j, double x, double y) {
    if (x == 0.0 && y == 0.0) return false;
    return angular2d::sector_weight(aperture, j, std::atan2(y, x)) > 0.5;
}

}  // namespace measure_detail

struct MeasureEstimate {
    double value;       // measure (continuum) or point count (lattice)
    double std_error;   // Monte-Carlo standard error
    std::size_t samples;
};

// Continuum Monte Carlo: xi1 uniform over the box, tau1-section integrated
// exactly.
inline MeasureEstimate measure_E(const MeasureInstance& inst, std::size_t samples,
                                 std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("measure_E: need samples");
    auto w1 = measure_detail::bracket_window(inst.l1);
    auto w2 = measure_detail::bracket_window(inst.l2);
    Rng rng(seed);
    double box = inst.box_radius;
    double area = (2.0 * box) * (2.0 * box);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double x = rng.uniform(-box, box);
        double y = rng.uniform(-box, box);
        double val = 0.0;
        if (measure_detail::in_sector(inst.aperture, inst.j1, x, y) &&
            measure_detail::in_sector(inst.aperture, inst.j2, inst.xi[0] - x, inst.xi[1] - y)) {
            double r1 = x * x + y * y;
            double dx = inst.xi[0] - x, dy = inst.xi[1] - y;
            double r2 = dx * dx + dy * dy;
            // tau1 near -sigma1 r1 (window w1); tau - tau1 near -sigma2 r2 (window w2)
            val = measure_detail::section_length(-inst.sigmas.s1 * r1, w1,
                                                 inst.tau + inst.sigmas.s2 * r2, w2);
        }
        sum += val;
        sum2 += val * val;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sum2 / samples - mean * mean);
    return {mean * area, std::sqrt(var / samples) * area, samples};
}

// Exhaustive count of integer lattice points (tau1, xi1) in E
inline double measure_E_lattice_count(const MeasureInstance& inst, int box) {
    auto w1 = measure_detail::bracket_window(inst.l1);
    auto w2 = measure_detail::bracket_window(inst.l2);
    double count = 0.0;
    for (int x = -box; x <= box; ++x) {
        for (int y = -box; y <= box; ++y) {
            if (!measure_detail::in_sector(inst.aperture, inst.j1, x, y)) continue;
            double dx = inst.xi[0] - x, dy = inst.xi[1] - y;
            if (!measure_detail::in_sector(inst.aperture, inst.j2, dx, dy)) continue;
            double a = -inst.sigmas.s1 * (double(x) * x + double(y) * y);
            double b = inst.tau + inst.sigmas.s2 * (dx * dx + dy * dy);
            // integer tau1 in both bracket windows
            double lo = std::min(a - w1.hi, b - w2.hi) - 1.0;
            double hi = std::max(a + w1.hi, b + w2.hi) + 1.0;
            for (double t = std::ceil(lo); t <= hi; ++t) {
                double da = std::fabs(t - a), db = std::fabs(b - t);
                if (da >= w1.lo && da <= w1.hi && db >= w2.lo && db <= w2.hi) count += 1.0;
            }
        }
    }
    return count;
}

// Monte-Carlo estimate of the same lattice count (uniform over lattice points
// of the box), for cross-validation against the exhaustive count.
inline MeasureEstimate measure_E_lattice_mc(const MeasureInstance& inst, int box,
                                            std::size_t samples, std::uint64_t seed) {
    auto w1 = measure_detail::bracket_window(inst.l1);
    auto w2 = measure_detail::bracket_window(inst.l2);
    Rng rng(seed);
    double side = 2.0 * box + 1.0;
    double cells = side * side;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        int x = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(side))) - box;
        int y = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(side))) - box;
        double val = 0.0;
        if (measure_detail::in_sector(inst.aperture, inst.j1, x, y)) {
            double dx = inst.xi[0] - x, dy = inst.xi[1] - y;
            if (measure_detail::in_sector(inst.aperture, inst.j2, dx, dy)) {
                double a = -inst.sigmas.s1 * (double(x) * x + double(y) * y);
                double b = inst.tau + inst.sigmas.s2 * (dx * dx + dy * dy);
                double lo = std::min(a - w1.hi, b - w2.hi) - 1.0;
                double hi = std::max(a + w1.hi, b + w2.hi) + 1.0;
                for (double t = std::ceil(lo); t <= hi; ++t) {
                    double da = std::fabs(t - a), db = std::fabs(b - t);
                    if (da >= w1.lo && da <= w1.hi && db >= w2.lo && db <= w2.hi) val += 1.0;
                }
            }
        }
        sum += val;
        sum2 += val * val;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sum2 / samples - mean * mean);
    return {mean * cells, std::sqrt(var / samples) * cells, samples};
}

}  // namespace nlslab
