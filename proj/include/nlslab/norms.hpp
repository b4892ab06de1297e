#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "nlslab/bump.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Parameters of the restriction norm X^{s,b,p}_sigma.
struct NormSpec {
    double s = 0.0;
    double b = 0.0;
    double p = 2.0;  // kInfExponent for the sup-over-L variant
    double sigma = 1.0;

    NormSpec(double s_, double b_, double p_, double sigma_) : s(s_), b(b_), p(p_), sigma(sigma_) {
        if (sigma == 0.0) throw std::invalid_argument("NormSpec: sigma must be nonzero");
        if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p must be >= 1");
    }
};

// delta = 1/2 - b', the interpolation gap used throughout the bilinear
// estimates; lies in (0, 1/4) exactly when b' is in (1/4, 1/2).
inline double delta_of(double b_prime) { return 0.5 - b_prime; }

namespace detail {

// dyadic shells N with psi_N(t) != 0 (at most two, plus N=1 near the origin)
inline void shells_covering(double t, std::uint64_t* out, int* count) {
    double a = std::fabs(t);
    *count = 0;
    if (a < 2.0) out[(*count)++] = 1;
    if (a <= 1.0) return;
    int k = static_cast<int>(std::floor(std::log2(a)));
    for (int e = k - 1; e <= k + 1; ++e) {
        if (e < 1) continue;
        std::uint64_t n = std::uint64_t{1} << e;
        double half = 0.5 * static_cast<double>(n);
        if (a > half && a < 2.0 * static_cast<double>(n)) out[(*count)++] = n;
    }
}

}  // namespace detail

// H^s norm of a spatial field, computed on Fourier coefficients:
// (sum_xi <xi>^{2s} |c(xi)|^2)^{1/2} with <xi> = (1 + |xi|^2)^{1/2}.
inline double sobolev_norm(const SpaceTimeField& field, double s) {
    if (field.grid().has_time())
        throw std::invalid_argument("sobolev_norm: expected a spatial field (no time axis)");
    SpaceTimeField f = field.in_rep(Rep::fourier);
    const Grid& g = f.grid();
    double coef_scale = 1.0 / static_cast<double>(g.total_points());
    double acc = 0.0;
    const int n = g.n;
    for (int i1 = 0; i1 < n; ++i1) {
        double x1 = g.freq_component(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            double x2 = g.freq_component(i2);
            if (g.dim == 2) {
                double jap = 1.0 + x1 * x1 + x2 * x2;
                acc += std::pow(jap, s) * std::norm(f.at(0, i1, i2)) * coef_scale;
            } else {
                for (int i3 = 0; i3 < n; ++i3) {
                    double x3 = g.freq_component(i3);
                    double jap = 1.0 + x1 * x1 + x2 * x2 + x3 * x3;
                    acc += std::pow(jap, s) * std::norm(f.at(0, i1, i2, i3)) * coef_scale;
                }
            }
        }
    }
    return std::sqrt(acc);
}

// vector-valued convention: sum of the component norms
inline double sobolev_norm(const VectorField& field, double s) {
    double acc = 0.0;
    for (const auto& c : field) acc += sobolev_norm(c, s);
    return acc;
}

// Integral-measure variant (coefficient sum weighted by the box volume);
// this is the normalization under which the scaling symmetry acts cleanly.
inline double sobolev_norm_integral(const SpaceTimeField& field, double s) {
    double vol = std::pow(field.grid().period, field.grid().dim);
    return std::sqrt(vol) * sobolev_norm(field, s);
}

// X^{s,b,p}_sigma norm of a space-time field:
//   { sum_N N^{2s} ( sum_L L^{pb} ||Q_L^sigma P_N u||^p )^{2/p} }^{1/2},
// with the sup over L when p = infinity. Dyadic sums truncate at the grid's
// Nyquist shells, which is exact for fields supported inside the lattice.
inline double xsb_norm(const SpaceTimeField& field, const NormSpec& spec) {
    if (!field.grid().has_time()) throw std::invalid_argument("xsb_norm: field needs a time axis");
    SpaceTimeField f = field.in_rep(Rep::fourier);
    const Grid& g = f.grid();
    double coef_scale = 1.0 / static_cast<double>(g.total_points());

    // cell[(N, L)] accumulates ||Q_L P_N u||^2 over the lattice
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> cell;
    const int n = g.n;
    std::uint64_t ns[3], ls[3];
    int ncount, lcount;
    for (int it = 0; it < g.n_t; ++it) {
        double tau = g.time_freq(it);
        for (int i1 = 0; i1 < n; ++i1) {
            double x1 = g.freq_component(i1);
            for (int i2 = 0; i2 < n; ++i2) {
                double x2 = g.freq_component(i2);
                for (int i3 = 0; i3 < (g.dim == 3 ? n : 1); ++i3) {
                    double x3 = g.dim == 3 ? g.freq_component(i3) : 0.0;
                    double r2 = x1 * x1 + x2 * x2 + x3 * x3;
                    double mag = std::norm(f.at(it, i1, i2, i3)) * coef_scale;
                    if (mag == 0.0) continue;
                    double m = tau + spec.sigma * r2;
                    detail::shells_covering(std::sqrt(r2), ns, &ncount);
                    detail::shells_covering(m, ls, &lcount);
                    for (int a = 0; a < ncount; ++a) {
                        double wn = bump::psi_shell(ns[a], std::sqrt(r2));
                        if (wn == 0.0) continue;
                        for (int b = 0; b < lcount; ++b) {
                            double wl = bump::psi_shell(ls[b], m);
                            if (wl == 0.0) continue;
                            cell[{ns[a], ls[b]}] += wn * wn * wl * wl * mag;
                        }
                    }
                }
            }
        }
    }

    // group by N, combine over L
    std::map<std::uint64_t, double> per_shell;  // N -> inner combination
    if (spec.p == kInfExponent) {
        for (const auto& [key, val] : cell) {
            double term = std::pow(static_cast<double>(key.second), spec.b) * std::sqrt(val);
            per_shell[key.first] = std::max(per_shell[key.first], term);
        }
        double acc = 0.0;
        for (const auto& [nshell, sup] : per_shell)
            acc += std::pow(static_cast<double>(nshell), 2.0 * spec.s) * sup * sup;
        return std::sqrt(acc);
    }
    for (const auto& [key, val] : cell) {
        per_shell[key.first] += std::pow(static_cast<double>(key.second), spec.p * spec.b) *
                                std::pow(std::sqrt(val), spec.p);
    }
    double acc = 0.0;
    for (const auto& [nshell, inner] : per_shell)
        acc += std::pow(static_cast<double>(nshell), 2.0 * spec.s) * std::pow(inner, 2.0 / spec.p);
    return std::sqrt(acc);
}

inline double xsb_norm(const VectorField& field, const NormSpec& spec) {
    double acc = 0.0;
    for (const auto& c : field) acc += xsb_norm(c, spec);
    return acc;
}

// Mixed L^p_t L^q_x norm by uniform-weight quadrature on the physical grid.
inline double mixed_norm(const SpaceTimeField& field, double p, double q) {
    if (!field.grid().has_time()) throw std::invalid_argument("mixed_norm: field needs a time axis");
    if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("mixed_norm: p, q must be >= 1");
    SpaceTimeField f = field.in_rep(Rep::physical);
    const Grid& g = f.grid();
    const std::size_t sp = g.spatial_points();
    double wx = std::pow(g.dx(), g.dim);
    double wt = g.dt();

    double outer = 0.0;  // sum for p < inf, max for p = inf
    for (int it = 0; it < g.n_t; ++it) {
        const cplx* slab = f.data().data() + static_cast<std::size_t>(it) * sp;
        double snorm;
        if (q == kInfExponent) {
            snorm = 0.0;
            for (std::size_t i = 0; i < sp; ++i) snorm = std::max(snorm, std::abs(slab[i]));
        } else {
            double s = 0.0;
            for (std::size_t i = 0; i < sp; ++i) s += std::pow(std::abs(slab[i]), q);
            snorm = std::pow(s * wx, 1.0 / q);
        }
        if (p == kInfExponent)
            outer = std::max(outer, snorm);
        else
            outer += std::pow(snorm, p) * wt;
    }
    return p == kInfExponent ? outer : std::pow(outer, 1.0 / p);
}

}  // namespace nlslab
