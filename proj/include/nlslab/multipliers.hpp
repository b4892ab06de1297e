#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include "nlslab/bump.hpp"
#include "nlslab/caps3d.hpp"
#include "nlslab/field.hpp"

namespace nlslab {

// 2D angular partition of unity on the unit circle, antipodally paired:
// A sectors indexed j = 0..A-1, each supported on angles near pi j / A and
// near pi j / A - pi. Built from the integer partition
//   omega_j(s) = psi(s - j) / sum_k psi(s - k),
// sampled at s = A theta / pi and periodized mod 2A so that
// sum_{j=0}^{A-1} omega_j^A(theta) = 1 exactly on the whole circle.
namespace angular2d {

inline double denominator(double s) {
    double d = 0.0;
    // psi(s - k) != 0 only for |s - k| in (1/2, 2)
    long k0 = static_cast<long>(std::floor(s - 2.0));
    for (long k = k0; k <= k0 + 5; ++k) d += bump::psi(s - static_cast<double>(k));
    return d;
}

inline double omega_periodized(double s, long j, long period) {
    // sum of psi(s - j - period*m) over integer m with support overlap
    double v = 0.0;
    double m0 = std::round((s - static_cast<double>(j)) / period);
    for (long m = static_cast<long>(m0) - 1; m <= static_cast<long>(m0) + 1; ++m) {
        v += bump::psi(s - static_cast<double>(j) - static_cast<double>(period) * m);
    }
    return v;
}

// omega_j^A(theta) for theta in (-pi, pi]
inline double sector_weight(std::uint64_t aperture, long j, double theta) {
    double s = static_cast<double>(aperture) * theta / M_PI;
    long period = 2 * static_cast<long>(aperture);
    double num = omega_periodized(s, j, period) + omega_periodized(s, j - static_cast<long>(aperture), period);
    return num / denominator(s);
}

// circular sector-index distance respecting the antipodal pairing
inline long sector_distance(std::uint64_t aperture, long j1, long j2) {
    long a = static_cast<long>(aperture);
    long d = std::labs(j1 - j2) % a;
    return std::min(d, a - d);
}

}  // namespace angular2d

enum class MultiplierKind { frequency_shell, modulation_shell, angular_cap_2d, angular_cap_3d };

// One member of the three projection families: a frequency shell P_N, a
// modulation shell Q_L^sigma, or an angular cap R_j^A (2D sector / 3D cap).
struct MultiplierSpec {
    MultiplierKind kind;
    std::uint64_t shell = 1;     // N or L (dyadic)
    double sigma = 1.0;          // modulation shells only
    std::uint64_t aperture = 1;  // A
    long cap_index = 0;          // j
    std::shared_ptr<const CapFamily3D> caps;  // 3D caps only

    static MultiplierSpec frequency(std::uint64_t n) {
        if (!bump::is_dyadic(n)) throw std::invalid_argument("P_N: N must be dyadic");
        return {MultiplierKind::frequency_shell, n};
    }
    static MultiplierSpec modulation(std::uint64_t l, double sigma) {
        if (!bump::is_dyadic(l)) throw std::invalid_argument("Q_L: L must be dyadic");
        if (sigma == 0.0) throw std::invalid_argument("Q_L: sigma must be nonzero");
        MultiplierSpec s{MultiplierKind::modulation_shell, l};
        s.sigma = sigma;
        return s;
    }
    static MultiplierSpec cap2d(std::uint64_t aperture, long j) {
        if (!bump::is_dyadic(aperture) || aperture < 64)
            throw std::invalid_argument("R_j^A (2D): A must be dyadic and >= 64");
        if (j < 0 || j >= static_cast<long>(aperture))
            throw std::invalid_argument("R_j^A (2D): j out of range");
        MultiplierSpec s{MultiplierKind::angular_cap_2d};
        s.aperture = aperture;
        s.cap_index = j;
        return s;
    }
    static MultiplierSpec cap3d(std::shared_ptr<const CapFamily3D> family, long j) {
        if (!family) throw std::invalid_argument("R_j^A (3D): missing cap family");
        if (j < 0 || j >= family->size()) throw std::invalid_argument("R_j^A (3D): j out of range");
        MultiplierSpec s{MultiplierKind::angular_cap_3d};
        s.aperture = family->aperture();
        s.cap_index = j;
        s.caps = std::move(family);
        return s;
    }
};

// Multiplier value at a frequency point. xi is the d-vector of frequencies,
// tau the time frequency (ignored unless modulation shell).
inline double multiplier_value(const MultiplierSpec& spec, int dim, const double* xi, double tau) {
    double r2 = xi[0] * xi[0] + xi[1] * xi[1] + (dim == 3 ? xi[2] * xi[2] : 0.0);
    switch (spec.kind) {
        case MultiplierKind::frequency_shell:
            return bump::psi_shell(spec.shell, std::sqrt(r2));
        case MultiplierKind::modulation_shell:
            return bump::psi_shell(spec.shell, tau + spec.sigma * r2);
        case MultiplierKind::angular_cap_2d: {
            if (dim != 2) throw std::invalid_argument("R_j^A (2D) applied to a 3D field");
            if (r2 == 0.0) return 1.0 / static_cast<double>(spec.aperture);
            double theta = std::atan2(xi[1], xi[0]);
            return angular2d::sector_weight(spec.aperture, spec.cap_index, theta);
        }
        case MultiplierKind::angular_cap_3d: {
            if (dim != 3) throw std::invalid_argument("R_j^A (3D) applied to a 2D field");
            if (r2 == 0.0) return 1.0 / static_cast<double>(spec.caps->size());
            double inv = 1.0 / std::sqrt(r2);
            Vec3 x{xi[0] * inv, xi[1] * inv, xi[2] * inv};
            if (!spec.caps->contains(spec.cap_index, x)) return 0.0;
            return 1.0 / spec.caps->multiplicity(x);
        }
    }
    return 0.0;
}

// Fourier-multiplier application. Accepts either representation and returns
// the result in the input's representation.
inline SpaceTimeField project(const SpaceTimeField& field, const MultiplierSpec& spec) {
    if (spec.kind == MultiplierKind::modulation_shell && !field.grid().has_time())
        throw std::invalid_argument("Q_L^sigma requires a grid with a time axis");

    SpaceTimeField f = field.in_rep(Rep::fourier);
    const Grid& g = f.grid();
    const int n = g.n;
    const int nt = g.has_time() ? g.n_t : 1;
    double xi[3] = {0, 0, 0};
    for (int it = 0; it < nt; ++it) {
        double tau = g.has_time() ? g.time_freq(it) : 0.0;
        for (int i1 = 0; i1 < n; ++i1) {
            xi[0] = g.freq_component(i1);
            for (int i2 = 0; i2 < n; ++i2) {
                xi[1] = g.freq_component(i2);
                if (g.dim == 2) {
                    f.at(it, i1, i2) *= multiplier_value(spec, 2, xi, tau);
                } else {
                    for (int i3 = 0; i3 < n; ++i3) {
                        xi[2] = g.freq_component(i3);
                        f.at(it, i1, i2, i3) *= multiplier_value(spec, 3, xi, tau);
                    }
                }
            }
        }
    }
    return field.rep() == Rep::fourier ? f : f.transformed(Direction::inverse);
}

}  // namespace nlslab
