#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "nlslab/bump.hpp"

namespace nlslab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic sampling lattice: d spatial axes (d = 2 or 3) of n points over a
// box of side `period`, plus an optional time axis of n_t points over
// `t_window`. Frequencies live on the dual lattice (2 pi / period) Z^d, time
// frequencies on (2 pi / t_window) Z, both in the symmetric range
// [-n/2, n/2). The Nyquist row (index -n/2) is representable but all field
// constructors in this library leave it empty.
struct Grid {
    int dim = 2;
    int n = 8;
    double period = kTwoPi;
    int n_t = 0;  // 0: purely spatial grid
    double t_window = kTwoPi;

    static void check_axis(int n) {
        if (n < 8 || !bump::is_dyadic(static_cast<std::uint64_t>(n)))
            throw std::invalid_argument("grid: points per axis must be a power of two >= 8");
    }

    Grid() = default;
    Grid(int d, int n_, double period_, int n_t_ = 0, double t_window_ = kTwoPi)
        : dim(d), n(n_), period(period_), n_t(n_t_), t_window(t_window_) {
        if (d != 2 && d != 3) throw std::invalid_argument("grid: dimension must be 2 or 3");
        check_axis(n);
        if (period <= 0.0) throw std::invalid_argument("grid: period must be positive");
        if (n_t != 0) {
            check_axis(n_t);
            if (t_window <= 0.0) throw std::invalid_argument("grid: time window must be positive");
        }
    }

    bool has_time() const { return n_t != 0; }

    // dual lattice spacings
    double dk() const { return kTwoPi / period; }
    double dtau() const { return kTwoPi / t_window; }

    // physical sample positions
    double dx() const { return period / n; }
    double dt() const { return t_window / n_t; }

    // storage index <-> signed mode index on one spatial axis
    int mode_of_index(int i) const { return i < n / 2 ? i : i - n; }
    int index_of_mode(int k) const { return k >= 0 ? k : k + n; }
    int tmode_of_index(int i) const { return i < n_t / 2 ? i : i - n_t; }
    int tindex_of_mode(int k) const { return k >= 0 ? k : k + n_t; }

    std::size_t spatial_points() const {
        std::size_t p = 1;
        for (int a = 0; a < dim; ++a) p *= static_cast<std::size_t>(n);
        return p;
    }
    std::size_t total_points() const { return spatial_points() * (has_time() ? n_t : 1); }

    // frequency vector magnitude for a storage multi-index
    double freq_component(int i) const { return dk() * mode_of_index(i); }
    double time_freq(int i) const { return dtau() * tmode_of_index(i); }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && period == o.period && n_t == o.n_t &&
               t_window == o.t_window;
    }
};

inline Grid build_grid(int d, int n, double period, int n_t = 0, double t_window = kTwoPi) {
    return Grid(d, n, period, n_t, t_window);
}

// Canonical lab grid: integer dual lattice in space and time.
inline Grid integer_grid(int d, int n, int n_t = 0) { return Grid(d, n, kTwoPi, n_t, kTwoPi); }

}  // namespace nlslab
