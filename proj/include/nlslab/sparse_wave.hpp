#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nlslab/bump.hpp"
#include "nlslab/caps3d.hpp"
#include "nlslab/field.hpp"
#include "nlslab/multipliers.hpp"
#include "nlslab/rng.hpp"

namespace nlslab {

// Frequency-localized space-time test waves for the estimate harness.
//
// A wave on shell (N, L, sigma) lives on exact lattice points (tau, xi) in
// Z x Z^d selected where psi_N(|xi|) > 1/2 and psi_L(tau + sigma |xi|^2) > 1/2
// (plus an optional angular cap and an optional spatial pre-localization).
// Such supports sit near the paraboloid tau ~ -sigma |xi|^2, far outside any
// affordable dense space-time lattice at large N, so they are stored sparsely
// and products are evaluated by exact convolution of the mode sets. Dense
// grids remain available through to_grid() for cross-validation at small N.
//
// Coefficients are complex Gaussian draws, one column per draw, each column
// normalized to unit l2 (= unit L^2_tx).

struct Cap2dSpec {
    std::uint64_t aperture;
    long index;
};

struct Cap3dSpec {
    std::shared_ptr<const CapFamily3D> family;
    long index;
};

struct WaveLocalization {
    std::optional<Cap2dSpec> cap2d;
    std::optional<Cap3dSpec> cap3d;
    // extra spatial predicate used to realize the proofs' harmless
    // decompositions (cubes, slabs, aligned annuli) exactly
    std::function<bool(const std::array<int, 3>&)> extra;
    // deterministic support thinning (desk-scale budget): keep a spatial
    // node iff hash(xi) < keep_fraction; any subset of the shell is again
    // admissible test data for the estimates
    double keep_fraction = 1.0;
};

namespace wave_detail {

inline bool keep_node(const std::array<int, 3>& xi, double fraction) {
    if (fraction >= 1.0) return true;
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int a = 0; a < 3; ++a) {
        h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(xi[a])) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 29;
    }
    return static_cast<double>(h >> 11) * 0x1.0p-53 < fraction;
}

}  // namespace wave_detail

class LocalizedWave {
public:
    int dim = 2;
    std::uint64_t n_shell = 1, l_shell = 1;
    double sigma = 1.0;
    int draws = 0;

    // spatial nodes; node k owns modes [node_begin[k], node_begin[k+1])
    std::vector<std::array<int, 3>> node_xi;
    std::vector<std::uint32_t> node_begin;
    std::vector<int> mode_tau;
    std::vector<cplx> coef;  // [mode * draws + draw]

    // dense spatial lookup over the bounding box: node index or -1
    std::array<int, 3> box_lo{0, 0, 0};
    std::array<int, 3> box_n{1, 1, 1};
    std::vector<std::int32_t> dense;

    std::size_t modes() const { return mode_tau.size(); }
    std::size_t nodes() const { return node_xi.size(); }
    std::uint32_t node_end(std::size_t k) const { return node_begin[k + 1]; }

    int node_at(const std::array<int, 3>& xi) const {
        std::size_t idx = 0;
        for (int a = 0; a < dim; ++a) {
            int r = xi[a] - box_lo[a];
            if (r < 0 || r >= box_n[a]) return -1;
            idx = idx * box_n[a] + static_cast<std::size_t>(r);
        }
        return dense[idx];
    }

    const cplx* coef_row(std::size_t mode) const { return coef.data() + mode * draws; }

    double xi_norm2(std::size_t node) const {
        const auto& x = node_xi[node];
        return double(x[0]) * x[0] + double(x[1]) * x[1] + double(x[2]) * x[2];
    }
};

namespace wave_detail {

inline bool in_shell(std::uint64_t n_shell, double r) {
    if (n_shell == 1) return r < bump::kHalfHiFactor;
    return r > bump::kHalfLoFactor * double(n_shell) && r < bump::kHalfHiFactor * double(n_shell);
}

inline bool in_mod_window(std::uint64_t l_shell, double m) {
    double a = std::fabs(m);
    if (l_shell == 1) return a < bump::kHalfHiFactor;
    return a > bump::kHalfLoFactor * double(l_shell) && a < bump::kHalfHiFactor * double(l_shell);
}

}  // namespace wave_detail

// Enumerate the support and draw Gaussian coefficient columns.
inline LocalizedWave make_localized_wave(int dim, std::uint64_t n_shell, std::uint64_t l_shell,
                                         double sigma, const WaveLocalization& loc, int draws,
                                         std::uint64_t seed) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("localized wave: dim must be 2 or 3");
    if (!bump::is_dyadic(n_shell) || !bump::is_dyadic(l_shell))
        throw std::invalid_argument("localized wave: N and L must be dyadic");
    if (sigma == 0.0) throw std::invalid_argument("localized wave: sigma must be nonzero");
    if (draws < 1) throw std::invalid_argument("localized wave: need at least one draw");

    LocalizedWave w;
    w.dim = dim;
    w.n_shell = n_shell;
    w.l_shell = l_shell;
    w.sigma = sigma;
    w.draws = draws;

    const int hi = static_cast<int>(std::ceil(bump::kHalfHiFactor * double(n_shell)));
    const int k3 = dim == 3 ? hi : 0;
    std::array<int, 3> xi{};
    for (int a = -hi; a <= hi; ++a) {
        for (int b = -hi; b <= hi; ++b) {
            for (int c = -k3; c <= k3; ++c) {
                xi = {a, b, c};
                double r2 = double(a) * a + double(b) * b + double(c) * c;
                double r = std::sqrt(r2);
                if (!wave_detail::in_shell(n_shell, r)) continue;
                if (loc.cap2d) {
                    double theta = std::atan2(double(b), double(a));
                    if (angular2d::sector_weight(loc.cap2d->aperture, loc.cap2d->index, theta) <= 0.5)
                        continue;
                }
                if (loc.cap3d) {
                    if (r == 0.0) continue;
                    Vec3 x{a / r, b / r, c / r};
                    if (!loc.cap3d->family->contains(loc.cap3d->index, x)) continue;
                }
                if (loc.extra && !loc.extra(xi)) continue;
                if (!wave_detail::keep_node(xi, loc.keep_fraction)) continue;

                // tau window: integers with psi_L(tau + sigma r^2) > 1/2
                double center = -sigma * r2;
                int tlo = static_cast<int>(std::floor(center - bump::kHalfHiFactor * double(l_shell))) - 1;
                int thi = static_cast<int>(std::ceil(center + bump::kHalfHiFactor * double(l_shell))) + 1;
                bool node_open = false;
                for (int t = tlo; t <= thi; ++t) {
                    if (!wave_detail::in_mod_window(l_shell, double(t) + sigma * r2)) continue;
                    if (!node_open) {
                        w.node_xi.push_back(xi);
                        w.node_begin.push_back(static_cast<std::uint32_t>(w.mode_tau.size()));
                        node_open = true;
                    }
                    w.mode_tau.push_back(t);
                }
            }
        }
    }
    w.node_begin.push_back(static_cast<std::uint32_t>(w.mode_tau.size()));
    if (w.mode_tau.empty()) throw std::runtime_error("localized wave: empty support");

    // dense spatial lookup
    for (int a = 0; a < 3; ++a) {
        w.box_lo[a] = 0;
        w.box_n[a] = 1;
    }
    for (int a = 0; a < dim; ++a) {
        int lo = w.node_xi[0][a], hi_ = w.node_xi[0][a];
        for (const auto& x : w.node_xi) {
            lo = std::min(lo, x[a]);
            hi_ = std::max(hi_, x[a]);
        }
        w.box_lo[a] = lo;
        w.box_n[a] = hi_ - lo + 1;
    }
    std::size_t cells = 1;
    for (int a = 0; a < dim; ++a) cells *= static_cast<std::size_t>(w.box_n[a]);
    w.dense.assign(cells, -1);
    for (std::size_t k = 0; k < w.node_xi.size(); ++k) {
        std::size_t idx = 0;
        for (int a = 0; a < dim; ++a)
            idx = idx * w.box_n[a] + static_cast<std::size_t>(w.node_xi[k][a] - w.box_lo[a]);
        w.dense[idx] = static_cast<std::int32_t>(k);
    }

    // Gaussian coefficient columns, unit l2 each
    const std::size_t m = w.mode_tau.size();
    w.coef.assign(m * draws, cplx{});
    for (int d = 0; d < draws; ++d) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(d) + 1, 0x5eedULL));
        double nrm2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            cplx v = rng.gaussian_complex();
            w.coef[k * draws + d] = v;
            nrm2 += std::norm(v);
        }
        double inv = 1.0 / std::sqrt(nrm2);
        for (std::size_t k = 0; k < m; ++k) w.coef[k * draws + d] *= inv;
    }
    return w;
}

// spec-level constructor: one draw, returned as a sparse wave
inline LocalizedWave random_localized_field(int dim, std::uint64_t n_shell, std::uint64_t l_shell,
                                            double sigma, const WaveLocalization& loc,
                                            std::uint64_t seed) {
    return make_localized_wave(dim, n_shell, l_shell, sigma, loc, 1, seed);
}

// Densify one draw onto a grid (unit dual lattice required). Throws when the
// support does not fit strictly inside the lattice's guard band.
inline SpaceTimeField to_grid(const LocalizedWave& w, const Grid& g, int draw = 0) {
    if (g.dim != w.dim) throw std::invalid_argument("to_grid: dimension mismatch");
    if (!g.has_time()) throw std::invalid_argument("to_grid: grid needs a time axis");
    if (std::fabs(g.dk() - 1.0) > 1e-14 || std::fabs(g.dtau() - 1.0) > 1e-14)
        throw std::invalid_argument("to_grid: expected an integer dual lattice (period 2 pi)");
    SpaceTimeField f(g, Rep::fourier);
    for (std::size_t node = 0; node < w.nodes(); ++node) {
        const auto& xi = w.node_xi[node];
        for (int a = 0; a < w.dim; ++a)
            if (xi[a] <= -g.n / 2 || xi[a] >= g.n / 2)
                throw std::invalid_argument("to_grid: shell outside grid");
        for (std::uint32_t mode = w.node_begin[node]; mode < w.node_end(node); ++mode) {
            int t = w.mode_tau[mode];
            if (t <= -g.n_t / 2 || t >= g.n_t / 2)
                throw std::invalid_argument("to_grid: modulation support outside grid");
            f.set_mode(t, xi[0], xi[1], w.dim == 3 ? xi[2] : 0, w.coef_row(mode)[draw]);
        }
    }
    return f;
}

// ready-made spatial pre-localizations (the proofs' harmless decompositions)
inline std::function<bool(const std::array<int, 3>&)> cube_filter(std::array<int, 3> center,
                                                                  int half_width) {
    return [center, half_width](const std::array<int, 3>& xi) {
        for (int a = 0; a < 3; ++a)
            if (std::abs(xi[a] - center[a]) > half_width) return false;
        return true;
    };
}

inline std::function<bool(const std::array<int, 3>&)> slab_filter(Vec3 normal, double half_width) {
    return [normal, half_width](const std::array<int, 3>& xi) {
        double p = normal[0] * xi[0] + normal[1] * xi[1] + normal[2] * xi[2];
        return std::fabs(p) <= half_width;
    };
}

}  // namespace nlslab
