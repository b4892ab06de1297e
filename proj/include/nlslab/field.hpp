#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/rng.hpp"

namespace nlslab {

enum class Rep { physical, fourier };
enum class Direction { forward, inverse };  // forward: physical -> fourier

// One complex-valued component sampled on a Grid. Vector-valued fields are
// ordered lists of components (see VectorField below).
//
// Storage is row-major with the time axis slowest: [t][x1][x2][x3]. The DFT
// is unitary per axis, so the flat l2() norm is representation-invariant.
// Fourier coefficients in the expansion u = sum_k c_k e^{i k x} relate to
// stored fourier values by c_k = value / sqrt(total_points).
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    SpaceTimeField(Grid g, Rep rep) : grid_(g), rep_(rep), data_(g.total_points()) {}

    const Grid& grid() const { return grid_; }
    Rep rep() const { return rep_; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    std::size_t flat(int it, int i1, int i2, int i3 = 0) const {
        std::size_t idx = grid_.has_time() ? static_cast<std::size_t>(it) : 0;
        idx = idx * grid_.n + i1;
        idx = idx * grid_.n + i2;
        if (grid_.dim == 3) idx = idx * grid_.n + i3;
        return idx;
    }
    cplx& at(int it, int i1, int i2, int i3 = 0) { return data_[flat(it, i1, i2, i3)]; }
    const cplx& at(int it, int i1, int i2, int i3 = 0) const { return data_[flat(it, i1, i2, i3)]; }

    // set a single Fourier mode by signed mode indices (field must be fourier)
    void set_mode(int tmode, int k1, int k2, int k3, cplx coefficient) {
        if (rep_ != Rep::fourier) throw std::logic_error("set_mode: field is not in fourier representation");
        int it = grid_.has_time() ? grid_.tindex_of_mode(tmode) : 0;
        at(it, grid_.index_of_mode(k1), grid_.index_of_mode(k2),
           grid_.dim == 3 ? grid_.index_of_mode(k3) : 0) +=
            coefficient * std::sqrt(static_cast<double>(grid_.total_points()));
    }

    double l2() const {
        double s = 0.0;
        for (const cplx& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    // measure-averaged L^2: the l2 of the Fourier coefficients c_k
    double l2_avg() const { return l2() / std::sqrt(static_cast<double>(grid_.total_points())); }

    // integral norm: (sum |u|^2 * cell_volume)^{1/2} in physical representation
    double l2_integral() const {
        double cell = std::pow(grid_.dx(), grid_.dim) * (grid_.has_time() ? grid_.dt() : 1.0);
        double s = 0.0;
        for (const cplx& v : data_) s += std::norm(v);
        if (rep_ == Rep::fourier) {
            // Parseval: same flat sum, convert through the physical measure
        }
        return std::sqrt(s * cell);
    }

    void transform_in_place(Direction dir) {
        Rep want = dir == Direction::forward ? Rep::physical : Rep::fourier;
        if (rep_ != want) throw std::invalid_argument("transform: representation does not match direction");
        bool fwd = dir == Direction::forward;
        const int n = grid_.n;
        const std::size_t sp = grid_.spatial_points();
        const int nt = grid_.has_time() ? grid_.n_t : 1;

        // spatial axes, slice by slice
        for (int t = 0; t < nt; ++t) {
            cplx* slab = data_.data() + static_cast<std::size_t>(t) * sp;
            if (grid_.dim == 2) {
                fft_lines(slab, n, 1, n, n, fwd);                    // rows (x2 varies)
                fft_lines(slab, n, n, n, 1, fwd);                    // cols (x1 varies)
            } else {
                std::size_t nn = static_cast<std::size_t>(n) * n;
                for (int i1 = 0; i1 < n; ++i1)
                    fft_lines(slab + i1 * nn, n, 1, n, n, fwd);      // x3 lines
                for (int i1 = 0; i1 < n; ++i1)
                    fft_lines(slab + i1 * nn, n, n, n, 1, fwd);      // x2 lines
                fft_lines(slab, n, nn, nn, 1, fwd);                  // x1 lines
            }
        }
        // time axis
        if (grid_.has_time()) fft_lines(data_.data(), static_cast<std::size_t>(nt), sp, sp, 1, fwd);
        rep_ = fwd ? Rep::fourier : Rep::physical;
    }

    SpaceTimeField transformed(Direction dir) const {
        SpaceTimeField out = *this;
        out.transform_in_place(dir);
        return out;
    }

    // convenience: return a copy in the requested representation
    SpaceTimeField in_rep(Rep want) const {
        if (rep_ == want) return *this;
        return transformed(want == Rep::fourier ? Direction::forward : Direction::inverse);
    }

    static SpaceTimeField zero(Grid g, Rep rep = Rep::fourier) { return SpaceTimeField(g, rep); }

    static SpaceTimeField random(Grid g, Rng& rng, Rep rep = Rep::fourier) {
        SpaceTimeField f(g, rep);
        for (cplx& v : f.data_) v = rng.gaussian_complex();
        return f;
    }

private:
    Grid grid_;
    Rep rep_ = Rep::fourier;
    std::vector<cplx> data_;
};

inline SpaceTimeField transform(const SpaceTimeField& f, Direction dir) { return f.transformed(dir); }

using VectorField = std::vector<SpaceTimeField>;

inline double l2(const VectorField& v) {
    double s = 0.0;
    for (const auto& c : v) {
        double x = c.l2();
        s += x * x;
    }
    return std::sqrt(s);
}

}  // namespace nlslab
