#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "nlslab/bump.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/sparse_wave.hpp"

namespace nlslab {

// Exact bilinear/trilinear evaluation on sparse waves.
//
// The product u1 u2 in space-time Fourier variables is the convolution of the
// two mode sets over the integer lattice; projections are smooth multipliers
// evaluated at exact mode locations. For each output spatial frequency xi3
// the time frequencies tau3 = tau1 + tau2 are collected in a small scratch
// hash, the squared moduli summed, and multiplied by the projection weights.
// All draws ride through one geometric pass (the coefficient columns are the
// only per-draw data), which is what makes the dyadic sweeps affordable.

// One requested output projection: P_{N3}, optionally composed with a
// modulation shell Q_{L3}^{sigma_out}. l3 == 0 means no modulation cutoff.
struct OutputVariant {
    std::uint64_t n3 = 1;
    std::uint64_t l3 = 0;
    double sigma_out = 0.0;
};

namespace engine_detail {

// open-addressing tau -> slot scratch with epoch clearing
class TauScratch {
public:
    void reset_capacity(std::size_t buckets, int draws) {
        buckets_ = 1;
        while (buckets_ < buckets) buckets_ <<= 1;
        keys_.assign(buckets_, 0);
        stamp_.assign(buckets_, 0);
        slot_at_.assign(buckets_, 0);
        draws_ = draws;
        acc_.assign(buckets_ * static_cast<std::size_t>(draws), cplx{});
        slot_tau_.clear();
        epoch_ = 0;
    }

    void new_cell() {
        ++epoch_;
        slot_tau_.clear();
    }

    // returns pointer to the draw-row for tau, claiming a slot if new
    cplx* row(int tau) {
        std::size_t mask = buckets_ - 1;
        std::size_t h = static_cast<std::size_t>(tau * 2654435761u) & mask;
        while (true) {
            if (stamp_[h] != epoch_) {
                stamp_[h] = epoch_;
                keys_[h] = tau;
                std::uint32_t slot = static_cast<std::uint32_t>(slot_tau_.size());
                slot_tau_.push_back(tau);
                slot_at_[h] = slot;
                cplx* r = acc_.data() + static_cast<std::size_t>(slot) * draws_;
                std::memset(r, 0, sizeof(cplx) * static_cast<std::size_t>(draws_));
                if (slot_tau_.size() * 2 > buckets_) overflowed_ = true;
                return r;
            }
            if (keys_[h] == tau) return acc_.data() + static_cast<std::size_t>(slot_at_[h]) * draws_;
            h = (h + 1) & mask;
        }
    }

    bool overflowed() const { return overflowed_; }
    void clear_overflow() { overflowed_ = false; }
    const std::vector<int>& slots() const { return slot_tau_; }
    const cplx* slot_row(std::size_t slot) const {
        return acc_.data() + slot * static_cast<std::size_t>(draws_);
    }

private:
    std::size_t buckets_ = 0;
    int draws_ = 0;
    std::uint32_t epoch_ = 0;
    bool overflowed_ = false;
    std::vector<int> keys_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> slot_at_;
    std::vector<cplx> acc_;
    std::vector<int> slot_tau_;
};

inline double shell_weight(std::uint64_t shell, double t) {
    return bump::psi_shell(shell, t);
}

}  // namespace engine_detail

// For every requested output variant, the per-draw L^2_tx norm of the
// projected product: lhs[variant][draw] = || [Q_{L3}^{sigma_out}] P_{N3} (u1 u2) ||.
inline std::vector<std::vector<double>> projected_product_norms(
    const LocalizedWave& u1, const LocalizedWave& u2, const std::vector<OutputVariant>& variants,
    int threads = default_threads()) {
    if (u1.dim != u2.dim) throw std::invalid_argument("product: dimension mismatch");
    if (u1.draws != u2.draws) throw std::invalid_argument("product: draw count mismatch");
    const int dim = u1.dim;
    const int draws = u1.draws;
    const std::size_t nvar = variants.size();

    // output box: Minkowski sum of supports, clipped to the union of the
    // variants' P_{N3} supports
    double rmax = 0.0;
    for (const auto& v : variants) rmax = std::max(rmax, bump::support_hi(v.n3));
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < dim; ++a) {
        lo[a] = u1.box_lo[a] + u2.box_lo[a];
        hi[a] = (u1.box_lo[a] + u1.box_n[a] - 1) + (u2.box_lo[a] + u2.box_n[a] - 1);
        lo[a] = std::max(lo[a], -static_cast<int>(std::ceil(rmax)));
        hi[a] = std::min(hi[a], static_cast<int>(std::ceil(rmax)));
    }
    std::array<std::size_t, 3> ext{1, 1, 1};
    std::size_t cells = 1;
    for (int a = 0; a < dim; ++a) {
        if (hi[a] < lo[a]) return std::vector<std::vector<double>>(nvar, std::vector<double>(draws, 0.0));
        ext[a] = static_cast<std::size_t>(hi[a] - lo[a] + 1);
        cells *= ext[a];
    }

    const int nchunks = std::max(1, threads);
    // per-chunk partial sums of squared norms, merged in chunk order
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(nchunks),
                                             std::vector<double>(nvar * draws, 0.0));

    parallel_chunks(cells, nchunks, [&](int chunk, std::size_t begin, std::size_t end) {
        engine_detail::TauScratch scratch;
        scratch.reset_capacity(1 << 12, draws);
        std::vector<double> wl(nvar);
        std::vector<double>& sums = partial[static_cast<std::size_t>(chunk)];
        std::vector<double> s2(static_cast<std::size_t>(draws));

        for (std::size_t cell = begin; cell < end; ++cell) {
            // decode xi3
            std::array<int, 3> xi3{0, 0, 0};
            std::size_t rem = cell;
            for (int a = dim - 1; a >= 0; --a) {
                xi3[a] = lo[a] + static_cast<int>(rem % ext[a]);
                rem /= ext[a];
            }
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) r2 += double(xi3[a]) * xi3[a];
            double r = std::sqrt(r2);
            // spatial weights per variant; skip cell if all vanish
            bool any = false;
            for (std::size_t v = 0; v < nvar; ++v) {
                double w = engine_detail::shell_weight(variants[v].n3, r);
                wl[v] = w * w;
                any = any || w != 0.0;
            }
            if (!any) continue;

        redo_cell:
            scratch.new_cell();
            bool touched = false;
            for (std::size_t node1 = 0; node1 < u1.nodes(); ++node1) {
                std::array<int, 3> xi2;
                for (int a = 0; a < 3; ++a) xi2[a] = xi3[a] - u1.node_xi[node1][a];
                int node2 = u2.node_at(xi2);
                if (node2 < 0) continue;
                touched = true;
                for (std::uint32_t m1 = u1.node_begin[node1]; m1 < u1.node_end(node1); ++m1) {
                    const cplx* c1 = u1.coef_row(m1);
                    int t1 = u1.mode_tau[m1];
                    for (std::uint32_t m2 = u2.node_begin[node2];
                         m2 < u2.node_end(static_cast<std::size_t>(node2)); ++m2) {
                        const cplx* c2 = u2.coef_row(m2);
                        cplx* out = scratch.row(t1 + u2.mode_tau[m2]);
                        for (int d = 0; d < draws; ++d) out[d] += c1[d] * c2[d];
                    }
                }
            }
            if (scratch.overflowed()) {
                scratch.reset_capacity(scratch.slots().size() * 4, draws);
                scratch.clear_overflow();
                goto redo_cell;
            }
            if (!touched) continue;

            // untangle the variants: modulation-free ones share a plain sum
            bool need_plain = false;
            for (std::size_t v = 0; v < nvar; ++v)
                if (variants[v].l3 == 0 && wl[v] != 0.0) need_plain = true;
            if (need_plain) {
                std::fill(s2.begin(), s2.end(), 0.0);
                for (std::size_t slot = 0; slot < scratch.slots().size(); ++slot) {
                    const cplx* row = scratch.slot_row(slot);
                    for (int d = 0; d < draws; ++d) s2[static_cast<std::size_t>(d)] += std::norm(row[d]);
                }
                for (std::size_t v = 0; v < nvar; ++v) {
                    if (variants[v].l3 != 0 || wl[v] == 0.0) continue;
                    for (int d = 0; d < draws; ++d)
                        sums[v * draws + static_cast<std::size_t>(d)] += wl[v] * s2[static_cast<std::size_t>(d)];
                }
            }
            for (std::size_t v = 0; v < nvar; ++v) {
                if (variants[v].l3 == 0 || wl[v] == 0.0) continue;
                for (std::size_t slot = 0; slot < scratch.slots().size(); ++slot) {
                    double m3 = double(scratch.slots()[slot]) + variants[v].sigma_out * r2;
                    double g = engine_detail::shell_weight(variants[v].l3, m3);
                    if (g == 0.0) continue;
                    const cplx* row = scratch.slot_row(slot);
                    double gw = wl[v] * g * g;
                    for (int d = 0; d < draws; ++d)
                        sums[v * draws + static_cast<std::size_t>(d)] += gw * std::norm(row[d]);
                }
            }
        }
    });

    std::vector<std::vector<double>> out(nvar, std::vector<double>(draws, 0.0));
    for (std::size_t v = 0; v < nvar; ++v)
        for (int d = 0; d < draws; ++d) {
            double s = 0.0;
            for (int c = 0; c < nchunks; ++c) s += partial[static_cast<std::size_t>(c)][v * draws + static_cast<std::size_t>(d)];
            out[v][static_cast<std::size_t>(d)] = std::sqrt(s);
        }
    return out;
}

// Per-draw |integral of u1 u2 u3 dx dt| over the zero-sum frequency set
// (tau_1 + tau_2 + tau_3 = 0, xi_1 + xi_2 + xi_3 = 0).
inline std::vector<double> trilinear_pairing(const LocalizedWave& u1, const LocalizedWave& u2,
                                             const LocalizedWave& u3,
                                             int threads = default_threads()) {
    if (u1.dim != u2.dim || u1.dim != u3.dim) throw std::invalid_argument("trilinear: dimension mismatch");
    if (u1.draws != u2.draws || u1.draws != u3.draws)
        throw std::invalid_argument("trilinear: draw count mismatch");
    const int draws = u1.draws;
    const int nchunks = std::max(1, threads);
    std::vector<std::vector<cplx>> partial(static_cast<std::size_t>(nchunks),
                                           std::vector<cplx>(static_cast<std::size_t>(draws), cplx{}));

    parallel_chunks(u3.nodes(), nchunks, [&](int chunk, std::size_t begin, std::size_t end) {
        std::vector<cplx>& acc = partial[static_cast<std::size_t>(chunk)];
        for (std::size_t node3 = begin; node3 < end; ++node3) {
            const auto& x3 = u3.node_xi[node3];
            const std::uint32_t b3 = u3.node_begin[node3], e3 = u3.node_end(node3);
            int t3lo = u3.mode_tau[b3], t3hi = u3.mode_tau[e3 - 1];
            for (std::size_t node1 = 0; node1 < u1.nodes(); ++node1) {
                std::array<int, 3> x2;
                for (int a = 0; a < 3; ++a) x2[a] = -x3[a] - u1.node_xi[node1][a];
                int node2 = u1.dim == 2 ? (x2[2] == 0 ? u2.node_at(x2) : -1) : u2.node_at(x2);
                if (node2 < 0) continue;
                for (std::uint32_t m1 = u1.node_begin[node1]; m1 < u1.node_end(node1); ++m1) {
                    int t1 = u1.mode_tau[m1];
                    const cplx* c1 = u1.coef_row(m1);
                    for (std::uint32_t m2 = u2.node_begin[static_cast<std::size_t>(node2)];
                         m2 < u2.node_end(static_cast<std::size_t>(node2)); ++m2) {
                        int t3 = -t1 - u2.mode_tau[m2];
                        if (t3 < t3lo || t3 > t3hi) continue;
                        // tau values within a node are consecutive in storage
                        // but form up to two runs; linear scan is tiny
                        for (std::uint32_t m3 = b3; m3 < e3; ++m3) {
                            if (u3.mode_tau[m3] != t3) continue;
                            const cplx* c2 = u2.coef_row(m2);
                            const cplx* c3 = u3.coef_row(m3);
                            for (int d = 0; d < draws; ++d)
                                acc[static_cast<std::size_t>(d)] += c1[d] * c2[d] * c3[d];
                            break;
                        }
                    }
                }
            }
        }
    });

    std::vector<double> out(static_cast<std::size_t>(draws), 0.0);
    for (int d = 0; d < draws; ++d) {
        cplx s{};
        for (int c = 0; c < nchunks; ++c) s += partial[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
        out[static_cast<std::size_t>(d)] = std::abs(s);
    }
    return out;
}

}  // namespace nlslab
