#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

// Iterative radix-2 complex FFT, unitary normalization (1/sqrt(n) in both
// directions). Power-of-two lengths only, which the grid type guarantees.
namespace fft_detail {

struct Tables {
    std::vector<std::size_t> bitrev;
    std::vector<cplx> roots;  // e^{-2 pi i k / n}, k < n/2
};

inline const Tables& tables_for(std::size_t n) {
    thread_local std::map<std::size_t, Tables> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Tables t;
    t.bitrev.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
        t.bitrev[i] = r;
    }
    t.roots.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        t.roots[k] = {std::cos(ang), std::sin(ang)};
    }
    return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace fft_detail

// In-place transform of a contiguous length-n buffer. forward = true applies
// e^{-i k x} phases; the inverse conjugates. Both scale by 1/sqrt(n).
inline void fft_1d(cplx* data, std::size_t n, bool forward) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_1d: length must be a power of two");
    if (n == 1) return;
    const auto& t = fft_detail::tables_for(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = t.bitrev[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t step = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = t.roots[k * step];
                if (!forward) w = std::conj(w);
                cplx u = data[blk + k];
                cplx v = data[blk + k + len / 2] * w;
                data[blk + k] = u + v;
                data[blk + k + len / 2] = u - v;
            }
        }
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

// Strided transform: lines of length n with elements spaced by `stride`,
// `count` consecutive lines offset by `line_step`.
inline void fft_lines(cplx* base, std::size_t n, std::size_t stride, std::size_t count,
                      std::size_t line_step, bool forward) {
    std::vector<cplx> buf(n);
    for (std::size_t line = 0; line < count; ++line) {
        cplx* p = base + line * line_step;
        if (stride == 1) {
            fft_1d(p, n, forward);
        } else {
            for (std::size_t i = 0; i < n; ++i) buf[i] = p[i * stride];
            fft_1d(buf.data(), n, forward);
            for (std::size_t i = 0; i < n; ++i) p[i * stride] = buf[i];
        }
    }
}

}  // namespace nlslab
