#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nlslab {

// Smooth dyadic cutoff family.
//
//   chi(t) = 1 for |t| <= 1, 0 for |t| >= 2, and on 1 < |t| < 2 the C^inf
//   step  S(2 - |t|)  with  S(s) = f(s) / (f(s) + f(1-s)),  f(s) = exp(-1/s).
//
//   psi(t)   = chi(t) - chi(2t)            (supported on 1/2 <= |t| <= 2)
//   psi_1    = chi
//   psi_N(t) = psi(t / N) for dyadic N >= 2
//
// The family telescopes: sum_{N <= 2^K} psi_N(t) = chi(t / 2^K), so the
// dyadic sum is exactly 1 once 2^K >= |t|.
namespace bump {

inline double smooth_step(double s) {
    // 0 for s <= 0, 1 for s >= 1, strictly increasing in between
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double a = std::exp(-1.0 / s);
    double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

inline double chi(double t) {
    double a = std::fabs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

inline double psi(double t) { return chi(t) - chi(2.0 * t); }

inline bool is_dyadic(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline double psi_shell(std::uint64_t shell, double t) {
    if (!is_dyadic(shell)) throw std::invalid_argument("psi_N: N must be a power of two");
    if (shell == 1) return chi(t);
    return psi(t / static_cast<double>(shell));
}

// chi(t) > 1/2  <=>  |t| < 3/2;  psi(t) > 1/2  <=>  3/4 < |t| < 3/2.
// These thresholds bound the region where a shell multiplier exceeds 1/2,
// used when constructing frequency-localized test data.
inline constexpr double kHalfLoFactor = 0.75;
inline constexpr double kHalfHiFactor = 1.5;

// Support bounds of psi_N: psi_N(t) != 0 only for N/2 < |t| < 2N (N >= 2),
// |t| < 2 for N = 1.
inline double support_lo(std::uint64_t shell) { return shell == 1 ? 0.0 : 0.5 * static_cast<double>(shell); }
inline double support_hi(std::uint64_t shell) { return 2.0 * static_cast<double>(shell); }

}  // namespace bump

enum class BumpKind { chi, psi, psi_shell };

inline double eval_bump(BumpKind kind, std::uint64_t shell, double t) {
    switch (kind) {
        case BumpKind::chi: return bump::chi(t);
        case BumpKind::psi: return bump::psi(t);
        case BumpKind::psi_shell: return bump::psi_shell(shell, t);
    }
    return 0.0;
}

}  // namespace nlslab
