#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nlslab {

// The admissible b' windows of the contraction argument's high-modulation
// case: [5/12, 1/2) in two dimensions (s >= 1/2), and
// (7/12 - s/6, 1/2) in three dimensions (s > 1/2).
struct BPrimeWindow {
    double lo;
    bool lo_open;
    double hi = 0.5;  // always open at 1/2
};

inline BPrimeWindow trilinear_bprime_window(int dim, double s) {
    if (dim == 2) {
        if (s < 0.5) throw std::invalid_argument("b' window: need s >= 1/2 in 2D");
        return {5.0 / 12.0, false};
    }
    if (dim == 3) {
        if (s <= 0.5) throw std::invalid_argument("b' window: need s > 1/2 in 3D");
        return {7.0 / 12.0 - s / 6.0, true};
    }
    throw std::invalid_argument("b' window: dim must be 2 or 3");
}

inline bool bprime_in_window(int dim, double s, double b_prime) {
    BPrimeWindow w = trilinear_bprime_window(dim, s);
    if (b_prime >= w.hi) return false;
    return w.lo_open ? b_prime > w.lo : b_prime >= w.lo;
}

// High-modulation exponent bound: with delta = 1/2 - b',
//   N1^{(d-1)/2 + 2 delta} N2^{1/2 - 2 b' + 2 delta} <= (N1/N2)^eps N1^s
// for all dyadic 1 <= N1 <= N2, with the gain eps = 4 b' - 3/2 > 0 available
// throughout the admissible windows.
inline double exponent_gain(double b_prime) { return 4.0 * b_prime - 1.5; }

inline bool exponent_bound_holds(int dim, double s, double b_prime, int n1_log2, int n2_log2,
                                 double eps) {
    double delta = 0.5 - b_prime;
    double lhs = n1_log2 * ((dim - 1) / 2.0 + 2.0 * delta) + n2_log2 * (0.5 - 2.0 * b_prime + 2.0 * delta);
    double rhs = eps * (n1_log2 - n2_log2) + s * n1_log2;
    return lhs <= rhs + 1e-9;
}

// exhaustive check over all dyadic N1 <= N2 <= 2^max_log2
inline bool check_exponent_bound(int dim, double s, double b_prime, int max_log2 = 20,
                                 double* eps_out = nullptr) {
    if (!(b_prime > 0.0 && b_prime < 0.5))
        throw std::invalid_argument("exponent bound: b' must lie in (0, 1/2)");
    double eps = 0.5 * exponent_gain(b_prime);
    if (eps_out) *eps_out = eps;
    if (eps <= 0.0) return false;
    for (int n2 = 0; n2 <= max_log2; ++n2)
        for (int n1 = 0; n1 <= n2; ++n1)
            if (!exponent_bound_holds(dim, s, b_prime, n1, n2, eps)) return false;
    return true;
}

}  // namespace nlslab
