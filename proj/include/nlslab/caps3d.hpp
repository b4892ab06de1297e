#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nlslab {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double angle_between(const Vec3& a, const Vec3& b) {
    double c = dot3(a, b);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

namespace caps_detail {

inline void normalize(Vec3& v) {
    double n = std::sqrt(dot3(v, v));
    v[0] /= n;
    v[1] /= n;
    v[2] /= n;
}

// vertices of the geodesic subdivision of the icosahedron at frequency f
inline std::vector<Vec3> geodesic_points(int f) {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, p, 0}, {1, p, 0},  {-1, -p, 0}, {1, -p, 0},
                           {0, -1, p}, {0, 1, p},  {0, -1, -p}, {0, 1, -p},
                           {p, 0, -1}, {p, 0, 1},  {-p, 0, -1}, {-p, 0, 1}};
    for (auto& x : v) normalize(x);
    static const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                     {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                     {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                     {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    std::map<std::array<long, 3>, int> seen;
    std::vector<Vec3> out;
    for (const auto& face : faces) {
        for (int i = 0; i <= f; ++i) {
            for (int j = 0; j <= f - i; ++j) {
                int k = f - i - j;
                Vec3 q{0, 0, 0};
                for (int a = 0; a < 3; ++a)
                    q[a] = v[face[0]][a] * i + v[face[1]][a] * j + v[face[2]][a] * k;
                normalize(q);
                std::array<long, 3> key{static_cast<long>(std::llround(q[0] * 1e7)),
                                        static_cast<long>(std::llround(q[1] * 1e7)),
                                        static_cast<long>(std::llround(q[2] * 1e7))};
                if (seen.emplace(key, 1).second) out.push_back(q);
            }
        }
    }
    return out;
}

// subdivision frequencies verified (dense directional sampling) to give
// covering multiplicity in [1, 3] at radius factor 0.76
inline int verified_frequency(int aperture) {
    static const std::map<int, int> table = {{1, 2},   {2, 3},   {3, 5},   {4, 6},  {5, 8},
                                             {6, 9},   {8, 13},  {12, 19}, {16, 25}, {24, 37},
                                             {32, 49}, {48, 74}, {64, 99}};
    auto it = table.find(aperture);
    if (it != table.end()) return it->second;
    return std::max(2, static_cast<int>(std::round(1.55 * aperture)));
}

}  // namespace caps_detail

// Spherical cap covering of S^2 built on a geodesic icosahedral grid. Cap j
// is centered at grid point p_j with radius r_j = min(1/(2A), 0.76 d_j),
// d_j the nearest-neighbor distance: any two vectors in one cap subtend an
// angle <= 1/A, every direction lies in at least one and at most three caps.
class CapFamily3D {
public:
    explicit CapFamily3D(int aperture) : aperture_(aperture) {
        if (aperture < 1) throw std::invalid_argument("cap family: A must be a positive integer");
        centers_ = caps_detail::geodesic_points(caps_detail::verified_frequency(aperture));
        count_ = static_cast<int>(centers_.size());
        std::sort(centers_.begin(), centers_.end(),
                  [](const Vec3& a, const Vec3& b) { return a[2] > b[2]; });
        radius_.resize(count_);
        double rmax = 0.5 / aperture;
        double win = 4.0 * rmax;
        max_radius_ = 0.0;
        for (int i = 0; i < count_; ++i) {
            double nn = M_PI;
            for (int j = z_window_lo(centers_[i][2] + win); j < count_; ++j) {
                if (centers_[j][2] < centers_[i][2] - win) break;
                if (j == i) continue;
                nn = std::min(nn, angle_between(centers_[i], centers_[j]));
            }
            radius_[i] = std::min(rmax, 0.76 * nn);
            max_radius_ = std::max(max_radius_, radius_[i]);
        }
    }

    int aperture() const { return aperture_; }
    int size() const { return count_; }
    double radius(int j) const { return radius_[j]; }
    double max_radius() const { return max_radius_; }
    const Vec3& center(int j) const { return centers_[j]; }

    bool contains(int j, const Vec3& x) const {
        return angle_between(centers_[j], x) <= radius_[j];
    }

    int multiplicity(const Vec3& x) const {
        int m = 0;
        visit_candidates(x, [&](int j) {
            if (contains(j, x)) ++m;
        });
        return m;
    }

    std::vector<int> caps_containing(const Vec3& x) const {
        std::vector<int> out;
        visit_candidates(x, [&](int j) {
            if (contains(j, x)) out.push_back(j);
        });
        return out;
    }

    // Minimal angle between straight lines through caps j1 and j2:
    // inf over x in cap j1, y in cap j2 of min(angle(x,y), angle(-x,y)).
    double alpha(int j1, int j2) const {
        double a = angle_between(centers_[j1], centers_[j2]);
        double pad = radius_[j1] + radius_[j2];
        double lo = std::min(a - pad, M_PI - a - pad);
        return std::max(0.0, lo);
    }

    // caps j2 whose line angle to j1 lies in [lo/A, hi/A]
    std::vector<int> separated_neighbors(int j1, double lo, double hi) const {
        std::vector<int> out;
        double a = 1.0 / aperture_;
        for (int j2 = 0; j2 < count_; ++j2) {
            double al = alpha(j1, j2);
            if (al >= lo * a && al <= hi * a) out.push_back(j2);
        }
        return out;
    }

    static std::shared_ptr<const CapFamily3D> shared(int aperture) {
        static std::mutex mu;
        static std::map<int, std::shared_ptr<const CapFamily3D>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(aperture);
        if (it != cache.end()) return it->second;
        auto fam = std::make_shared<const CapFamily3D>(aperture);
        cache[aperture] = fam;
        return fam;
    }

private:
    // centers are sorted by descending z; only a z-window can contain x
    int z_window_lo(double zhi) const {
        int lo = 0, hi = count_;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (centers_[mid][2] > zhi)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    template <class Fn>
    void visit_candidates(const Vec3& x, Fn&& fn) const {
        double pad = max_radius_ + 1e-12;
        int start = z_window_lo(x[2] + pad);
        for (int j = start; j < count_; ++j) {
            if (centers_[j][2] < x[2] - pad) break;
            fn(j);
        }
    }

    int aperture_;
    int count_;
    double max_radius_;
    std::vector<Vec3> centers_;
    std::vector<double> radius_;
};

}  // namespace nlslab
