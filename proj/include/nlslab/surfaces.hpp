#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nlslab/caps3d.hpp"
#include "nlslab/resonance.hpp"

namespace nlslab {

// Transversal surface machinery for the convolution estimate: paraboloid
// graph patches (tau, xi) with tau = quad |xi|^2 + c over a disc, and
// coordinate hyperplane pieces for the classical case. Points live in R^3
// ordered (x0, x1, x2) = (tau, xi_1, xi_2).

struct SurfacePatch {
    enum class Kind { paraboloid, plane };
    Kind kind = Kind::paraboloid;

    // paraboloid graph: x0 = quad (x1^2 + x2^2) + c over |xi - center| <= radius;
    // unit normal: sign * (1, -2 quad xi) / sqrt(1 + 4 quad^2 |xi|^2)
    double quad = 0.0, c = 0.0, normal_sign = 1.0;
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;

    // coordinate plane: x[axis] = c over the box [dom_lo, dom_hi] in the
    // remaining two coordinates
    int axis = 0;
    std::array<double, 2> dom_lo{0.0, 0.0}, dom_hi{1.0, 1.0};
};

// The two graph families of the rescaled bilinear reduction:
// phi_c^sigma(xi) = (-sigma |xi|^2 + c, xi) and the output graph
// psi(xi) = sigma3 |xi|^2 + c.
inline SurfacePatch paraboloid_patch(double sigma, bool output_graph, double c,
                                     std::array<double, 2> center, double radius) {
    SurfacePatch p;
    p.kind = SurfacePatch::Kind::paraboloid;
    p.quad = output_graph ? sigma : -sigma;
    p.normal_sign = output_graph ? -1.0 : 1.0;
    p.c = c;
    p.center = center;
    p.radius = radius;
    return p;
}

inline SurfacePatch coordinate_plane(int axis, double offset, std::array<double, 2> lo,
                                     std::array<double, 2> hi) {
    SurfacePatch p;
    p.kind = SurfacePatch::Kind::plane;
    p.axis = axis;
    p.c = offset;
    p.dom_lo = lo;
    p.dom_hi = hi;
    return p;
}

inline Vec3 patch_point(const SurfacePatch& p, double u, double v) {
    if (p.kind == SurfacePatch::Kind::paraboloid) {
        double x1 = p.center[0] + u, x2 = p.center[1] + v;
        return {p.quad * (x1 * x1 + x2 * x2) + p.c, x1, x2};
    }
    Vec3 q{0, 0, 0};
    q[p.axis] = p.c;
    int a = p.axis == 0 ? 1 : 0;
    int b = p.axis == 2 ? 1 : 2;
    q[a] = u;
    q[b] = v;
    return q;
}

inline Vec3 patch_normal(const SurfacePatch& p, const Vec3& lambda) {
    if (p.kind == SurfacePatch::Kind::plane) {
        Vec3 n{0, 0, 0};
        n[p.axis] = 1.0;
        return n;
    }
    double x1 = lambda[1], x2 = lambda[2];
    double g1 = -2.0 * p.quad * x1, g2 = -2.0 * p.quad * x2;
    double nrm = std::sqrt(1.0 + g1 * g1 + g2 * g2);
    return {p.normal_sign / nrm, p.normal_sign * g1 / nrm, p.normal_sign * g2 / nrm};
}

// signed vertical distance to the surface, scaled to metric distance
inline double patch_distance(const SurfacePatch& p, const Vec3& lambda) {
    if (p.kind == SurfacePatch::Kind::plane) return lambda[p.axis] - p.c;
    double x1 = lambda[1], x2 = lambda[2];
    double gap = lambda[0] - (p.quad * (x1 * x1 + x2 * x2) + p.c);
    double g1 = 2.0 * p.quad * x1, g2 = 2.0 * p.quad * x2;
    return gap / std::sqrt(1.0 + g1 * g1 + g2 * g2);
}

struct SurfaceMesh {
    std::vector<Vec3> points;
    std::vector<double> weights;  // surface quadrature weights
    std::vector<std::array<double, 2>> params;
};

inline SurfaceMesh mesh_patch(const SurfacePatch& p, int n) {
    SurfaceMesh m;
    if (p.kind == SurfacePatch::Kind::paraboloid) {
        double h = 2.0 * p.radius / n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double u = -p.radius + (i + 0.5) * h;
                double v = -p.radius + (j + 0.5) * h;
                if (u * u + v * v > p.radius * p.radius) continue;
                Vec3 q = patch_point(p, u, v);
                double g1 = 2.0 * p.quad * q[1], g2 = 2.0 * p.quad * q[2];
                m.points.push_back(q);
                m.weights.push_back(h * h * std::sqrt(1.0 + g1 * g1 + g2 * g2));
                m.params.push_back({u, v});
            }
        }
    } else {
        double hu = (p.dom_hi[0] - p.dom_lo[0]) / n;
        double hv = (p.dom_hi[1] - p.dom_lo[1]) / n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double u = p.dom_lo[0] + (i + 0.5) * hu;
                double v = p.dom_lo[1] + (j + 0.5) * hv;
                m.points.push_back(patch_point(p, u, v));
                m.weights.push_back(hu * hv);
                m.params.push_back({u, v});
            }
        }
    }
    return m;
}

inline double patch_diameter(const SurfacePatch& p) {
    if (p.kind == SurfacePatch::Kind::plane) {
        double du = p.dom_hi[0] - p.dom_lo[0], dv = p.dom_hi[1] - p.dom_lo[1];
        return std::sqrt(du * du + dv * dv);
    }
    // around the center, slope grows away from the origin; bound via corners
    double rc = std::sqrt(p.center[0] * p.center[0] + p.center[1] * p.center[1]);
    double slope = 2.0 * std::fabs(p.quad) * (rc + p.radius);
    return 2.0 * p.radius * std::sqrt(1.0 + slope * slope);
}

// Hoelder constant of the normal field over mesh pairs:
// sup |n(l) - n(l')| / |l - l'| + |n(l) . (l - l')| / |l - l'|^2
inline double hoelder_constant(const SurfacePatch& p, int mesh_n = 24) {
    SurfaceMesh m = mesh_patch(p, mesh_n);
    double worst = 0.0;
    for (std::size_t a = 0; a < m.points.size(); ++a) {
        Vec3 na = patch_normal(p, m.points[a]);
        for (std::size_t b = a + 1; b < m.points.size(); ++b) {
            Vec3 d{m.points[a][0] - m.points[b][0], m.points[a][1] - m.points[b][1],
                   m.points[a][2] - m.points[b][2]};
            double dist = std::sqrt(dot3(d, d));
            if (dist == 0.0) continue;
            Vec3 nb = patch_normal(p, m.points[b]);
            Vec3 dn{na[0] - nb[0], na[1] - nb[1], na[2] - nb[2]};
            double val = std::sqrt(dot3(dn, dn)) / dist + std::fabs(dot3(na, d)) / (dist * dist);
            worst = std::max(worst, val);
        }
    }
    return worst;
}

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// |det N(lambda1, lambda2, lambda3)| with the unit normals of the bilinear
// reduction: n_k = (+-1, 2 sigma_k xi) / <2 sigma_k |xi|>
inline double transversality_det(const std::array<double, 2>& xi1, const std::array<double, 2>& xi2,
                                 const std::array<double, 2>& xi3, const SigmaTriple& s) {
    auto normal = [](double sigma, const std::array<double, 2>& xi, double first) {
        double g1 = 2.0 * sigma * xi[0], g2 = 2.0 * sigma * xi[1];
        double nrm = std::sqrt(first * first + g1 * g1 + g2 * g2);
        return Vec3{first / nrm, g1 / nrm, g2 / nrm};
    };
    Vec3 n1 = normal(s.s1, xi1, 1.0);
    Vec3 n2 = normal(s.s2, xi2, 1.0);
    Vec3 n3 = normal(s.s3, xi3, -1.0);
    return std::fabs(det3(n1, n2, n3));
}

struct LoomisWhitneyResult {
    double conv_norm;   // || f*g ||_{L^2(S3 thickened)}
    double bound;       // (1/sqrt(d)) ||f||_{L^2(S1)} ||g||_{L^2(S2)}
    double ratio;
    double f_norm, g_norm;
};

// Discrete convolution of the surface measures f dS1 * g dS2 restricted to a
// thickness-h neighborhood of S3, normalized by h, binned on S3's parameter
// grid. Hypothesis violations (Hoelder bound, transversality window,
// diameter) throw.
inline LoomisWhitneyResult loomis_whitney_ratio(
    const SurfacePatch& s1, const SurfacePatch& s2, const SurfacePatch& s3,
    const std::function<double(std::array<double, 2>)>& f,
    const std::function<double(std::array<double, 2>)>& g, double d_transversality,
    int mesh_n = 40, double thickness = 0.0, bool check_hypotheses = true) {
    if (d_transversality <= 0.0 || d_transversality > 1.0)
        throw std::invalid_argument("loomis-whitney: transversality d must lie in (0, 1]");
    SurfaceMesh m1 = mesh_patch(s1, mesh_n);
    SurfaceMesh m2 = mesh_patch(s2, mesh_n);
    SurfaceMesh m3 = mesh_patch(s3, mesh_n);

    if (check_hypotheses) {
        for (const SurfacePatch* p : {&s1, &s2, &s3})
            if (hoelder_constant(*p, 12) > 8.0)
                throw std::invalid_argument("loomis-whitney: Hoelder condition violated");
        // transversality window on subsampled normal triples
        std::size_t step1 = std::max<std::size_t>(1, m1.points.size() / 12);
        std::size_t step2 = std::max<std::size_t>(1, m2.points.size() / 12);
        std::size_t step3 = std::max<std::size_t>(1, m3.points.size() / 12);
        for (std::size_t a = 0; a < m1.points.size(); a += step1)
            for (std::size_t b = 0; b < m2.points.size(); b += step2)
                for (std::size_t c = 0; c < m3.points.size(); c += step3) {
                    double det = std::fabs(det3(patch_normal(s1, m1.points[a]),
                                                patch_normal(s2, m2.points[b]),
                                                patch_normal(s3, m3.points[c])));
                    if (det < d_transversality || det > 1.0 + 1e-12)
                        throw std::invalid_argument("loomis-whitney: transversality window violated");
                }
    }

    // default thickness: a small fraction of the S3 extent
    double h = thickness;
    if (h <= 0.0) h = 0.05 * patch_diameter(s3);

    // bin grid over S3's parameters
    int bins = mesh_n;
    double blo0, bhi0, blo1, bhi1;
    if (s3.kind == SurfacePatch::Kind::paraboloid) {
        blo0 = -s3.radius; bhi0 = s3.radius; blo1 = -s3.radius; bhi1 = s3.radius;
    } else {
        blo0 = s3.dom_lo[0]; bhi0 = s3.dom_hi[0]; blo1 = s3.dom_lo[1]; bhi1 = s3.dom_hi[1];
    }
    double bw0 = (bhi0 - blo0) / bins, bw1 = (bhi1 - blo1) / bins;
    std::vector<double> density(static_cast<std::size_t>(bins) * bins, 0.0);

    auto param_of = [&](const Vec3& q, double* u, double* v) {
        if (s3.kind == SurfacePatch::Kind::paraboloid) {
            *u = q[1] - s3.center[0];
            *v = q[2] - s3.center[1];
        } else {
            int a = s3.axis == 0 ? 1 : 0;
            int b = s3.axis == 2 ? 1 : 2;
            *u = q[a];
            *v = q[b];
        }
    };

    double fn2 = 0.0, gn2 = 0.0;
    std::vector<double> fv(m1.points.size()), gv(m2.points.size());
    for (std::size_t a = 0; a < m1.points.size(); ++a) {
        fv[a] = f(m1.params[a]);
        fn2 += fv[a] * fv[a] * m1.weights[a];
    }
    for (std::size_t b = 0; b < m2.points.size(); ++b) {
        gv[b] = g(m2.params[b]);
        gn2 += gv[b] * gv[b] * m2.weights[b];
    }

    for (std::size_t a = 0; a < m1.points.size(); ++a) {
        if (fv[a] == 0.0) continue;
        for (std::size_t b = 0; b < m2.points.size(); ++b) {
            if (gv[b] == 0.0) continue;
            Vec3 q{m1.points[a][0] + m2.points[b][0], m1.points[a][1] + m2.points[b][1],
                   m1.points[a][2] + m2.points[b][2]};
            if (std::fabs(patch_distance(s3, q)) > 0.5 * h) continue;
            double u, v;
            param_of(q, &u, &v);
            int iu = static_cast<int>(std::floor((u - blo0) / bw0));
            int iv = static_cast<int>(std::floor((v - blo1) / bw1));
            if (iu < 0 || iu >= bins || iv < 0 || iv >= bins) continue;
            density[static_cast<std::size_t>(iu) * bins + iv] += fv[a] * m1.weights[a] * gv[b] * m2.weights[b];
        }
    }

    double conv2 = 0.0;
    for (int iu = 0; iu < bins; ++iu) {
        for (int iv = 0; iv < bins; ++iv) {
            double val = density[static_cast<std::size_t>(iu) * bins + iv];
            if (val == 0.0) continue;
            double u = blo0 + (iu + 0.5) * bw0, v = blo1 + (iv + 0.5) * bw1;
            double area;
            if (s3.kind == SurfacePatch::Kind::paraboloid) {
                double x1 = s3.center[0] + u, x2 = s3.center[1] + v;
                double g1 = 2.0 * s3.quad * x1, g2 = 2.0 * s3.quad * x2;
                area = bw0 * bw1 * std::sqrt(1.0 + g1 * g1 + g2 * g2);
            } else {
                area = bw0 * bw1;
            }
            double rho = val / (h * area);  // density w.r.t. surface measure
            conv2 += rho * rho * area;
        }
    }

    LoomisWhitneyResult r;
    r.f_norm = std::sqrt(fn2);
    r.g_norm = std::sqrt(gn2);
    r.conv_norm = std::sqrt(conv2);
    r.bound = r.f_norm * r.g_norm / std::sqrt(d_transversality);
    r.ratio = r.bound == 0.0 ? 0.0 : r.conv_norm / r.bound;
    return r;
}

// The rescaled patch triple of the low-modulation reduction: unit-scale
// centers with angular separation ~ (separation_sectors / A) * pi, patch
// diameter <= 2^{-10} |theta| M / A, output graph through xi1 + xi2.
struct PatchTriple {
    SurfacePatch s1, s2, s3;
    double d_transversality;
};

inline PatchTriple make_lowmod_patches(const SigmaTriple& s, int aperture, int separation_sectors) {
    double theta_abs = s.theta();
    if (theta_abs <= 0.0)
        throw std::invalid_argument("lowmod patches: sigma triple fails the sign condition");
    double m = s.harmless_m();
    double ang = M_PI * static_cast<double>(separation_sectors) / aperture;
    std::array<double, 2> c1{1.0, 0.0};
    std::array<double, 2> c2{std::cos(ang), std::sin(ang)};
    std::array<double, 2> c3{c1[0] + c2[0], c1[1] + c2[1]};
    double diameter_cap = std::pow(2.0, -10.0) * theta_abs * m / aperture;
    // euclidean patch diameter includes the slope factor of the graph
    auto radius_for = [&](double sigma, const std::array<double, 2>& ctr) {
        double rc = std::sqrt(ctr[0] * ctr[0] + ctr[1] * ctr[1]);
        double slope = 2.0 * std::fabs(sigma) * (rc + 0.1);
        return 0.45 * diameter_cap / std::sqrt(1.0 + slope * slope);
    };
    double cv1 = 0.13, cv2 = -0.07;
    double omega = s.s1 * (c1[0] * c1[0] + c1[1] * c1[1]) + s.s2 * (c2[0] * c2[0] + c2[1] * c2[1]) +
                   s.s3 * (c3[0] * c3[0] + c3[1] * c3[1]);
    // place the output graph where the measures actually convolve:
    // (-s1|c1|^2 + cv1) + (-s2|c2|^2 + cv2) = s3|c3|^2 + cv3
    double cv3 = cv1 + cv2 - omega;
    PatchTriple t{paraboloid_patch(s.s1, false, cv1, c1, radius_for(s.s1, c1)),
                  paraboloid_patch(s.s2, false, cv2, c2, radius_for(s.s2, c2)),
                  paraboloid_patch(s.s3, true, cv3, c3, radius_for(s.s3, c3)),
                  0.5 * theta_abs * m / aperture};
    return t;
}

}  // namespace nlslab
