#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nlslab/estimates.hpp"

namespace nlslab {

enum class SweptParam { n_all, n1, n2, n3, l1, l2, l3, aperture };

inline const char* param_name(SweptParam p) {
    switch (p) {
        case SweptParam::n_all: return "N";
        case SweptParam::n1: return "N1";
        case SweptParam::n2: return "N2";
        case SweptParam::n3: return "N3";
        case SweptParam::l1: return "L1";
        case SweptParam::l2: return "L2";
        case SweptParam::l3: return "L3";
        case SweptParam::aperture: return "A";
    }
    return "?";
}

inline void apply_param(EstimateTuple& t, SweptParam p, std::uint64_t v) {
    switch (p) {
        case SweptParam::n_all: t.n1 = t.n2 = t.n3 = v; break;
        case SweptParam::n1: t.n1 = v; break;
        case SweptParam::n2: t.n2 = v; break;
        case SweptParam::n3: t.n3 = v; break;
        case SweptParam::l1: t.l1 = v; break;
        case SweptParam::l2: t.l2 = v; break;
        case SweptParam::l3: t.l3 = v; break;
        case SweptParam::aperture: t.aperture = v; break;
    }
}

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
    int points = 0;
};

// least squares on (log2 x, log2 y); zero or negative y entries are skipped
inline SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    SlopeFit f;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] > 0.0 && xs[i] > 0.0) {
            lx.push_back(std::log2(xs[i]));
            ly.push_back(std::log2(ys[i]));
        }
    }
    f.points = static_cast<int>(lx.size());
    if (f.points < 2) return f;
    double mx = 0, my = 0;
    for (int i = 0; i < f.points; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= f.points;
    my /= f.points;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < f.points; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (int i = 0; i < f.points; ++i) {
        double r = ly[i] - (f.intercept + f.slope * lx[i]);
        rss += r * r;
    }
    if (f.points > 2) f.std_error = std::sqrt(rss / (f.points - 2) / sxx);
    return f;
}

struct SweepConfig {
    std::string label;
    EstimateKind kind = EstimateKind::bilinear_strichartz;
    EstimateTuple base;
    SweptParam param = SweptParam::n_all;
    std::vector<std::uint64_t> values;
    bool two_sided = true;       // slope check direction
    double slope_tolerance = 0.15;
    std::uint64_t fit_min_value = 0;  // rows below are tabulated but not fitted
};

struct SweepReport {
    SweepConfig config;
    std::vector<RatioRow> rows;
    SlopeFit lhs_fit;
    double predicted_slope = 0.0;  // of the LHS, from the RHS monomial
    bool slope_pass = false;
    bool bounded_pass = false;
    std::uint64_t seed = 0;
};

// predicted log-log slope of the RHS along the fitted part of the sweep
// (exact for monomials)
inline double predicted_rhs_slope(const SweepConfig& cfg) {
    std::vector<std::uint64_t> fitted;
    for (std::uint64_t v : cfg.values)
        if (v >= cfg.fit_min_value) fitted.push_back(v);
    if (fitted.size() < 2) return 0.0;
    EstimateTuple lo = cfg.base, hi = cfg.base;
    apply_param(lo, cfg.param, fitted.front());
    apply_param(hi, cfg.param, fitted.back());
    double r0 = rhs_value(cfg.kind, lo), r1 = rhs_value(cfg.kind, hi);
    double x0 = static_cast<double>(fitted.front()), x1 = static_cast<double>(fitted.back());
    return (std::log2(r1) - std::log2(r0)) / (std::log2(x1) - std::log2(x0));
}

// Run the estimate over the dyadic sweep, fit the LHS slope, and apply the
// two verdicts: boundedness (the global max ratio is attained, within a
// factor of four, already in the top two octaves) and the slope check
// against the RHS prediction.
inline SweepReport sweep_and_fit(const SweepConfig& cfg, std::uint64_t seed,
                                 int threads = default_threads()) {
    if (cfg.values.empty()) throw std::invalid_argument("sweep: empty parameter range");
    SweepReport rep;
    rep.config = cfg;
    rep.seed = seed;
    rep.predicted_slope = predicted_rhs_slope(cfg);
    std::vector<double> xs, lhss;
    for (std::size_t i = 0; i < cfg.values.size(); ++i) {
        EstimateTuple t = cfg.base;
        apply_param(t, cfg.param, cfg.values[i]);
        RatioRow row = estimate_ratio(cfg.kind, t, split_seed(seed, i), threads);
        rep.rows.push_back(row);
        if (cfg.values[i] >= cfg.fit_min_value) {
            xs.push_back(static_cast<double>(cfg.values[i]));
            lhss.push_back(row.lhs);
        }
    }
    rep.lhs_fit = fit_loglog(xs, lhss);

    double global_max = 0.0, top_max = 0.0;
    std::uint64_t vmax = *std::max_element(cfg.values.begin(), cfg.values.end());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        global_max = std::max(global_max, rep.rows[i].ratio);
        if (cfg.values[i] * 4 >= vmax) top_max = std::max(top_max, rep.rows[i].ratio);
    }
    rep.bounded_pass = cfg.values.size() < 2 || top_max * 4.0 >= global_max;
    if (cfg.values.size() < 2) {
        rep.slope_pass = true;
    } else if (cfg.two_sided) {
        rep.slope_pass = std::fabs(rep.lhs_fit.slope - rep.predicted_slope) <= cfg.slope_tolerance;
    } else {
        rep.slope_pass = rep.lhs_fit.slope <= rep.predicted_slope + cfg.slope_tolerance;
    }
    return rep;
}

}  // namespace nlslab
