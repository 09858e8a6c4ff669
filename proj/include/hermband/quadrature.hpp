#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/numeric.hpp"

namespace hermband {

struct QuadMeta {
    double panel_width = 0.0;
    int nodes_per_panel = 0;
    double a = 0.0;
    double b = 0.0;
};

struct QuadNode {
    double x;  // abscissa on [-1,1]
    double w;  // weight
};

inline constexpr double default_panel_width = 0.5;
inline constexpr int default_quad_order = 10;

namespace detail {

// Legendre P_q and P_q' at x by the standard recurrence.
inline std::pair<double, double> legendre_pair(int q, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

inline std::vector<QuadNode> compute_legendre_rule(int q) {
    std::vector<QuadNode> rule(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        // Chebyshev-based initial guess, then Newton
        double x = std::cos(pi * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre_pair(q, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre_pair(q, x);
        (void)p;
        rule[static_cast<std::size_t>(q - 1 - i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return rule;
}

}  // namespace detail

// Gauss-Legendre abscissas/weights on [-1,1], cached per order.
inline const std::vector<QuadNode>& legendre_rule(int q) {
    if (q < 2) throw_domain("quadrature order must be >= 2");
    static std::mutex mutex;
    static std::map<int, std::vector<QuadNode>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, detail::compute_legendre_rule(q)).first;
    return it->second;
}

// Panel width for an integrand oscillating at angular frequency `osc`:
// at least 20 Gauss nodes per wavelength with the default 10-node panels.
inline double panel_width_for(double osc, double cap = default_panel_width) {
    if (osc > 0.0) return std::min(cap, pi / osc);
    return cap;
}

namespace detail {

template <class F>
double integrate_panels(F&& f, double a, double b, double width, int order) {
    const auto& rule = legendre_rule(order);
    auto panels = static_cast<std::int64_t>(std::ceil((b - a) / width));
    if (panels < 1) panels = 1;
    double w = (b - a) / static_cast<double>(panels);
    compensated_sum sum;
    for (std::int64_t p = 0; p < panels; ++p) {
        double lo = a + w * static_cast<double>(p);
        double mid = lo + 0.5 * w;
        for (const auto& node : rule) {
            double x = mid + 0.5 * w * node.x;
            double fx = f(x);
            if (!std::isfinite(fx))
                throw_integration("integrand non-finite at x = " + std::to_string(x));
            sum.add(0.5 * w * node.w * fx);
        }
    }
    return sum.value();
}

}  // namespace detail

// Composite Gauss-Legendre over (a,b) with oscillation-aware panels.
template <class F>
double quad_integrate(F&& f, double a, double b, double oscillation_freq,
                      int order = default_quad_order) {
    if (!(a < b)) throw_domain("quad_integrate requires a < b");
    if (!(oscillation_freq >= 0.0)) throw_domain("oscillation_freq must be >= 0");
    double width = panel_width_for(oscillation_freq);
    return detail::integrate_panels(f, a, b, width, order);
}

// Same, but split at interior breakpoints (signal kinks/jumps) first.
template <class F>
double quad_integrate_split(F&& f, double a, double b, double oscillation_freq,
                            const std::vector<double>& breakpoints,
                            int order = default_quad_order) {
    if (!(a < b)) throw_domain("quad_integrate requires a < b");
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double width = panel_width_for(oscillation_freq);
    compensated_sum sum;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-300) continue;
        sum.add(detail::integrate_panels(f, cuts[i], cuts[i + 1], width, order));
    }
    return sum.value();
}

}  // namespace hermband
