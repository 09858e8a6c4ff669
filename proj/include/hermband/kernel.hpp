#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/hermite.hpp"
#include "hermband/numeric.hpp"
#include "hermband/parallel.hpp"
#include "hermband/quadrature.hpp"

namespace hermband {

// Half-bandwidth of the sinc approximant to k_n.
inline double sinc_bandwidth(std::int64_t n) {
    return 0.5 * (std::sqrt(2.0 * static_cast<double>(n) + 1.0) +
                  std::sqrt(2.0 * static_cast<double>(n) + 3.0));
}

namespace detail {

// Values needed per evaluation point for the Christoffel-Darboux forms.
struct KernelPoint {
    double hn = 0.0;    // h_n(x)
    double hn1 = 0.0;   // h_{n+1}(x)
    double dhn = 0.0;   // h_n'(x)
    double dhn1 = 0.0;  // h_{n+1}'(x)
    double x = 0.0;
};

inline KernelPoint kernel_point(std::int64_t n, double x) {
    HermiteSlice s = hermite_eval_slice(n + 1, x, true);
    KernelPoint p;
    p.x = x;
    p.hn = s.values[static_cast<std::size_t>(n)].to_double();
    p.hn1 = s.values[static_cast<std::size_t>(n + 1)].to_double();
    p.dhn = s.derivatives[static_cast<std::size_t>(n)].to_double();
    p.dhn1 = s.derivatives[static_cast<std::size_t>(n + 1)].to_double();
    return p;
}

inline double cd_near_diagonal_threshold(double x, double y) {
    return 1e-6 * (1.0 + std::max(std::abs(x), std::abs(y)));
}

// CD quotient for |x-y| above the near-diagonal threshold.
inline double cd_quotient(std::int64_t n, const KernelPoint& a, const KernelPoint& b) {
    double scale = std::sqrt(0.5 * (static_cast<double>(n) + 1.0));
    return scale * (a.hn1 * b.hn - b.hn1 * a.hn) / (a.x - b.x);
}

// Confluent (derivative) form, exact limit on the diagonal, evaluated at the
// midpoint for nearly equal arguments.
inline double cd_confluent(std::int64_t n, const KernelPoint& m) {
    double scale = std::sqrt(0.5 * (static_cast<double>(n) + 1.0));
    return scale * (m.dhn1 * m.hn - m.dhn * m.hn1);
}

}  // namespace detail

// Christoffel-Darboux kernel k_n(x,y) = sum_{k<=n} h_k(x) h_k(y) in quotient form.
inline double cd_kernel(std::int64_t n, double x, double y) {
    if (n < 0) throw_domain("cd_kernel requires n >= 0");
    if (!std::isfinite(x) || !std::isfinite(y)) throw_domain("cd_kernel requires finite x, y");
    if (std::abs(x - y) > detail::cd_near_diagonal_threshold(x, y)) {
        return detail::cd_quotient(n, detail::kernel_point(n, x), detail::kernel_point(n, y));
    }
    return detail::cd_confluent(n, detail::kernel_point(n, 0.5 * (x + y)));
}

// Ideal low-pass kernel (1/pi) sin(N(x-y))/(x-y).
inline double sinc_kernel(double N, double x, double y) {
    if (!(N > 0.0)) throw_domain("sinc_kernel requires N > 0");
    double u = x - y;
    if (std::abs(u) < 1e-8) {
        double nu = N * u;
        return N / pi * (1.0 - nu * nu / 6.0);
    }
    return std::sin(N * u) / (pi * u);
}

struct KernelGrid {
    std::int64_t n = 0;
    double T = 0.0;
    std::vector<double> xs, ys;
    // row-major |xs| x |ys|
    std::vector<double> k_values, sinc_values, residual;
    double N = 0.0;
    double sup_residual = 0.0;
    double sup_x = 0.0, sup_y = 0.0;  // where the sup is attained
    std::optional<double> hs_norm;

    std::size_t index(std::size_t i, std::size_t j) const { return i * ys.size() + j; }
};

namespace detail {

inline void check_kernel_window(std::int64_t n, double T, const char* who) {
    if (!(T >= 1.0)) throw_domain(std::string(who) + " requires T >= 1");
    double floor_n = std::max(6.0, std::ceil(2.0 * T * T));
    if (!(static_cast<double>(n) >= floor_n))
        throw_domain(std::string(who) + " requires n >= max(6, 2*T^2); got n = " +
                     std::to_string(n) + " for T = " + std::to_string(T));
}

}  // namespace detail

// Uniform-grid comparison of k_n against the sinc kernel on [-T,T]^2.
inline KernelGrid residual_grid(std::int64_t n, double T, int grid_points_per_axis) {
    detail::check_kernel_window(n, T, "residual_grid");
    if (grid_points_per_axis < 2) throw_domain("residual_grid requires grid_points_per_axis >= 2");

    KernelGrid grid;
    grid.n = n;
    grid.T = T;
    grid.N = sinc_bandwidth(n);
    const std::size_t g = static_cast<std::size_t>(grid_points_per_axis);
    grid.xs.resize(g);
    for (std::size_t i = 0; i < g; ++i)
        grid.xs[i] = -T + 2.0 * T * static_cast<double>(i) / static_cast<double>(g - 1);
    grid.ys = grid.xs;

    std::vector<detail::KernelPoint> pts(g);
    parallel_for(g, [&](std::size_t i) { pts[i] = detail::kernel_point(n, grid.xs[i]); });

    grid.k_values.resize(g * g);
    grid.sinc_values.resize(g * g);
    grid.residual.resize(g * g);
    parallel_for(g, [&](std::size_t i) {
        for (std::size_t j = 0; j < g; ++j) {
            double k = (i == j) ? detail::cd_confluent(n, pts[i])
                                : detail::cd_quotient(n, pts[i], pts[j]);
            double s = sinc_kernel(grid.N, grid.xs[i], grid.ys[j]);
            std::size_t idx = grid.index(i, j);
            grid.k_values[idx] = k;
            grid.sinc_values[idx] = s;
            grid.residual[idx] = k - s;
        }
    });

    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            if (std::abs(grid.residual[grid.index(i, j)]) > grid.sup_residual) {
                grid.sup_residual = std::abs(grid.residual[grid.index(i, j)]);
                grid.sup_x = grid.xs[i];
                grid.sup_y = grid.ys[j];
            }
    return grid;
}

// Hilbert-Schmidt norm of R_n = k_n - sinc on [-T,T]^2 by tensor
// Gauss-Legendre, panels at most half an oscillation wavelength wide.
inline double residual_hs_norm(std::int64_t n, double T, int quad_order = default_quad_order) {
    detail::check_kernel_window(n, T, "residual_hs_norm");
    if (quad_order < 2) throw_domain("residual_hs_norm requires quad_order >= 2");

    const double N = sinc_bandwidth(n);
    const double width = pi / N;  // half of the wavelength 2*pi/N
    const auto panels = static_cast<std::int64_t>(std::ceil(2.0 * T / width));
    const double w = 2.0 * T / static_cast<double>(panels);
    const auto& rule = legendre_rule(quad_order);

    // shared 1-D node set for both axes
    std::vector<double> nodes;
    std::vector<double> weights;
    nodes.reserve(static_cast<std::size_t>(panels) * rule.size());
    for (std::int64_t p = 0; p < panels; ++p) {
        double mid = -T + w * (static_cast<double>(p) + 0.5);
        for (const auto& node : rule) {
            nodes.push_back(mid + 0.5 * w * node.x);
            weights.push_back(0.5 * w * node.w);
        }
    }

    const std::size_t m = nodes.size();
    std::vector<detail::KernelPoint> pts(m);
    parallel_for(m, [&](std::size_t i) { pts[i] = detail::kernel_point(n, nodes[i]); });

    std::vector<double> row_sums(m);
    parallel_for(m, [&](std::size_t i) {
        compensated_sum row;
        for (std::size_t j = 0; j < m; ++j) {
            double k = (i == j) ? detail::cd_confluent(n, pts[i])
                                : detail::cd_quotient(n, pts[i], pts[j]);
            double r = k - sinc_kernel(N, nodes[i], nodes[j]);
            row.add(weights[i] * weights[j] * r * r);
        }
        row_sums[i] = row.value();
    });

    compensated_sum total;
    for (double s : row_sums) total.add(s);
    return std::sqrt(std::max(0.0, total.value()));
}

// Row mass integral_R k_n(x,y)^2 dy; equals k_n(x,x) by the reproducing property.
inline double kernel_row_mass(std::int64_t n, double x) {
    if (n < 0) throw_domain("kernel_row_mass requires n >= 0");
    return detail::cd_confluent(n, detail::kernel_point(n, x));
}

struct TailReport {
    std::int64_t n = 0;
    double T = 0.0;
    double x = 0.0;
    double tail_mass = 0.0;
    double bound = 0.0;
};

// Mass of the kernel row outside [-2T,2T], by subtracting the compact window
// integral from the exact row mass.
inline TailReport tail_mass(std::int64_t n, double T, double x) {
    if (!(T >= 2.0)) throw_domain("tail_mass requires T >= 2");
    if (!(std::abs(x) <= T)) throw_domain("tail_mass requires |x| <= T");
    if (!(static_cast<double>(n) >= 2.0 * T * T)) throw_domain("tail_mass requires n >= 2*T^2");

    double row = kernel_row_mass(n, x);
    detail::KernelPoint px = detail::kernel_point(n, x);
    auto k_at = [&](double y) {
        if (std::abs(x - y) > detail::cd_near_diagonal_threshold(x, y))
            return detail::cd_quotient(n, px, detail::kernel_point(n, y));
        return detail::cd_confluent(n, detail::kernel_point(n, 0.5 * (x + y)));
    };
    double N = sinc_bandwidth(n);
    double window = quad_integrate([&](double y) { return sqr(k_at(y)); }, -2.0 * T, 2.0 * T,
                                   2.0 * N);
    double two_np1 = 2.0 * static_cast<double>(n) + 1.0;

    TailReport report;
    report.n = n;
    report.T = T;
    report.x = x;
    report.tail_mass = std::max(0.0, row - window);
    report.bound = 2.0 / (pi * pi * T) + 12.0 * T * T * std::log(two_np1) / std::sqrt(two_np1);
    return report;
}

}  // namespace hermband
