#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/fft.hpp"
#include "hermband/hermite.hpp"
#include "hermband/numeric.hpp"
#include "hermband/parallel.hpp"
#include "hermband/quadrature.hpp"
#include "hermband/signal.hpp"

namespace hermband {

// Coefficients of f in the scale-alpha Hermite basis
//   b_k(x) = sqrt(alpha) h_k(alpha x),
// the frequency-widened family: alpha > 1 trades time-side for
// frequency-side concentration.
struct CoefficientVector {
    double alpha = 1.0;
    std::int64_t n = 0;
    std::vector<double> coeffs;
    QuadMeta quad_meta;
};

namespace detail {

inline double basis_oscillation(std::int64_t n, double alpha, const Signal& f) {
    double osc = alpha * std::sqrt(2.0 * static_cast<double>(n) + 1.0);
    if (f.kind == Signal::Kind::hermite)
        osc += std::sqrt(2.0 * static_cast<double>(f.k) + 1.0);
    return osc;
}

inline void check_expand_args(const Signal& f, std::int64_t n, double alpha) {
    if (n < 0) throw_domain("expand requires n >= 0");
    if (!(alpha > 0.0)) throw_domain("expand requires alpha > 0");
    if (f.kind == Signal::Kind::sampled) {
        double peak = 0.0;
        for (double v : f.values) peak = std::max(peak, std::abs(v));
        if (peak > 0.0 && (std::abs(f.values.front()) > 1e-12 * peak ||
                           std::abs(f.values.back()) > 1e-12 * peak))
            throw_domain("sampled signal support exceeds its grid (no decay at the edges)");
    }
}

struct PanelLayout {
    std::vector<double> lo;  // panel lower edges
    std::vector<double> width;
    double panel_width = 0.0;  // nominal width for quad_meta
};

inline PanelLayout panel_layout(double a, double b, double osc,
                                const std::vector<double>& breakpoints) {
    PanelLayout layout;
    layout.panel_width = panel_width_for(osc);
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        double lo = cuts[s], hi = cuts[s + 1];
        if (hi - lo < 1e-300) continue;
        auto panels = static_cast<std::int64_t>(std::ceil((hi - lo) / layout.panel_width));
        double w = (hi - lo) / static_cast<double>(panels);
        for (std::int64_t p = 0; p < panels; ++p) {
            layout.lo.push_back(lo + w * static_cast<double>(p));
            layout.width.push_back(w);
        }
    }
    return layout;
}

}  // namespace detail

// coeffs[k] = <f, b_k> over the support of f (or its effective truncation for
// Gaussian-class decay). Panels are reduced in index order, so the result is
// independent of the thread count.
inline CoefficientVector expand(const Signal& f, std::int64_t n, double alpha) {
    detail::check_expand_args(f, n, alpha);
    auto [lo, hi] = f.support();
    double osc = detail::basis_oscillation(n, alpha, f);
    auto layout = detail::panel_layout(lo, hi, osc, f.breakpoints());
    const auto& rule = legendre_rule(default_quad_order);
    const double root_alpha = std::sqrt(alpha);
    const std::size_t count = static_cast<std::size_t>(n) + 1;

    std::vector<std::vector<double>> partial(layout.lo.size());
    parallel_for(layout.lo.size(), [&](std::size_t p) {
        std::vector<double> acc(count, 0.0);
        double w = layout.width[p];
        double mid = layout.lo[p] + 0.5 * w;
        for (const auto& node : rule) {
            double x = mid + 0.5 * w * node.x;
            double fx = f(x);
            if (!std::isfinite(fx))
                throw_integration("integrand non-finite at x = " + std::to_string(x));
            if (fx == 0.0) continue;
            double weight = 0.5 * w * node.w * fx * root_alpha;
            HermiteSlice slice = hermite_eval_slice(n, alpha * x, false);
            for (std::size_t k = 0; k < count; ++k)
                acc[k] += weight * slice.values[k].to_double();
        }
        partial[p] = std::move(acc);
    });

    CoefficientVector c;
    c.alpha = alpha;
    c.n = n;
    c.coeffs.assign(count, 0.0);
    std::vector<compensated_sum> sums(count);
    for (const auto& acc : partial)
        for (std::size_t k = 0; k < count; ++k) sums[k].add(acc[k]);
    for (std::size_t k = 0; k < count; ++k) c.coeffs[k] = sums[k].value();
    c.quad_meta = {layout.panel_width, default_quad_order, lo, hi};
    return c;
}

// K_n^alpha f at the given points: sum_k coeffs[k] b_k(x).
inline std::vector<double> reconstruct(const CoefficientVector& c, const std::vector<double>& xs) {
    std::vector<double> out(xs.size(), 0.0);
    const double root_alpha = std::sqrt(c.alpha);
    parallel_for(xs.size(), [&](std::size_t i) {
        HermiteSlice slice = hermite_eval_slice(c.n, c.alpha * xs[i], false);
        compensated_sum sum;
        for (std::size_t k = 0; k < c.coeffs.size(); ++k)
            sum.add(c.coeffs[k] * slice.values[k].to_double());
        out[i] = root_alpha * sum.value();
    });
    return out;
}

namespace detail {

inline double reconstruct_point(const CoefficientVector& c, double x) {
    HermiteSlice slice = hermite_eval_slice(c.n, c.alpha * x, false);
    compensated_sum sum;
    for (std::size_t k = 0; k < c.coeffs.size(); ++k)
        sum.add(c.coeffs[k] * slice.values[k].to_double());
    return std::sqrt(c.alpha) * sum.value();
}

inline double projection_error_on(const Signal& f, const CoefficientVector& c, double lo,
                                  double hi) {
    double osc = basis_oscillation(c.n, c.alpha, f);
    double err2 = quad_integrate_split(
        [&](double x) { return sqr(f(x) - reconstruct_point(c, x)); }, lo, hi, osc,
        f.breakpoints());
    return std::sqrt(std::max(0.0, err2));
}

inline double projection_error_outside_on(const Signal& f, const CoefficientVector& c,
                                          double T) {
    auto [slo, shi] = f.support();
    double basis_reach = (std::sqrt(2.0 * static_cast<double>(c.n) + 1.0) + 10.0) / c.alpha;
    double L = std::max({std::abs(slo), std::abs(shi), basis_reach, T + 1.0});
    double osc = basis_oscillation(c.n, c.alpha, f);
    auto err2 = [&](double lo, double hi) {
        if (!(lo < hi)) return 0.0;
        return quad_integrate_split(
            [&](double x) { return sqr(f(x) - reconstruct_point(c, x)); }, lo, hi, osc,
            f.breakpoints());
    };
    return std::sqrt(std::max(0.0, err2(T, L) + err2(-L, -T)));
}

}  // namespace detail

// || f - K_n^alpha f ||_{L^2[-T,T]}
inline double projection_error(const Signal& f, std::int64_t n, double alpha, double T) {
    if (!(T > 0.0)) throw_domain("projection_error requires T > 0");
    CoefficientVector c = expand(f, n, alpha);
    return detail::projection_error_on(f, c, -T, T);
}

// || f - K_n^alpha f ||_{L^2(R \ [-T,T])}, truncated where both the signal
// and the basis have decayed.
inline double projection_error_outside(const Signal& f, std::int64_t n, double alpha, double T) {
    if (!(T > 0.0)) throw_domain("projection_error_outside requires T > 0");
    CoefficientVector c = expand(f, n, alpha);
    return detail::projection_error_outside_on(f, c, T);
}

// eps_T: square root of the L^2 energy fraction outside [-T,T]. A signal
// with small eps_T is almost time limited to [-T,T].
inline double time_concentration(const Signal& f, double T) {
    if (!(T > 0.0)) throw_domain("time_concentration requires T > 0");
    double norm_sq = f.l2_norm_sq();
    if (!(norm_sq > 0.0)) throw_domain("time_concentration requires a nonzero signal");
    double inside = 0.0;
    switch (f.kind) {
        case Signal::Kind::indicator:
            inside = std::max(0.0, std::min(f.b, T) - std::max(f.a, -T));
            break;
        case Signal::Kind::gaussian:
            return std::sqrt(std::erfc(T / f.sigma));
        default: {
            auto [slo, shi] = f.support();
            if (-T <= slo && shi <= T) return 0.0;  // the window holds all the energy
            double lo = std::max(slo, -T), hi = std::min(shi, T);
            if (lo < hi) {
                double osc = (f.kind == Signal::Kind::hermite)
                                 ? 2.0 * std::sqrt(2.0 * static_cast<double>(f.k) + 1.0)
                                 : 0.0;
                inside = quad_integrate_split([&](double x) { return sqr(f(x)); }, lo, hi, osc,
                                              f.breakpoints());
            }
            break;
        }
    }
    return std::sqrt(std::clamp(1.0 - inside / norm_sq, 0.0, 1.0));
}

namespace detail {

// Discrete path for sampled signals: uniform resampling, zero padding,
// radix-2 FFT, Parseval ratio.
inline double sampled_band_concentration(const Signal& f, double Omega) {
    auto [lo, hi] = f.support();
    double span = hi - lo;
    double dx = std::min(pi / (4.0 * Omega), span / 4096.0);
    double span_needed = std::max(span * 1.25, 1024.0 * pi / Omega);
    std::size_t M = std::size_t{1} << 14;
    while (static_cast<double>(M) * dx < span_needed && M < (std::size_t{1} << 22)) M <<= 1;

    std::vector<std::complex<double>> buf(M, {0.0, 0.0});
    auto fill = std::min(M, static_cast<std::size_t>(span / dx) + 1);
    for (std::size_t m = 0; m < fill; ++m)
        buf[m] = f(lo + static_cast<double>(m) * dx);
    fft_radix2(buf);

    double delta_omega = 2.0 * pi / (static_cast<double>(M) * dx);
    compensated_sum total, inside;
    for (std::size_t j = 0; j < M; ++j) {
        double freq_index = (j <= M / 2) ? static_cast<double>(j)
                                         : static_cast<double>(j) - static_cast<double>(M);
        double mag = std::norm(buf[j]);
        total.add(mag);
        if (std::abs(freq_index) * delta_omega <= Omega) inside.add(mag);
    }
    if (!(total.value() > 0.0)) throw_domain("band_concentration requires a nonzero signal");
    return std::sqrt(std::clamp(1.0 - inside.value() / total.value(), 0.0, 1.0));
}

}  // namespace detail

// eps_Omega: fraction of L^2 energy outside [-Omega,Omega] in frequency,
// under the unitary transform convention.
inline double band_concentration(const Signal& f, double Omega) {
    if (!(Omega > 0.0)) throw_domain("band_concentration requires Omega > 0");
    if (!(f.l2_norm_sq() > 0.0)) throw_domain("band_concentration requires a nonzero signal");
    switch (f.kind) {
        case Signal::Kind::indicator: {
            double L = f.b - f.a;
            // |fhat|^2 = (L^2/2pi) sinc^2(L w / 2)
            double inside = 2.0 * quad_integrate(
                                      [&](double w) {
                                          double s = sinc(0.5 * L * w);
                                          return L * L / (2.0 * pi) * s * s;
                                      },
                                      0.0, Omega, L);
            return std::sqrt(std::clamp(1.0 - inside / L, 0.0, 1.0));
        }
        case Signal::Kind::hat: {
            double w0 = f.halfwidth;
            // |fhat|^2 = (w^2/2pi) sinc^4(w w0 ... ) for the centered hat
            double inside = 2.0 * quad_integrate(
                                      [&](double w) {
                                          double s = sinc(0.5 * w0 * w);
                                          return w0 * w0 / (2.0 * pi) * s * s * s * s;
                                      },
                                      0.0, Omega, w0);
            return std::sqrt(std::clamp(1.0 - inside / (2.0 * w0 / 3.0), 0.0, 1.0));
        }
        case Signal::Kind::gaussian:
            return std::sqrt(std::erfc(f.sigma * Omega));
        case Signal::Kind::hermite:
            // Fourier eigenfunction: |hhat_k| = |h_k|
            return time_concentration(f, Omega);
        case Signal::Kind::sampled:
            return detail::sampled_band_concentration(f, Omega);
    }
    throw_domain("unknown signal kind");
}

// Almost-band-limited level implied by Sobolev regularity:
// ||f||_{H^s} / ((1+Omega)^s ||f||_{L^2}).
inline double sobolev_band_bound(double hs_norm, double l2_norm, double s, double Omega) {
    if (!(hs_norm > 0.0) || !(l2_norm > 0.0) || !(s > 0.0))
        throw_domain("sobolev_band_bound requires positive hs_norm, l2_norm, s");
    if (!(Omega >= 0.0)) throw_domain("sobolev_band_bound requires Omega >= 0");
    return hs_norm / (std::pow(1.0 + Omega, s) * l2_norm);
}

struct ConcentrationReport {
    double T = 0.0;
    double eps_T = 0.0;
    double Omega = 0.0;
    double eps_Omega = 0.0;
    double l2_norm = 0.0;
};

inline ConcentrationReport concentration_report(const Signal& f, double T, double Omega) {
    ConcentrationReport r;
    r.T = T;
    r.Omega = Omega;
    r.eps_T = time_concentration(f, T);
    r.eps_Omega = band_concentration(f, Omega);
    r.l2_norm = f.l2_norm();
    return r;
}

}  // namespace hermband
