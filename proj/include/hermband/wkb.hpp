#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/hermite.hpp"
#include "hermband/numeric.hpp"

namespace hermband {

// phi_n(x) = integral_0^x sqrt(2n+1-t^2) dt and its defect e_n = lambda x - phi_n.
struct PhaseData {
    std::int64_t n = 0;
    double x = 0.0;
    double lambda = 0.0;  // sqrt(2n+1)
    double p = 0.0;       // sqrt(2n+1 - x^2)
    double phi = 0.0;
    double e = 0.0;
};

namespace detail {

inline double turning_sq(std::int64_t n, double x) {
    // 2n+1 - x^2 with the product subtracted exactly
    return std::fma(-x, x, 2.0 * static_cast<double>(n) + 1.0);
}

}  // namespace detail

// Closed form: (2n+1)/2 * arcsin(x/lambda) + (x/2) sqrt(2n+1-x^2).
inline double phase_phi(std::int64_t n, double x) {
    if (n < 0) throw_domain("phase_phi requires n >= 0");
    double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
    double lambda = std::sqrt(two_np1);
    if (!(std::abs(x) <= lambda))
        throw_domain("phase undefined past the turning point: require |x| <= sqrt(2n+1)");
    if (std::abs(x) == lambda) return std::copysign(pi * two_np1 / 4.0, x);
    double p2 = std::max(0.0, detail::turning_sq(n, x));
    return 0.5 * two_np1 * std::asin(x / lambda) + 0.5 * x * std::sqrt(p2);
}

// e_n(x) = lambda x - phi_n(x); series branch below |x|/lambda = 1e-3 where
// the direct subtraction cancels.
inline double phase_defect(std::int64_t n, double x) {
    if (n < 0) throw_domain("phase_defect requires n >= 0");
    double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
    double lambda = std::sqrt(two_np1);
    if (!(std::abs(x) <= lambda))
        throw_domain("phase undefined past the turning point: require |x| <= sqrt(2n+1)");
    double u = x / lambda;
    if (std::abs(u) < 1e-3) {
        double x3 = x * x * x;
        return x3 / (6.0 * lambda) + x3 * x * x / (40.0 * lambda * lambda * lambda);
    }
    return lambda * x - phase_phi(n, x);
}

inline PhaseData phase_data(std::int64_t n, double x) {
    PhaseData d;
    d.n = n;
    d.x = x;
    d.lambda = std::sqrt(2.0 * static_cast<double>(n) + 1.0);
    d.phi = phase_phi(n, x);
    d.e = phase_defect(n, x);
    d.p = std::sqrt(std::max(0.0, detail::turning_sq(n, x)));
    return d;
}

// Main term of the pointwise asymptotic
//   h_n(x) ~ h_n(0) (l^2/(l^2-x^2))^{1/4} cos phi + h_n'(0) sin phi / (l^2 (l^2-x^2))^{1/4}.
// Exactly one of the two terms is nonzero by parity.
inline double wkb_main_term(std::int64_t n, double x) {
    if (n < 0) throw_domain("wkb_main_term requires n >= 0");
    double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
    double lambda = std::sqrt(two_np1);
    if (!(std::abs(x) < lambda)) throw_domain("wkb_main_term requires |x| < sqrt(2n+1)");
    double p2 = detail::turning_sq(n, x);
    double phi = phase_phi(n, x);
    double z = hermite_zero_value(n);
    if (n % 2 == 0) return z * std::sqrt(std::sqrt(two_np1 / p2)) * std::cos(phi);
    return z * std::sin(phi) / std::sqrt(std::sqrt(two_np1 * p2));
}

// Flat-amplitude simplification (-1)^p / (sqrt(pi) p^{1/4}) cos/sin phi_n,
// valid for |x| <= T, n >= 2T^2, T >= 1.
inline double wkb_simplified_term(std::int64_t n, double x, double T) {
    if (n < 0) throw_domain("wkb_simplified_term requires n >= 0");
    if (!(T >= 1.0)) throw_domain("wkb_simplified_term requires T >= 1");
    if (!(std::abs(x) <= T)) throw_domain("wkb_simplified_term requires |x| <= T");
    if (!(static_cast<double>(n) >= 2.0 * T * T))
        throw_domain("wkb_simplified_term requires n >= 2*T^2");
    std::int64_t p = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    double amp = sign / (std::sqrt(pi) * std::sqrt(std::sqrt(static_cast<double>(p))));
    double phi = phase_phi(n, x);
    return (n % 2 == 0) ? amp * std::cos(phi) : amp * std::sin(phi);
}

enum class WkbRegime { generic, half };

struct WkbEnvelope {
    std::int64_t n = 0;
    double x = 0.0;
    double main_term = 0.0;
    double E_measured = 0.0;
    double E_bound = 0.0;
    WkbRegime regime = WkbRegime::generic;
    // attached when a concentration half-width T is supplied
    std::optional<double> T;
    std::optional<double> simplified_term;
    std::optional<double> tilde_measured;
    std::optional<double> tilde_bound;
};

// Measured asymptotic errors against the recurrence as ground truth, with the
// guaranteed envelopes: |E_n| <= 5/4 (sqrt(2n+1)/(2n+1-x^2))^{5/2} generally,
// 2/(2n+1)^{3/2} for |x| <= sqrt(2n+1)/2, and |Etilde_n| <= 2T^2/(2n+1)^{5/4}
// (T >= 2) or 3T^2/(2n+1)^{5/4} (1 <= T < 2).
inline WkbEnvelope wkb_envelope(std::int64_t n, double x, std::optional<double> T = {}) {
    WkbEnvelope env;
    env.n = n;
    env.x = x;
    double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
    double lambda = std::sqrt(two_np1);
    env.main_term = wkb_main_term(n, x);  // validates |x| < lambda
    double h = hermite_eval(n, x);
    env.E_measured = h - env.main_term;
    if (std::abs(x) <= 0.5 * lambda) {
        env.regime = WkbRegime::half;
        env.E_bound = 2.0 / (two_np1 * lambda);
    } else {
        env.regime = WkbRegime::generic;
        double p2 = detail::turning_sq(n, x);
        double r = lambda / p2;
        env.E_bound = 1.25 * r * r * std::sqrt(r);
    }
    if (T) {
        double t = *T;
        env.T = t;
        env.simplified_term = wkb_simplified_term(n, x, t);  // validates T, |x|, n
        env.tilde_measured = h - *env.simplified_term;
        double c = (t >= 2.0) ? 2.0 : 3.0;
        env.tilde_bound = c * t * t / std::pow(two_np1, 1.25);
    }
    return env;
}

// Worst observed lhs/rhs together with where it happened; y is NaN for
// single-point inequalities.
struct RatioExtreme {
    double ratio = 0.0;
    double x = 0.0;
    double y = std::numeric_limits<double>::quiet_NaN();
};

struct LemmaReport {
    std::int64_t n = 0;
    double T = 0.0;
    int grid_points = 0;
    std::map<std::string, RatioExtreme> worst_ratios;
};

// Uniform-grid verification of the phase lemma inequalities plus the defect
// bounds and the simplified-term envelope/Lipschitz bounds.
inline LemmaReport verify_phase_lemma(std::int64_t n, double T, int grid_points) {
    if (n < 0) throw_domain("verify_phase_lemma requires n >= 0");
    double lambda = std::sqrt(2.0 * static_cast<double>(n) + 1.0);
    double lambda_next = std::sqrt(2.0 * static_cast<double>(n) + 3.0);
    if (!(T >= 2.0)) throw_domain("verify_phase_lemma requires T >= 2");
    if (!(T <= 0.5 * lambda)) throw_domain("verify_phase_lemma requires T <= sqrt(2n+1)/2");
    if (grid_points < 2) throw_domain("verify_phase_lemma requires grid_points >= 2");

    const double two_np1 = 2.0 * static_cast<double>(n) + 1.0;
    const double N = lambda + lambda_next;
    const std::size_t g = static_cast<std::size_t>(grid_points);

    std::vector<double> xs(g), phi_n(g), phi_n1(g), e_n(g), tilde(g);
    for (std::size_t i = 0; i < g; ++i) {
        double x = -T + 2.0 * T * static_cast<double>(i) / static_cast<double>(g - 1);
        xs[i] = x;
        phi_n[i] = phase_phi(n, x);
        phi_n1[i] = phase_phi(n + 1, x);
        e_n[i] = phase_defect(n, x);
        tilde[i] = hermite_eval(n, x) - wkb_simplified_term(n, x, T);
    }

    RatioExtreme r28, r29, r210, r211, r212, r25e, r25lip, r215sup, r215lip;
    auto bump = [](RatioExtreme& r, double ratio, double x, double y) {
        if (ratio > r.ratio) {
            r.ratio = ratio;
            r.x = x;
            r.y = y;
        }
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double rhs28 = 3.0 * T / lambda;
    const double rhs210 = 5.0 * T / lambda;
    const double rhs25e = T * T * T / (3.0 * lambda);
    const double rhs215sup = 2.0 * T * T / std::pow(two_np1, 1.25);
    for (std::size_t i = 0; i < g; ++i) {
        double dphi_x = phi_n1[i] - phi_n[i];
        bump(r28, std::abs(dphi_x) / rhs28, xs[i], nan);
        bump(r25e, std::abs(e_n[i]) / rhs25e, xs[i], nan);
        bump(r215sup, std::abs(tilde[i]) / rhs215sup, xs[i], nan);
        for (std::size_t j = 0; j < g; ++j) {
            if (i == j) continue;
            double dxy = std::abs(xs[i] - xs[j]);
            double dphi_y = phi_n1[j] - phi_n[j];
            bump(r29, std::abs(dphi_x - dphi_y) / (3.0 / lambda * dxy), xs[i], xs[j]);
            bump(r210, std::abs(dphi_x + dphi_y) / rhs210, xs[i], xs[j]);
            double eps = (phi_n1[i] + phi_n[i] - phi_n1[j] - phi_n[j]) - N * (xs[i] - xs[j]);
            bump(r211, std::abs(eps) / (T * T / lambda * dxy), xs[i], xs[j]);
            bump(r212, std::abs(phi_n[i] - phi_n[j]) / (1.25 * lambda * dxy), xs[i], xs[j]);
            bump(r25lip, std::abs(e_n[i] - e_n[j]) / (T * T / lambda * dxy), xs[i], xs[j]);
            bump(r215lip,
                 std::abs(tilde[i] - tilde[j]) / (3.0 * T * T / std::pow(two_np1, 0.75) * dxy),
                 xs[i], xs[j]);
        }
    }

    LemmaReport report;
    report.n = n;
    report.T = T;
    report.grid_points = grid_points;
    report.worst_ratios = {
        {"phase-step-sup", r28},    {"phase-step-lip", r29},
        {"phase-step-sum", r210},   {"phase-sum-linear", r211},
        {"phase-lip", r212},        {"defect-sup", r25e},
        {"defect-lip", r25lip},     {"flat-envelope-sup", r215sup},
        {"flat-envelope-lip", r215lip},
    };
    return report;
}

}  // namespace hermband
