#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "hermband/errors.hpp"

namespace hermband {

// Everything a projection-error bound can ask for. Optional fields gate the
// evaluators that need them.
struct BoundInput {
    std::int64_t n = 0;
    double T = 0.0;
    double T0 = 0.0;
    double Omega0 = 0.0;
    double eps_T = 0.0;
    double eps_Omega = 0.0;
    std::optional<double> alpha;    // basis scale (widening factor in frequency)
    std::optional<double> c;        // effective band edge for the scaled bound
    std::optional<double> hs_norm;  // Hilbert-Schmidt norm of the kernel residual
};

namespace detail {

inline void check_eps(double eps, const char* name) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw_domain(std::string(name) + " must lie in [0,1]");
}

inline double np1(std::int64_t n) { return 2.0 * static_cast<double>(n) + 1.0; }

}  // namespace detail

// sup_{|x|<=T} |f - K_n f|-type bound: 2 eps_T + eps_Omega + 34 T^3 / sqrt(2n+1),
// valid once n >= max(2 T^2, 2 Omega0^2) with T >= T0 >= 2, Omega0 >= 2.
inline double local_projection_bound(const BoundInput& in) {
    if (!(in.T0 >= 2.0)) throw_domain("local bound requires T0 >= 2");
    if (!(in.Omega0 >= 2.0)) throw_domain("local bound requires Omega0 >= 2");
    if (!(in.T >= in.T0)) throw_domain("local bound requires T >= T0");
    detail::check_eps(in.eps_T, "eps_T");
    detail::check_eps(in.eps_Omega, "eps_Omega");
    double floor_n = std::max(2.0 * in.T * in.T, 2.0 * in.Omega0 * in.Omega0);
    if (!(static_cast<double>(in.n) >= floor_n))
        throw_domain("local bound requires n >= max(2 T^2, 2 Omega0^2) = " +
                     std::to_string(floor_n));
    return 2.0 * in.eps_T + in.eps_Omega +
           34.0 * in.T * in.T * in.T / std::sqrt(detail::np1(in.n));
}

// L^2 tail outside [-T,T]:
// (2 eps_T + 1/(2 sqrt(T)) + 12 T^{5/2} log(2n+1) / sqrt(2n+1))^{1/2},
// needs T >= 2 T0 on top of the local hypotheses.
inline double global_projection_bound(const BoundInput& in) {
    if (!(in.T0 >= 2.0)) throw_domain("global bound requires T0 >= 2");
    if (!(in.Omega0 >= 2.0)) throw_domain("global bound requires Omega0 >= 2");
    if (!(in.T >= 2.0 * in.T0)) throw_domain("global bound requires T >= 2 T0");
    detail::check_eps(in.eps_T, "eps_T");
    double floor_n = std::max(2.0 * in.T * in.T, 2.0 * in.Omega0 * in.Omega0);
    if (!(static_cast<double>(in.n) >= floor_n))
        throw_domain("global bound requires n >= max(2 T^2, 2 Omega0^2) = " +
                     std::to_string(floor_n));
    double s = detail::np1(in.n);
    return std::sqrt(2.0 * in.eps_T + 0.5 / std::sqrt(in.T) +
                     12.0 * std::pow(in.T, 2.5) * std::log(s) / std::sqrt(s));
}

// Hilbert-Schmidt form: eps_Omega + ||R_n^T||_HS + 2 eps_T, with the residual
// norm measured rather than bounded.
inline double local_projection_bound_hs(const BoundInput& in) {
    if (!in.hs_norm) throw_domain("hs bound requires a measured hs_norm");
    if (!(*in.hs_norm >= 0.0)) throw_domain("hs bound requires hs_norm >= 0");
    detail::check_eps(in.eps_T, "eps_T");
    detail::check_eps(in.eps_Omega, "eps_Omega");
    return in.eps_Omega + *in.hs_norm + 2.0 * in.eps_T;
}

// Scaled-basis bound: eps_T + eps_{c/alpha} + 24 (T/alpha)^3 / sqrt(2n+1),
// for alpha > 0, T >= 2, c >= 2/alpha, n >= max(2 (T/alpha)^2, 2 c^2).
// Here alpha stretches the time axis, so eps_Omega must be measured at c/alpha.
inline double scaled_projection_bound(const BoundInput& in) {
    if (!in.alpha || !in.c) throw_domain("scaled bound requires alpha and c");
    double alpha = *in.alpha, c = *in.c;
    if (!(alpha > 0.0)) throw_domain("scaled bound requires alpha > 0");
    if (!(in.T >= 2.0)) throw_domain("scaled bound requires T >= 2");
    if (!(c >= 2.0 / alpha)) throw_domain("scaled bound requires c >= 2/alpha");
    detail::check_eps(in.eps_T, "eps_T");
    detail::check_eps(in.eps_Omega, "eps_Omega");
    double ta = in.T / alpha;
    double floor_n = std::max(2.0 * ta * ta, 2.0 * c * c);
    if (!(static_cast<double>(in.n) >= floor_n))
        throw_domain("scaled bound requires n >= max(2 (T/alpha)^2, 2 c^2) = " +
                     std::to_string(floor_n));
    return in.eps_T + in.eps_Omega + 24.0 * ta * ta * ta / std::sqrt(detail::np1(in.n));
}

// L^1 control of the kernel residual applied to bounded inputs:
// 17 T^{5/2} ||f||_1 / sqrt(n).
inline double l1_residual_bound(std::int64_t n, double T, double l1_norm) {
    if (n < 1) throw_domain("l1 residual bound requires n >= 1");
    if (!(T > 0.0)) throw_domain("l1 residual bound requires T > 0");
    if (!(l1_norm >= 0.0)) throw_domain("l1 residual bound requires l1_norm >= 0");
    return 17.0 * std::pow(T, 2.5) * l1_norm / std::sqrt(static_cast<double>(n));
}

enum class BoundKind { local, global, scaled };

namespace detail {

inline double bound_value(BoundKind kind, BoundInput in, std::int64_t n) {
    in.n = n;
    switch (kind) {
        case BoundKind::local: return local_projection_bound(in);
        case BoundKind::global: return global_projection_bound(in);
        case BoundKind::scaled: return scaled_projection_bound(in);
    }
    throw_domain("unknown bound kind");
}

inline std::int64_t bound_floor_n(BoundKind kind, const BoundInput& in) {
    double floor_n = 0.0;
    if (kind == BoundKind::scaled) {
        if (!in.alpha || !in.c) throw_domain("scaled bound requires alpha and c");
        double ta = in.T / *in.alpha;
        floor_n = std::max(2.0 * ta * ta, 2.0 * *in.c * *in.c);
    } else {
        floor_n = std::max(2.0 * in.T * in.T, 2.0 * in.Omega0 * in.Omega0);
    }
    return static_cast<std::int64_t>(std::ceil(floor_n));
}

inline double bound_limit(BoundKind kind, const BoundInput& in) {
    // n -> infinity limit of each bound; anything below it is unreachable.
    switch (kind) {
        case BoundKind::local: return 2.0 * in.eps_T + in.eps_Omega;
        case BoundKind::global: return std::sqrt(2.0 * in.eps_T + 0.5 / std::sqrt(in.T));
        case BoundKind::scaled: return in.eps_T + in.eps_Omega;
    }
    throw_domain("unknown bound kind");
}

}  // namespace detail

// Smallest n whose bound value is <= target. The n-independent part of each
// bound caps what is achievable; asking below that cap is a domain error.
inline std::int64_t min_n_for(double target, BoundKind kind, const BoundInput& base) {
    if (!(target > 0.0)) throw_domain("min_n_for requires target > 0");
    if (!(detail::bound_limit(kind, base) <= target))
        throw_domain("target " + std::to_string(target) +
                     " is below the n-independent part of the bound (" +
                     std::to_string(detail::bound_limit(kind, base)) + ")");
    std::int64_t lo = detail::bound_floor_n(kind, base);
    if (detail::bound_value(kind, base, lo) <= target) return lo;
    std::int64_t hi = std::max<std::int64_t>(lo, 1);
    constexpr std::int64_t n_cap = std::int64_t{1} << 48;
    while (detail::bound_value(kind, base, hi) > target) {
        if (hi >= n_cap)
            throw_capacity("min_n_for: no order below 2^48 meets the target");
        hi *= 2;
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (detail::bound_value(kind, base, mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace hermband
