#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/numeric.hpp"
#include "hermband/scaled_value.hpp"

namespace hermband {

inline constexpr std::int64_t default_max_order = 1'000'000;

struct HermiteSlice {
    std::int64_t n_max = 0;
    double x = 0.0;
    std::vector<HermiteValue> values;       // values[k] ~ h_k(x)
    std::vector<HermiteValue> derivatives;  // empty unless requested
};

namespace detail {

inline void check_order(std::int64_t n, std::int64_t max_order) {
    if (n < 0) throw_domain("hermite order must be >= 0");
    if (n > max_order)
        throw_capacity("hermite order " + std::to_string(n) + " exceeds maximum " +
                       std::to_string(max_order));
}

// One pass of the orthonormal recurrence
//   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x)
// in block-scaled doubles. store(k, h_k, h_{k-1}, block) sees both members of
// the current pair under the same block exponent, so derivative ladders can
// be formed without realigning scales. Scalar and batch evaluation share this
// exact instruction sequence and therefore agree bitwise.
template <class Store>
void hermite_recurrence(std::int64_t n_max, double x, Store&& store) {
    HermiteValue h0 = hermite_seed(x);
    std::int64_t block = h0.exponent;
    double a = h0.mantissa;  // h_{k-1} / 2^block
    store(std::int64_t{0}, a, 0.0, block);
    if (n_max == 0) return;
    double b = sqrt2 * x * a;  // h_k / 2^block
    maybe_rescale(a, b, block);
    store(std::int64_t{1}, b, a, block);
    for (std::int64_t k = 1; k < n_max; ++k) {
        double dk = static_cast<double>(k);
        double c = x * std::sqrt(2.0 / (dk + 1.0)) * b - std::sqrt(dk / (dk + 1.0)) * a;
        a = b;
        b = c;
        maybe_rescale(a, b, block);
        store(k + 1, b, a, block);
    }
}

}  // namespace detail

// h_n(x) for the orthonormal Hermite functions h_n = alpha_n H_n e^{-x^2/2}.
inline double hermite_eval(std::int64_t n, double x,
                           std::int64_t max_order = default_max_order) {
    detail::check_order(n, max_order);
    if (!std::isfinite(x)) throw_domain("hermite_eval requires finite x");
    double last = 0.0;
    std::int64_t last_block = 0;
    detail::hermite_recurrence(n, x, [&](std::int64_t, double v, double, std::int64_t blk) {
        last = v;
        last_block = blk;
    });
    return HermiteValue::normalized(last, last_block).to_double();
}

// All of h_0..h_{n_max} at x in one recurrence pass; optionally the
// derivatives via h_k' = sqrt(2k) h_{k-1} - x h_k.
inline HermiteSlice hermite_eval_slice(std::int64_t n_max, double x, bool with_derivatives,
                                       std::int64_t max_order = default_max_order) {
    detail::check_order(n_max, max_order);
    if (!std::isfinite(x)) throw_domain("hermite_eval_slice requires finite x");
    HermiteSlice slice;
    slice.n_max = n_max;
    slice.x = x;
    slice.values.resize(static_cast<std::size_t>(n_max) + 1);
    if (with_derivatives) slice.derivatives.resize(static_cast<std::size_t>(n_max) + 1);
    detail::hermite_recurrence(
        n_max, x, [&](std::int64_t k, double v, double prev, std::int64_t blk) {
            auto i = static_cast<std::size_t>(k);
            slice.values[i] = HermiteValue::normalized(v, blk);
            if (with_derivatives) {
                double d = (k == 0) ? -x * v : std::sqrt(2.0 * static_cast<double>(k)) * prev - x * v;
                slice.derivatives[i] = HermiteValue::normalized(d, blk);
            }
        });
    return slice;
}

// h_n(0) for even n, h_n'(0) for odd n, via the double-factorial ratio
// (2p-1)!!/(2p)!! carried in log space.
inline double hermite_zero_value(std::int64_t n, std::int64_t max_order = default_max_order) {
    detail::check_order(n, max_order);
    std::int64_t p = n / 2;
    compensated_sum logs;
    for (std::int64_t j = 1; j <= p; ++j)
        logs.add(std::log1p(-0.5 / static_cast<double>(j)));
    double root = std::exp(0.5 * logs.value());  // sqrt((2p-1)!!/(2p)!!)
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    if (n % 2 == 0) return sign * inv_pi_quarter * root;
    return sign * std::sqrt(4.0 * static_cast<double>(p) + 2.0) * inv_pi_quarter * root;
}

// Central-difference residual of h_n'' + (2n+1-x^2) h_n = 0; test harness only.
inline double ode_residual(std::int64_t n, double x, double h_step) {
    if (!(h_step > 0.0)) throw_domain("ode_residual requires h_step > 0");
    double hm = hermite_eval(n, x - h_step);
    double h0 = hermite_eval(n, x);
    double hp = hermite_eval(n, x + h_step);
    double second = (hm - 2.0 * h0 + hp) / (h_step * h_step);
    return second + (2.0 * static_cast<double>(n) + 1.0 - x * x) * h0;
}

}  // namespace hermband
