#include "oracle_mpfr.hpp"

#include <mpfr.h>

namespace oracle {
namespace {

constexpr mpfr_prec_t prec = 256;

// result = h_n(x), caller owns the initialized mpfr_t
void hermite_mpfr(mpfr_t result, std::int64_t n, double x) {
    mpfr_t xm, a, b, c, s, t;
    mpfr_inits2(prec, xm, a, b, c, s, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(xm, x, MPFR_RNDN);

    // a = pi^{-1/4} exp(-x^2/2)
    mpfr_const_pi(t, MPFR_RNDN);
    mpfr_rootn_ui(t, t, 4, MPFR_RNDN);
    mpfr_sqr(s, xm, MPFR_RNDN);
    mpfr_div_ui(s, s, 2, MPFR_RNDN);
    mpfr_neg(s, s, MPFR_RNDN);
    mpfr_exp(a, s, MPFR_RNDN);
    mpfr_div(a, a, t, MPFR_RNDN);

    if (n == 0) {
        mpfr_set(result, a, MPFR_RNDN);
        mpfr_clears(xm, a, b, c, s, t, static_cast<mpfr_ptr>(nullptr));
        return;
    }

    // b = sqrt(2) x a
    mpfr_sqrt_ui(t, 2, MPFR_RNDN);
    mpfr_mul(b, t, xm, MPFR_RNDN);
    mpfr_mul(b, b, a, MPFR_RNDN);

    for (std::int64_t k = 1; k < n; ++k) {
        // c = x sqrt(2/(k+1)) b - sqrt(k/(k+1)) a
        mpfr_set_ui(t, 2, MPFR_RNDN);
        mpfr_div_ui(t, t, static_cast<unsigned long>(k + 1), MPFR_RNDN);
        mpfr_sqrt(t, t, MPFR_RNDN);
        mpfr_mul(c, t, xm, MPFR_RNDN);
        mpfr_mul(c, c, b, MPFR_RNDN);
        mpfr_set_ui(s, static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_div_ui(s, s, static_cast<unsigned long>(k + 1), MPFR_RNDN);
        mpfr_sqrt(s, s, MPFR_RNDN);
        mpfr_mul(s, s, a, MPFR_RNDN);
        mpfr_sub(c, c, s, MPFR_RNDN);
        mpfr_swap(a, b);
        mpfr_swap(b, c);
    }
    mpfr_set(result, b, MPFR_RNDN);
    mpfr_clears(xm, a, b, c, s, t, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

double hermite(std::int64_t n, double x) {
    mpfr_t r;
    mpfr_init2(r, prec);
    hermite_mpfr(r, n, x);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(r);
    return out;
}

double hermite_rel_gap(std::int64_t n, double x, double mantissa, std::int64_t exponent) {
    mpfr_t ref, val;
    mpfr_inits2(prec, ref, val, static_cast<mpfr_ptr>(nullptr));
    hermite_mpfr(ref, n, x);
    mpfr_set_d(val, mantissa, MPFR_RNDN);
    mpfr_mul_2si(val, val, static_cast<long>(exponent), MPFR_RNDN);
    double gap;
    if (mpfr_zero_p(ref)) {
        gap = mpfr_zero_p(val) ? 0.0 : 1.0;
    } else {
        mpfr_sub(val, val, ref, MPFR_RNDN);
        mpfr_div(val, val, ref, MPFR_RNDN);
        mpfr_abs(val, val, MPFR_RNDN);
        gap = mpfr_get_d(val, MPFR_RNDN);
    }
    mpfr_clears(ref, val, static_cast<mpfr_ptr>(nullptr));
    return gap;
}

}  // namespace oracle
