#pragma once

#include <cstdint>

// Extended-precision reference values, independent of the library under test.
namespace oracle {

// h_n(x) by the orthonormal three-term recurrence at 256-bit precision,
// rounded to double at the end. Underflows to 0 where the true value is
// below the double range.
double hermite(std::int64_t n, double x);

// Relative gap between mantissa * 2^exponent and the 256-bit value of h_n(x),
// evaluated in extended precision so that tiny magnitudes are compared
// faithfully.
double hermite_rel_gap(std::int64_t n, double x, double mantissa, std::int64_t exponent);

}  // namespace oracle
