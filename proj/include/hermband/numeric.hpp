#pragma once

#include <cmath>
#include <cstdint>

namespace hermband {

inline constexpr double pi = 3.14159265358979323846264338327950288;
// pi^{-1/4}, the L2 normalization of the Gaussian ground state
inline constexpr double inv_pi_quarter = 0.751125544464942482858703004776;
inline constexpr double sqrt2 = 1.41421356237309504880168872420969808;

// Neumaier-compensated accumulator.
struct compensated_sum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// sin(u)/u with the removable singularity handled.
inline double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

inline double sqr(double x) { return x * x; }

}  // namespace hermband
