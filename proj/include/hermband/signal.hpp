#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hermband/errors.hpp"
#include "hermband/hermite.hpp"
#include "hermband/numeric.hpp"

namespace hermband {

// Test-signal family: indicators, hats, Gaussians, Hermite functions, and
// piecewise-linear sampled data.
struct Signal {
    enum class Kind { indicator, hat, gaussian, hermite, sampled };

    Kind kind = Kind::indicator;
    double a = -0.5, b = 0.5;         // indicator [a,b]
    double center = 0.0;              // hat
    double halfwidth = 1.0;           // hat
    double sigma = 1.0;               // gaussian e^{-x^2/(2 sigma^2)}
    std::int64_t k = 0;               // hermite order
    std::vector<double> xs, values;   // sampled

    static Signal indicator(double a, double b) {
        if (!(a < b)) throw_domain("indicator requires a < b");
        Signal s;
        s.kind = Kind::indicator;
        s.a = a;
        s.b = b;
        return s;
    }
    static Signal hat(double center, double halfwidth) {
        if (!(halfwidth > 0.0)) throw_domain("hat requires halfwidth > 0");
        Signal s;
        s.kind = Kind::hat;
        s.center = center;
        s.halfwidth = halfwidth;
        return s;
    }
    static Signal gaussian(double sigma) {
        if (!(sigma > 0.0)) throw_domain("gaussian requires sigma > 0");
        Signal s;
        s.kind = Kind::gaussian;
        s.sigma = sigma;
        return s;
    }
    static Signal hermite(std::int64_t k) {
        if (k < 0) throw_domain("hermite signal requires k >= 0");
        Signal s;
        s.kind = Kind::hermite;
        s.k = k;
        return s;
    }
    static Signal sampled(std::vector<double> xs, std::vector<double> values) {
        if (xs.size() != values.size()) throw_domain("sampled signal needs matching lengths");
        if (xs.size() < 2) throw_domain("sampled signal needs at least two points");
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (!(xs[i] < xs[i + 1])) throw_domain("sampled grid must be strictly increasing");
        Signal s;
        s.kind = Kind::sampled;
        s.xs = std::move(xs);
        s.values = std::move(values);
        return s;
    }

    double operator()(double x) const {
        switch (kind) {
            case Kind::indicator:
                return (x >= a && x <= b) ? 1.0 : 0.0;
            case Kind::hat:
                return std::max(0.0, 1.0 - std::abs(x - center) / halfwidth);
            case Kind::gaussian:
                return std::exp(-0.5 * x * x / (sigma * sigma));
            case Kind::hermite:
                return hermite_eval(k, x);
            case Kind::sampled: {
                if (x < xs.front() || x > xs.back()) return 0.0;
                auto it = std::upper_bound(xs.begin(), xs.end(), x);
                if (it == xs.begin()) return values.front();
                if (it == xs.end()) return values.back();
                std::size_t hi = static_cast<std::size_t>(it - xs.begin());
                std::size_t lo = hi - 1;
                double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
                return values[lo] + t * (values[hi] - values[lo]);
            }
        }
        return 0.0;
    }

    // Interval outside which the signal is zero or negligible (< 1e-16 of
    // peak for the unbounded kinds).
    std::pair<double, double> support() const {
        switch (kind) {
            case Kind::indicator:
                return {a, b};
            case Kind::hat:
                return {center - halfwidth, center + halfwidth};
            case Kind::gaussian:
                return {-9.0 * sigma, 9.0 * sigma};
            case Kind::hermite: {
                double r = std::sqrt(2.0 * static_cast<double>(k) + 1.0) + 10.0;
                return {-r, r};
            }
            case Kind::sampled:
                return {xs.front(), xs.back()};
        }
        return {0.0, 0.0};
    }

    bool bounded_support() const {
        return kind == Kind::indicator || kind == Kind::hat || kind == Kind::sampled;
    }

    // Kink/jump locations for quadrature splitting.
    std::vector<double> breakpoints() const {
        switch (kind) {
            case Kind::indicator:
                return {a, b};
            case Kind::hat:
                return {center - halfwidth, center, center + halfwidth};
            default:
                return {};
        }
    }

    double l2_norm_sq() const {
        switch (kind) {
            case Kind::indicator:
                return b - a;
            case Kind::hat:
                return 2.0 * halfwidth / 3.0;
            case Kind::gaussian:
                return sigma * std::sqrt(pi);
            case Kind::hermite:
                return 1.0;
            case Kind::sampled: {
                // exact integral of the squared piecewise-linear interpolant
                compensated_sum sum;
                for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                    double dv = xs[i + 1] - xs[i];
                    double u = values[i], v = values[i + 1];
                    sum.add(dv / 3.0 * (u * u + u * v + v * v));
                }
                return sum.value();
            }
        }
        return 0.0;
    }

    double l2_norm() const { return std::sqrt(l2_norm_sq()); }
};

// Two-column CSV (x,value); strictly increasing x; optional header line.
inline Signal load_sampled_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open " + path);
    std::vector<double> xs, values;
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x = 0, v = 0;
        if (!(ss >> x >> v)) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw_io("bad row " + std::to_string(line_no) + " in " + path);
        }
        first = false;
        xs.push_back(x);
        values.push_back(v);
    }
    return Signal::sampled(std::move(xs), std::move(values));
}

}  // namespace hermband
