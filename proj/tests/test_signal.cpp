#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hermband/hermite.hpp"
#include "hermband/quadrature.hpp"
#include "hermband/signal.hpp"

using namespace hermband;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("indicator signal") {
    Signal f = Signal::indicator(-0.5, 1.5);
    CHECK(f(-0.5) == 1.0);
    CHECK(f(1.5) == 1.0);
    CHECK(f(0.3) == 1.0);
    CHECK(f(-0.6) == 0.0);
    CHECK(f.l2_norm_sq() == 2.0);
    CHECK(f.breakpoints() == std::vector<double>{-0.5, 1.5});
    CHECK_THROWS_AS(Signal::indicator(1.0, 1.0), error);
}

TEST_CASE("hat signal") {
    Signal f = Signal::hat(0.5, 2.0);
    CHECK(f(0.5) == 1.0);
    CHECK(f(-1.5) == 0.0);
    CHECK(f(2.5) == 0.0);
    CHECK_THAT(f(1.5), WithinRel(0.5, 1e-15));
    CHECK_THAT(f.l2_norm_sq(), WithinRel(2.0 * 2.0 / 3.0, 1e-15));
    CHECK(f.breakpoints() == std::vector<double>{-1.5, 0.5, 2.5});
    CHECK_THROWS_AS(Signal::hat(0.0, 0.0), error);

    // independent check of the closed-form norm
    double q = quad_integrate_split([&](double x) { return f(x) * f(x); }, -1.5, 2.5, 0.0,
                                    f.breakpoints());
    CHECK_THAT(q, WithinRel(f.l2_norm_sq(), 1e-13));
}

TEST_CASE("gaussian signal") {
    Signal f = Signal::gaussian(0.8);
    CHECK(f(0.0) == 1.0);
    CHECK_THAT(f(0.8), WithinRel(std::exp(-0.5), 1e-15));
    CHECK_THAT(f.l2_norm_sq(), WithinRel(0.8 * std::sqrt(pi), 1e-15));
    double q = quad_integrate([&](double x) { return f(x) * f(x); }, -9.0, 9.0, 0.0);
    CHECK_THAT(q, WithinRel(f.l2_norm_sq(), 1e-13));
    CHECK_THROWS_AS(Signal::gaussian(-1.0), error);
}

TEST_CASE("basis-function signal") {
    Signal f = Signal::hermite(7);
    CHECK(f(0.9) == hermite_eval(7, 0.9));
    CHECK(f.l2_norm_sq() == 1.0);
    auto [lo, hi] = f.support();
    double q = quad_integrate([&](double x) { return f(x) * f(x); }, lo, hi,
                              2.0 * std::sqrt(15.0));
    CHECK_THAT(q, WithinRel(1.0, 1e-12));
    CHECK_THROWS_AS(Signal::hermite(-2), error);
}

TEST_CASE("sampled signal") {
    std::vector<double> xs{0.0, 1.0, 2.0, 4.0};
    std::vector<double> vs{0.0, 2.0, 2.0, 0.0};
    Signal f = Signal::sampled(xs, vs);
    CHECK(f(0.5) == 1.0);
    CHECK(f(1.5) == 2.0);
    CHECK(f(3.0) == 1.0);
    CHECK(f(-0.1) == 0.0);
    CHECK(f(4.1) == 0.0);

    SECTION("piecewise-linear norm matches quadrature") {
        double q = quad_integrate_split([&](double x) { return f(x) * f(x); }, 0.0, 4.0, 0.0,
                                        {1.0, 2.0});
        CHECK_THAT(f.l2_norm_sq(), WithinRel(q, 1e-13));
    }

    SECTION("grid validation") {
        CHECK_THROWS_AS(Signal::sampled({0.0}, {1.0}), error);
        CHECK_THROWS_AS(Signal::sampled({0.0, 0.0}, {1.0, 1.0}), error);
        CHECK_THROWS_AS(Signal::sampled({0.0, 1.0}, {1.0}), error);
    }
}

TEST_CASE("sampled signal csv loading") {
    std::string path = "test_signal_data.csv";
    {
        std::ofstream out(path);
        out << "x,value\n0,0\n0.5,1\n1,0.25\n1.5,0\n";
    }
    Signal f = load_sampled_csv(path);
    CHECK(f(0.25) == 0.5);
    CHECK_THAT(f(0.75), WithinRel(0.625, 1e-15));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_sampled_csv("no_such_file.csv"), error);
    try {
        load_sampled_csv("no_such_file.csv");
    } catch (const error& e) {
        CHECK(e.which() == error::kind::io);
    }
}
