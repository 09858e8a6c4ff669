#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "hermband/bounds.hpp"
#include "hermband/expansion.hpp"
#include "hermband/kernel.hpp"
#include "hermband/quadrature.hpp"

using namespace hermband;
using Catch::Matchers::WithinRel;

TEST_CASE("bound evaluators reproduce their formulas") {
    SECTION("local") {
        BoundInput in{50, 2.5, 2.0, 2.0, 0.01, 0.02, {}, {}, {}};
        double expect = 2.0 * 0.01 + 0.02 + 34.0 * std::pow(2.5, 3) / std::sqrt(101.0);
        CHECK_THAT(local_projection_bound(in), WithinRel(expect, 1e-15));
    }
    SECTION("global") {
        BoundInput in{200, 8.0, 2.0, 3.0, 0.001, 0.0, {}, {}, {}};
        double expect = std::sqrt(0.002 + 0.5 / std::sqrt(8.0) +
                                  12.0 * std::pow(8.0, 2.5) * std::log(401.0) / std::sqrt(401.0));
        CHECK_THAT(global_projection_bound(in), WithinRel(expect, 1e-15));
    }
    SECTION("hilbert-schmidt") {
        BoundInput in;
        in.eps_T = 0.004;
        in.eps_Omega = 0.03;
        in.hs_norm = 0.022296;
        CHECK_THAT(local_projection_bound_hs(in), WithinRel(0.03 + 0.022296 + 0.008, 1e-15));
    }
    SECTION("scaled") {
        BoundInput in{40, 4.0, 0.0, 0.0, 1e-4, 0.07, 2.0, 4.0, {}};
        double expect = 1e-4 + 0.07 + 24.0 * std::pow(2.0, 3) / std::sqrt(81.0);
        CHECK_THAT(scaled_projection_bound(in), WithinRel(expect, 1e-15));
    }
    SECTION("l1 residual") {
        CHECK_THAT(l1_residual_bound(64, 2.0, 3.5),
                   WithinRel(17.0 * std::pow(2.0, 2.5) * 3.5 / 8.0, 1e-15));
    }
}

TEST_CASE("bound hypotheses are enforced") {
    BoundInput ok{50, 2.5, 2.0, 2.0, 0.01, 0.02, {}, {}, {}};

    SECTION("local") {
        auto bad = ok;
        bad.T0 = 1.9;
        CHECK_THROWS_AS(local_projection_bound(bad), error);
        bad = ok;
        bad.Omega0 = 1.0;
        CHECK_THROWS_AS(local_projection_bound(bad), error);
        bad = ok;
        bad.T = 1.5;  // below T0
        CHECK_THROWS_AS(local_projection_bound(bad), error);
        bad = ok;
        bad.n = 7;  // below 2 T^2
        CHECK_THROWS_AS(local_projection_bound(bad), error);
        bad = ok;
        bad.eps_T = 1.2;
        CHECK_THROWS_AS(local_projection_bound(bad), error);
        bad = ok;
        bad.eps_Omega = -0.1;
        CHECK_THROWS_AS(local_projection_bound(bad), error);
    }
    SECTION("global needs T >= 2 T0") {
        auto bad = ok;
        bad.T = 3.0;
        CHECK_THROWS_AS(global_projection_bound(bad), error);
        auto good = ok;
        good.T = 4.0;
        good.n = 50;
        CHECK_NOTHROW(global_projection_bound(good));
    }
    SECTION("hs needs a measured residual norm") {
        CHECK_THROWS_AS(local_projection_bound_hs(ok), error);
        auto bad = ok;
        bad.hs_norm = -1.0;
        CHECK_THROWS_AS(local_projection_bound_hs(bad), error);
    }
    SECTION("scaled") {
        BoundInput in{40, 4.0, 0.0, 0.0, 0.0, 0.0, 2.0, 4.0, {}};
        auto bad = in;
        bad.alpha.reset();
        CHECK_THROWS_AS(scaled_projection_bound(bad), error);
        bad = in;
        bad.T = 1.5;
        CHECK_THROWS_AS(scaled_projection_bound(bad), error);
        bad = in;
        bad.c = 0.5;  // below 2/alpha
        CHECK_THROWS_AS(scaled_projection_bound(bad), error);
        bad = in;
        bad.n = 31;  // below 2 c^2
        CHECK_THROWS_AS(scaled_projection_bound(bad), error);
    }
    SECTION("l1 residual") {
        CHECK_THROWS_AS(l1_residual_bound(0, 2.0, 1.0), error);
        CHECK_THROWS_AS(l1_residual_bound(4, 0.0, 1.0), error);
        CHECK_THROWS_AS(l1_residual_bound(4, 2.0, -1.0), error);
    }
}

TEST_CASE("degenerate and limiting bound values") {
    SECTION("zero concentrations leave only the kernel term") {
        BoundInput in{800, 2.0, 2.0, 2.0, 0.0, 0.0, {}, {}, {}};
        CHECK_THAT(local_projection_bound(in), WithinRel(272.0 / std::sqrt(1601.0), 1e-15));
        BoundInput sc{12, 2.0, 0.0, 0.0, 0.0, 0.0, 2.0, 1.0, {}};
        CHECK_THAT(scaled_projection_bound(sc), WithinRel(4.8, 1e-15));
        BoundInput hs;
        hs.hs_norm = 0.051;
        CHECK_THAT(local_projection_bound_hs(hs), WithinRel(0.051, 1e-15));
        CHECK_THAT(l1_residual_bound(100, 1.0, 1.0), WithinRel(1.7, 1e-15));
        CHECK(l1_residual_bound(100, 1.0, 0.0) == 0.0);
    }
    SECTION("large n approaches the concentration-only limit") {
        BoundInput in{std::int64_t{1} << 40, 2.5, 2.0, 2.0, 0.01, 0.02, {}, {}, {}};
        double b = local_projection_bound(in);
        CHECK(b > 0.04);
        CHECK(b < 0.0404);
        BoundInput g{std::int64_t{1} << 46, 4.0, 2.0, 2.0, 0.0, 0.0, {}, {}, {}};
        double gb = global_projection_bound(g);
        CHECK(gb > 0.5);  // sqrt(1/(2 sqrt T)) = 0.5 at T = 4
        CHECK(gb < 0.502);
    }
}

TEST_CASE("bound monotonicity") {
    BoundInput in{100, 2.0, 2.0, 2.0, 0.01, 0.02, {}, {}, {}};
    SECTION("decreasing in the order") {
        double prev = local_projection_bound(in);
        for (std::int64_t n : {200, 400, 800, 1600}) {
            auto next = in;
            next.n = n;
            double b = local_projection_bound(next);
            CHECK(b < prev);
            prev = b;
        }
    }
    SECTION("increasing in the window") {
        double prev = local_projection_bound(in);
        for (double T : {2.5, 3.0, 3.5}) {
            auto next = in;
            next.T = T;
            double b = local_projection_bound(next);
            CHECK(b > prev);
            prev = b;
        }
    }
    SECTION("increasing in each concentration") {
        auto more_t = in;
        more_t.eps_T = 0.02;
        CHECK(local_projection_bound(more_t) > local_projection_bound(in));
        auto more_o = in;
        more_o.eps_Omega = 0.04;
        CHECK(local_projection_bound(more_o) > local_projection_bound(in));
    }
    SECTION("hs form undercuts the a-priori form when the measured norm does") {
        double kernel_term = 34.0 * 8.0 / std::sqrt(201.0);
        auto with_hs = in;
        with_hs.hs_norm = 0.5 * kernel_term;
        CHECK(local_projection_bound_hs(with_hs) < local_projection_bound(in));
    }
}

TEST_CASE("scaled bound dominates a measured stretched reconstruction") {
    // Stretch scale alpha_s = 2 corresponds to expanding in the basis
    // h_k(x/2)/sqrt(2), i.e. compress parameter 1/alpha_s.
    const double alpha_s = 2.0, T = 4.0, c = 4.0;
    const std::int64_t n = 40;
    Signal f = Signal::gaussian(1.0);

    BoundInput in;
    in.n = n;
    in.T = T;
    in.alpha = alpha_s;
    in.c = c;
    in.eps_T = time_concentration(f, T);
    in.eps_Omega = band_concentration(f, c / alpha_s);
    double bound = scaled_projection_bound(in);

    CoefficientVector coef = expand(f, n, 1.0 / alpha_s);
    std::vector<double> xs;
    for (int i = 0; i <= 160; ++i) xs.push_back(-T + 2.0 * T * i / 160.0);
    auto rec = reconstruct(coef, xs);
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        sup = std::max(sup, std::abs(f(xs[i]) - rec[i]));

    CHECK(sup <= bound);
    // coefficient decay ratio is 0.6 here, so n = 40 leaves a ~4e-6 tail;
    // the a-priori bound is far from tight
    CHECK(sup < 2e-5);
    CHECK_THAT(in.eps_T, WithinRel(std::sqrt(std::erfc(4.0)), 1e-13));
    CHECK_THAT(in.eps_Omega, WithinRel(std::sqrt(std::erfc(2.0)), 1e-13));
}

TEST_CASE("smallest order meeting a target") {
    SECTION("local, exact crossover") {
        BoundInput base{0, 2.0, 2.0, 2.0, 0.0, 0.0, {}, {}, {}};
        // bound(n) = 272 / sqrt(2n+1) <= 0.1  <=>  n >= 3699199.5
        std::int64_t n = min_n_for(0.1, BoundKind::local, base);
        CHECK(n == 3'699'200);
        CHECK(detail::bound_value(BoundKind::local, base, n) <= 0.1);
        CHECK(detail::bound_value(BoundKind::local, base, n - 1) > 0.1);
    }
    SECTION("target met already at the hypothesis floor") {
        BoundInput base{0, 2.0, 2.0, 2.0, 0.0, 0.0, {}, {}, {}};
        CHECK(min_n_for(100.0, BoundKind::local, base) == 8);
    }
    SECTION("scaled") {
        BoundInput base{0, 2.0, 0.0, 0.0, 0.0, 0.0, 2.0, 1.5, {}};
        std::int64_t n = min_n_for(0.5, BoundKind::scaled, base);
        CHECK(n == 1152);
        CHECK(detail::bound_value(BoundKind::scaled, base, n) <= 0.5);
        CHECK(detail::bound_value(BoundKind::scaled, base, n - 1) > 0.5);
    }
    SECTION("targets below the n-independent part are rejected") {
        BoundInput base{0, 2.0, 2.0, 2.0, 0.05, 0.05, {}, {}, {}};
        // limit = 2 eps_T + eps_Omega = 0.15
        try {
            min_n_for(0.1, BoundKind::local, base);
            FAIL("expected a domain error");
        } catch (const error& e) {
            CHECK(e.which() == error::kind::domain);
        }
    }
    SECTION("targets needing absurd orders are a capacity error") {
        BoundInput base{0, 2.0, 2.0, 2.0, 0.0, 0.0, {}, {}, {}};
        try {
            min_n_for(1e-9, BoundKind::local, base);
            FAIL("expected a capacity error");
        } catch (const error& e) {
            CHECK(e.which() == error::kind::capacity);
        }
    }
}

TEST_CASE("hs bound dominates a measured indicator reconstruction") {
    // sinc bandwidth at n = 50 is about 10.1, so eps_Omega at 10 is admissible
    Signal f = Signal::indicator(-0.5, 0.5);
    BoundInput in;
    in.n = 50;
    in.T = 1.0;
    in.eps_T = time_concentration(f, 1.0);
    in.eps_Omega = band_concentration(f, 10.0);
    in.hs_norm = residual_hs_norm(50, 1.0);
    double bound = local_projection_bound_hs(in);
    double measured = projection_error(f, 50, 1.0, 1.0);
    CHECK(in.eps_T == 0.0);
    CHECK(measured <= bound);
    CHECK(bound < 0.3);  // informative: ||f||_2 = 1
}

TEST_CASE("scaled bound dominates a wide-basis indicator expansion") {
    // stretch 10 pushes the basis reach to ~127 in time but only ~1.27 in
    // frequency; c = sqrt(n/2) is the largest band edge the order floor allows
    Signal f = Signal::indicator(-0.5, 0.5);
    const double alpha_s = 10.0;
    const double c = std::nextafter(std::sqrt(40.0), 0.0);
    BoundInput in;
    in.n = 80;
    in.T = 2.0;
    in.alpha = alpha_s;
    in.c = c;
    in.eps_T = time_concentration(f, 2.0);
    in.eps_Omega = band_concentration(f, c / alpha_s);
    double bound = scaled_projection_bound(in);
    double measured = projection_error(f, 80, 1.0 / alpha_s, 2.0);
    CHECK(measured <= bound);
    CHECK(bound < 1.0);
}

TEST_CASE("global bound dominates the measured energy outside the window") {
    Signal f = Signal::indicator(-0.5, 0.5);
    BoundInput in;
    in.n = 40;
    in.T = 4.0;
    in.T0 = 2.0;
    in.Omega0 = std::nextafter(std::sqrt(20.0), 0.0);  // keeps the order floor at 40
    in.eps_T = 0.0;                                    // support inside [-T0, T0]
    double measured = projection_error_outside(f, 40, 1.0, 4.0);
    CHECK(measured <= global_projection_bound(in));
    CHECK(measured < 0.05);
}

TEST_CASE("l1 bound dominates the kernel residual applied to a box") {
    const std::int64_t n = 64;
    const double N = sinc_bandwidth(n);
    const double lambda = std::sqrt(129.0);
    auto r = [&](double x) {
        return quad_integrate([&](double y) { return cd_kernel(n, x, y) - sinc_kernel(N, x, y); },
                              -0.5, 0.5, 2.0 * lambda);
    };
    double norm2 =
        quad_integrate([&](double x) { double v = r(x); return v * v; }, -1.0, 1.0, 2.0 * lambda);
    double norm = std::sqrt(norm2);
    CHECK(norm <= l1_residual_bound(n, 1.0, 1.0));
    CHECK(norm < 0.05);
}
