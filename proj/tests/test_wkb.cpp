#include <catch_amalgamated.hpp>

#include <cmath>

#include "hermband/hermite.hpp"
#include "hermband/wkb.hpp"

using namespace hermband;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("phase function values") {
    // 40-digit references
    CHECK_THAT(phase_phi(0, 0.5), WithinRel(0.4783057387452590982294844, 1e-14));
    CHECK_THAT(phase_phi(9, 0.5), WithinRel(2.174660499487259590132385, 1e-14));
    CHECK_THAT(phase_phi(10, 0.5), WithinRel(2.286733488488871358754655, 1e-14));
    CHECK_THAT(phase_phi(50, 1.0), WithinRel(10.03326695080368238261153, 1e-14));

    SECTION("exact value at the turning point") {
        for (std::int64_t n : {0, 7, 120}) {
            double lambda = std::sqrt(2.0 * static_cast<double>(n) + 1.0);
            CHECK(phase_phi(n, lambda) == pi * (2.0 * static_cast<double>(n) + 1.0) / 4.0);
            CHECK(phase_phi(n, -lambda) == -pi * (2.0 * static_cast<double>(n) + 1.0) / 4.0);
        }
    }

    SECTION("odd in x, increasing in x") {
        double prev = phase_phi(20, -6.0);
        for (double x = -5.5; x <= 6.01; x += 0.5) {
            double v = phase_phi(20, x);
            CHECK(v > prev);
            CHECK_THAT(phase_phi(20, -x), WithinAbs(-v, 1e-13));
            prev = v;
        }
    }
}

TEST_CASE("phase defect avoids cancellation near zero") {
    CHECK_THAT(phase_defect(50, 0.01), WithinRel(1.658395563313069861933335e-8, 1e-13));

    SECTION("series and direct branches agree across the switch") {
        // just above the series cutoff the direct subtraction still has ~9
        // good digits; the series is accurate to machine precision there
        std::int64_t n = 50;
        double lambda = std::sqrt(101.0);
        double x = 1.2e-3 * lambda;  // direct branch
        double series = x * x * x / (6.0 * lambda) +
                        std::pow(x, 5) / (40.0 * lambda * lambda * lambda);
        CHECK_THAT(phase_defect(n, x), WithinRel(series, 1e-6));
    }

    SECTION("defect is odd and grows with |x|") {
        for (double x : {0.3, 0.9, 2.2}) {
            CHECK(phase_defect(30, x) > 0.0);
            CHECK_THAT(phase_defect(30, -x), WithinAbs(-phase_defect(30, x), 1e-15));
        }
        CHECK(phase_defect(30, 2.0) > phase_defect(30, 1.0));
    }
}

TEST_CASE("asymptotic main terms") {
    CHECK_THAT(wkb_main_term(9, 0.5), WithinRel(0.3157306985607177778808819, 1e-13));
    CHECK_THAT(wkb_simplified_term(9, 0.5, 2.0),
               WithinRel(0.3283883736434682907741098, 1e-13));

    SECTION("measured deviations match the references") {
        double h = hermite_eval(9, 0.5);
        CHECK_THAT(h - wkb_main_term(9, 0.5), WithinRel(-0.000556072588224064, 1e-9));
        CHECK_THAT(h - wkb_simplified_term(9, 0.5, 2.0),
                   WithinRel(-0.0132137476709746, 1e-9));
    }
}

TEST_CASE("error envelope report") {
    WkbEnvelope env = wkb_envelope(9, 0.5, 2.0);
    CHECK(env.regime == WkbRegime::half);
    CHECK_THAT(env.E_bound, WithinRel(2.0 / std::pow(19.0, 1.5), 1e-14));
    CHECK(std::abs(env.E_measured) <= env.E_bound);
    REQUIRE(env.tilde_bound.has_value());
    CHECK_THAT(*env.tilde_bound, WithinRel(2.0 * 4.0 / std::pow(19.0, 1.25), 1e-14));
    CHECK(std::abs(*env.tilde_measured) <= *env.tilde_bound);

    SECTION("generic regime outside half the turning radius") {
        WkbEnvelope far = wkb_envelope(9, 3.0);
        CHECK(far.regime == WkbRegime::generic);
        double r = std::sqrt(19.0) / (19.0 - 9.0);
        CHECK_THAT(far.E_bound, WithinRel(1.25 * r * r * std::sqrt(r), 1e-13));
        CHECK(std::abs(far.E_measured) <= far.E_bound);
        CHECK_FALSE(far.tilde_bound.has_value());
    }
}

TEST_CASE("phase inequality grid audit passes and reports extremes") {
    LemmaReport rep = verify_phase_lemma(100, 2.0, 32);
    REQUIRE(rep.worst_ratios.size() == 9);
    for (const auto& [key, ext] : rep.worst_ratios) {
        INFO(key);
        CHECK(ext.ratio > 0.0);
        CHECK(ext.ratio <= 1.0);
        CHECK(std::isfinite(ext.x));
        CHECK(std::abs(ext.x) <= 2.0);
    }
    // pairwise inequalities carry the second point too
    CHECK(std::isfinite(rep.worst_ratios.at("phase-sum-linear").y));
    CHECK_FALSE(std::isfinite(rep.worst_ratios.at("defect-sup").y));
}

TEST_CASE("asymptotics argument validation") {
    CHECK_THROWS_AS(phase_phi(10, 100.0), error);
    CHECK_THROWS_AS(wkb_main_term(10, std::sqrt(21.0)), error);
    CHECK_THROWS_AS(wkb_simplified_term(10, 0.5, 0.5), error);   // T < 1
    CHECK_THROWS_AS(wkb_simplified_term(10, 3.0, 2.0), error);   // |x| > T
    CHECK_THROWS_AS(wkb_simplified_term(4, 1.0, 2.0), error);    // n < 2 T^2
    CHECK_THROWS_AS(verify_phase_lemma(4, 2.0, 16), error);      // T > turning/2
    CHECK_THROWS_AS(verify_phase_lemma(100, 1.0, 16), error);    // T < 2
    CHECK_THROWS_AS(verify_phase_lemma(100, 2.0, 1), error);
}
