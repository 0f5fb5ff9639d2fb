#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

#include "divbound/error.hpp"
#include "divbound/orthopoly.hpp"
#include "divbound/tilt.hpp"

using namespace divbound;
using namespace divbound::tilt;
using doctest::Approx;

namespace {
const PolynomialStatistic kIdentity({0.0, 1.0}, "x");
const PolynomialStatistic kSquare({0.0, 0.0, 1.0}, "x^2");
}  // namespace

TEST_SUITE("tilt") {
    TEST_CASE("beta domains") {
        const auto l3 = orthopoly::laguerre_statistic(3, -0.5);
        const Interval d3 = beta_domain_of(Base::gamma(-0.5), l3);
        CHECK(d3.contains(-1.84));
        CHECK(d3.contains(0.0));
        CHECK_FALSE(d3.contains(0.01));
        const Interval d1 = beta_domain_of(Base::gamma(2.0), kIdentity);
        CHECK(d1.contains(0.999));
        CHECK_FALSE(d1.contains(1.0));
        const Interval dg = beta_domain_of(Base::gaussian(), kSquare);
        CHECK(dg.contains(0.49));
        CHECK_FALSE(dg.contains(0.5));
        CHECK(beta_domain_of(Base::gaussian(), kIdentity).contains(50.0));
        const Interval odd = beta_domain_of(Base::gaussian(), orthopoly::hermite_statistic(3));
        CHECK(odd.contains(0.0));
        CHECK_FALSE(odd.contains(-1e-6));
        CHECK_THROWS_AS(TiltedFamily(Base::gamma(-0.5), l3).moments(0.5), DomainError);
    }

    TEST_CASE("partition function at zero") {
        for (double alpha : {-0.5, 0.0, 3.0}) {
            for (int k = 1; k <= 3; ++k) {
                const TiltedFamily f(Base::gamma(alpha), orthopoly::laguerre_statistic(k, alpha), 120);
                CHECK(f.partition(0.0, 0) == Approx(1.0).epsilon(1e-12));
                CHECK(std::abs(f.partition(0.0, 1)) < 1e-11);
                CHECK(f.partition(0.0, 2) == Approx(1.0).epsilon(1e-11));
                CHECK(std::abs(f.tilted_mean(0.0)) < 1e-11);
                CHECK(f.tilted_variance(0.0) == Approx(1.0).epsilon(1e-11));
                CHECK(f.divergence_from_base(0.0) == 0.0);
            }
        }
    }

    TEST_CASE("gaussian shifts") {
        const TiltedFamily f(Base::gaussian(), kIdentity, 80);
        CHECK(f.tilted_mean(0.8) == Approx(0.8).epsilon(1e-12));
        CHECK(f.divergence_from_base(1.0) == Approx(0.5).epsilon(1e-12));
        const auto p = f.project_to_mean(-1.0);
        CHECK(p.beta == Approx(-1.0).epsilon(1e-10));
        CHECK(p.divergence == Approx(0.5).epsilon(1e-10));
    }

    TEST_CASE("degree-2 laguerre tilt against oracle") {
        // Independent 30-digit quadrature of the tilted integrals.
        const TiltedFamily f(Base::gamma(0.0), orthopoly::laguerre_statistic(2, 0.0));
        const auto m = f.moments(-0.5);
        CHECK(m.log_z == Approx(0.0723649429247000870).epsilon(1e-10));
        CHECK(m.mean == Approx(-0.256758334191025148).epsilon(1e-10));
        CHECK(f.divergence_from_base(-0.5) == Approx(0.0560142241708124868).epsilon(1e-10));
    }

    TEST_CASE("hermite-4 tilt against oracle") {
        const TiltedFamily f(Base::gaussian(), orthopoly::hermite_statistic(4));
        CHECK(f.log_partition(-1.0) == Approx(0.245075500239719518).epsilon(1e-10));
        CHECK(f.tilted_mean(-1.0) == Approx(-0.456645523098793981).epsilon(1e-10));
        CHECK(f.divergence_from_base(-1.0) == Approx(0.211570022859074463).epsilon(1e-10));
    }

    TEST_CASE("divergence identity and derivative of log partition") {
        const TiltedFamily f(Base::gamma(1.5), orthopoly::laguerre_statistic(2, 1.5));
        for (double b : {-1.0, -0.3, -0.05}) {
            const double h = 1e-5;
            const double dlz = (f.log_partition(b + h) - f.log_partition(b - h)) / (2 * h);
            CHECK(dlz == Approx(f.tilted_mean(b)).epsilon(1e-7));
            // D = E_b[log dQ_b/dQ_0]
            const double direct = f.expect(b, [&](double x) { return f.log_density(b, x) - f.base().log_density(x); });
            CHECK(direct == Approx(f.divergence_from_base(b)).epsilon(1e-9));
        }
    }

    TEST_CASE("section V projection") {
        const TiltedFamily f(Base::gamma(-0.5), orthopoly::laguerre_statistic(3, -0.5));
        const auto p = f.project_to_mean(-3.0);
        CHECK(p.beta == Approx(-1.83125).epsilon(1e-3 / 1.83125));
        CHECK(p.divergence == Approx(3.3195).epsilon(1e-3 / 3.3195));
        CHECK(f.tilted_mean(-1.83125) == Approx(-3.0).epsilon(1e-4));
        CHECK(f.divergence_from_base(-1.83125) == Approx(3.3195).epsilon(1e-4));
        const auto z = f.project_to_mean(0.0);
        CHECK(z.beta == 0.0);
        CHECK(z.divergence == 0.0);
    }

    TEST_CASE("attainable means") {
        const TiltedFamily f(Base::gamma(-0.5), orthopoly::laguerre_statistic(2, -0.5));
        const auto r = f.attainable_mean_range();
        // beta <= 0 only: the mean can not exceed its value at 0, and can
        // approach min L2~ from above as beta -> -inf.
        CHECK(r.hi == Approx(0.0).scale(1.0));
        CHECK(r.hi_attained);
        CHECK(r.lo == Approx(orthopoly::laguerre2_extremum(-0.5).min_value).epsilon(1e-6));
        CHECK_FALSE(r.lo_attained);
        try {
            f.project_to_mean(0.5);
            FAIL("expected RangeError");
        } catch (const RangeError& e) {
            CHECK(e.hi() == Approx(0.0).scale(1.0));
        }
    }

    TEST_CASE("quadrature order does not move results") {
        const TiltedFamily a(Base::gamma(2.5), orthopoly::laguerre_statistic(2, 2.5), 100);
        const TiltedFamily b = a.with_nodes(400);
        for (double beta : {-0.8, -0.2}) {
            CHECK(a.divergence_from_base(beta) == Approx(b.divergence_from_base(beta)).epsilon(1e-10));
            CHECK(a.tilted_mean(beta) == Approx(b.tilted_mean(beta)).epsilon(1e-10));
        }
    }

    TEST_CASE("mean map is increasing") {
        for (double alpha : {-0.5, 2.0}) {
            const TiltedFamily f(Base::gamma(alpha), orthopoly::laguerre_statistic(3, alpha));
            double prev = -1e300;
            for (int i = 0; i <= 30; ++i) {
                const double m = f.tilted_mean(-3.0 + 0.1 * i);
                CHECK(m > prev);
                prev = m;
            }
        }
    }

    TEST_CASE("variance slope at zero is the cube moment") {
        for (double alpha : {-0.5, 0.0, 1.0, 2.5, 6.0})
            for (int n = 2; n <= 5; ++n) {
                const TiltedFamily f(Base::gamma(alpha), orthopoly::laguerre_statistic(n, alpha));
                // One-sided: beta <= 0 for degree >= 2. Higher cumulants grow
                // fast, so the step has to be small.
                const double h = 1e-7;
                const double slope = (3 * f.tilted_variance(0.0) - 4 * f.tilted_variance(-h) + f.tilted_variance(-2 * h)) /
                                     (2 * h);
                const double cube = f.expect(0.0, [&](double x) {
                    const double t = f.statistic()(x);
                    return t * t * t;
                });
                CAPTURE(alpha);
                CAPTURE(n);
                CHECK(cube > 0.0);
                CHECK(slope == Approx(cube).epsilon(1e-3));
            }
    }

    TEST_CASE("projection inverts the mean map") {
        const TiltedFamily f(Base::gamma(1.0), orthopoly::laguerre_statistic(2, 1.0));
        for (double m : {-0.8, -0.4, -0.05}) CHECK(f.tilted_mean(f.project_to_mean(m).beta) == Approx(m).epsilon(1e-8));
        const TiltedFamily g(Base::gaussian(), orthopoly::hermite_statistic(4));
        for (double m : {-0.5, -0.1}) CHECK(g.tilted_mean(g.project_to_mean(m).beta) == Approx(m).epsilon(1e-8));
        const TiltedFamily l(Base::gaussian(), kIdentity);
        for (double m : {-4.0, 2.5}) CHECK(l.tilted_mean(l.project_to_mean(m).beta) == Approx(m).epsilon(1e-8));
    }
}
