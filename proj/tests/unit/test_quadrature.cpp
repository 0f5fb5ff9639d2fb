#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "divbound/error.hpp"
#include "divbound/quadrature.hpp"

using namespace divbound;
using namespace divbound::numerics;
using doctest::Approx;

TEST_SUITE("quadrature") {
    TEST_CASE("gamma weight moments") {
        for (double alpha : {-0.5, 0.0, 2.5, 6.0}) {
            const auto s = QuadratureScheme::gamma(alpha, 64);
            CHECK(integrate_weighted([](double) { return 1.0; }, s).value == Approx(1.0).epsilon(1e-13));
            CHECK(integrate_weighted([](double x) { return x; }, s).value == Approx(alpha + 1).epsilon(1e-13));
            // E[x^3] = (a+1)(a+2)(a+3)
            CHECK(integrate_weighted([](double x) { return x * x * x; }, s).value ==
                  Approx((alpha + 1) * (alpha + 2) * (alpha + 3)).epsilon(1e-12));
        }
    }

    TEST_CASE("gaussian weight moments") {
        const auto s = QuadratureScheme::gaussian(40);
        CHECK(integrate_weighted([](double x) { return x * x; }, s).value == Approx(1.0).epsilon(1e-13));
        CHECK(integrate_weighted([](double x) { return x * x * x * x; }, s).value == Approx(3.0).epsilon(1e-13));
        CHECK(std::abs(integrate_weighted([](double x) { return x * x * x; }, s).value) < 1e-12);
    }

    TEST_CASE("rules are normalized and ordered") {
        for (int n : {16, 200, 1000}) {
            const auto r = gauss_rule(WeightKind::Gamma, -0.5, n);
            REQUIRE(r->nodes.size() == static_cast<std::size_t>(n));
            CHECK(std::accumulate(r->weights.begin(), r->weights.end(), 0.0) == Approx(1.0).epsilon(1e-13));
            CHECK(std::is_sorted(r->nodes.begin(), r->nodes.end()));
            CHECK(r->nodes.front() > 0.0);
            for (std::size_t i = 0; i < r->weights.size(); ++i)
                if (r->weights[i] > 1e-300) CHECK(std::exp(r->log_weights[i]) == Approx(r->weights[i]).epsilon(1e-9));
        }
        // Same pointer for repeated requests.
        CHECK(gauss_rule(WeightKind::Gaussian, 0.0, 50) == gauss_rule(WeightKind::Gaussian, 0.0, 50));
    }

    TEST_CASE("exponential integrand falls back when needed") {
        // E[exp(-x^2)] under N(0,1) = 1/sqrt(3)
        const auto s = QuadratureScheme::gaussian(64);
        const auto in = integrate_weighted_exp([](double) { return 1.0; }, [](double x) { return -x * x; }, s);
        CHECK(in.value == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
        // sqrt(x) near 0 under Exp(1) converges slowly for Gauss rules: Gamma(3/2).
        const auto g = integrate_weighted([](double x) { return std::sqrt(x); }, QuadratureScheme::gamma(0.0, 32));
        CHECK(g.value == Approx(std::tgamma(1.5)).epsilon(1e-9));
        CHECK(g.adaptive);
    }

    TEST_CASE("adaptive interval integration") {
        const auto in = integrate_interval([](double x) { return std::exp(-x); }, 0.0,
                                           std::numeric_limits<double>::infinity());
        CHECK(in.value == Approx(1.0).epsilon(1e-12));
        CHECK(integrate_interval([](double x) { return x * x; }, 0.0, 3.0).value == Approx(9.0).epsilon(1e-13));
    }

    TEST_CASE("non-finite integrand") {
        CHECK_THROWS_AS(integrate_weighted([](double) { return std::nan(""); }, QuadratureScheme::gamma(0.0, 16)),
                        EvaluationError);
    }

    TEST_CASE("find_root") {
        CHECK(find_root([](double b) { return b * b * std::exp(b * b) - 1.0; }, -1.0, -0.5, 1e-15) ==
              Approx(-0.75309).epsilon(5e-6 / 0.75309));
        CHECK(find_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-15) == Approx(1.0));
        CHECK(find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-15) == Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), BracketError);
    }

    TEST_CASE("scheme validation and defaults") {
        CHECK_THROWS_AS(QuadratureScheme::gamma(-1.0), DomainError);
        CHECK_THROWS_AS(QuadratureScheme::gamma(0.0, 0), DomainError);
        CHECK(default_node_count() >= kMinNodes);
        const auto saved = default_tolerances();
        set_default_tolerances({1e-8, 1e-7});
        CHECK(QuadratureScheme::gaussian(32).abs_tol == 1e-8);
        CHECK(QuadratureScheme::gaussian(32).rel_tol == 1e-7);
        set_default_tolerances(saved);
        CHECK_THROWS_AS(set_default_tolerances({0.0, 1e-10}), DomainError);
    }

    TEST_CASE("rules are exact to degree 2N-1") {
        constexpr int kNodes = 10;
        for (double alpha : {-0.5, 0.0, 2.5}) {
            const auto s = QuadratureScheme::gamma(alpha, kNodes);
            const auto rule = gauss_rule(WeightKind::Gamma, alpha, kNodes);
            double moment = 1.0;
            for (int k = 0; k <= 2 * kNodes - 1; ++k) {
                if (k > 0) moment *= alpha + k;
                const double sum = gauss_sum([k](double x) { return std::pow(x, k); }, {}, *rule);
                CAPTURE(k);
                CHECK(sum == Approx(moment).epsilon(1e-12));
            }
            (void)s;
        }
    }

    TEST_CASE("error estimate shrinks with node count on table integrands") {
        for (double alpha : {-0.5, 1.0, 6.0}) {
            const double b0 = -std::sqrt(0.5 * (alpha + 2.0) / (alpha + 1.0));
            const double c = std::sqrt(2.0 * (alpha + 2.0) * (alpha + 1.0));
            const Function g = [&](double x) {
                const double t = (x * x - 2 * (alpha + 2) * x + (alpha + 2) * (alpha + 1)) / c;
                return t * t * std::exp(b0 * t);
            };
            double prev = 1e300;
            for (int n : {25, 50, 100, 200}) {
                const double e = std::abs(gauss_sum(g, {}, *gauss_rule(WeightKind::Gamma, alpha, 2 * n)) -
                                          gauss_sum(g, {}, *gauss_rule(WeightKind::Gamma, alpha, n)));
                CHECK(e <= std::max(prev, 1e-13));
                prev = e;
            }
        }
    }

    TEST_CASE("root residuals") {
        const Function g = [](double b) { return b * b * std::exp(b * b) - 1.0; };
        CHECK(std::abs(g(find_root(g, -1.0, -0.5, 1e-15))) <= 1e-10);
        const Function h = [](double x) { return std::cos(x) - x; };
        CHECK(std::abs(h(find_root(h, 0.0, 1.0, 1e-14))) <= 1e-12);
    }
}
