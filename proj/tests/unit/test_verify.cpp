#include <doctest.h>

#include <cmath>
#include <memory>

#include "divbound/error.hpp"
#include "divbound/orthopoly.hpp"
#include "divbound/tilt.hpp"
#include "divbound/verify.hpp"

using namespace divbound;
using namespace divbound::verify;
using doctest::Approx;

namespace {

// Table of the condition integral, alpha = -1/2 .. 6.
struct PublishedRow {
    double alpha, beta0, integral;
};
constexpr PublishedRow kTable[] = {
    {-0.5, -1.2247, 0.95407}, {0.0, -1.0, 0.63113},    {0.5, -0.9129, 0.55406}, {1.0, -0.8660, 0.52046},
    {1.5, -0.8367, 0.50180},  {2.0, -0.8165, 0.48997}, {2.5, -0.8018, 0.48181}, {3.0, -0.7906, 0.47584},
    {3.5, -0.7817, 0.47128},  {4.0, -0.7746, 0.46769}, {4.5, -0.7687, 0.46478}, {5.0, -0.7638, 0.46238},
    {5.5, -0.7596, 0.46037},  {6.0, -0.7559, 0.45865},
};

DistributionSpec gamma_grid(double alpha, double scale) {
    // alpha >= 1 keeps the density smooth at 0 so the trapezoid rule is accurate.
    std::vector<double> x, v;
    for (int i = 0; i <= 20000; ++i) {
        const double t = scale * i / 250.0;
        x.push_back(t);
        v.push_back(t == 0.0 ? 0.0
                             : std::exp(alpha * std::log(t / scale) - t / scale - std::lgamma(alpha + 1.0)) / scale);
    }
    return DistributionSpec::grid(x, v, 1e-6);
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("constants") {
        const double b0 = compute_beta0();
        CHECK(b0 == Approx(-0.75309).epsilon(5e-6 / 0.75309));
        CHECK(std::abs(b0 * b0 * std::exp(b0 * b0) - 1.0) < 1e-10);
        CHECK(beta0_local_max(b0) == Approx(0.9545).epsilon(5e-5 / 0.9545));
        const double a0 = compute_alpha0();
        CHECK(a0 == Approx(6.4466).epsilon(5e-4 / 6.4466));
        CHECK(a0 < 6.5);
        CHECK(beta0_of_alpha(a0) == Approx(b0).epsilon(1e-8));
    }

    TEST_CASE("condition table") {
        const auto rows = condition_table();
        REQUIRE(rows.size() == 14);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CAPTURE(rows[i].alpha);
            CHECK(rows[i].alpha == kTable[i].alpha);
            CHECK(std::abs(rows[i].beta0_of_alpha - kTable[i].beta0) < 1e-3);
            CHECK(std::abs(rows[i].integral - kTable[i].integral) < 1e-3);
            CHECK(rows[i].passes);
        }
    }

    TEST_CASE("large alpha pointwise check") {
        CHECK(large_alpha_pointwise_check(7.0));
        CHECK(large_alpha_pointwise_check(compute_alpha0()));
        CHECK_FALSE(large_alpha_pointwise_check(0.0));
        // 6.4466 is alpha0 rounded down in the fourth decimal, so it sits a
        // hair below the threshold.
        const auto c = large_alpha_pointwise(6.4466);
        CHECK(c.min_value < compute_beta0());
        CHECK(c.min_value == Approx(compute_beta0()).epsilon(1e-5));
        CHECK_FALSE(c.grid_holds);
        CHECK(c.grid_max == Approx(1.0).epsilon(1e-5));
    }

    TEST_CASE("counterexample") {
        const auto c = reproduce_counterexample();
        CHECK(c.beta == Approx(-1.83125).epsilon(1e-3 / 1.83125));
        CHECK(c.divergence == Approx(3.3195).epsilon(1e-3 / 3.3195));
        CHECK(c.conjectured_bound == 4.5);
        CHECK(c.violated);
        CHECK(c.margin < -1.0);
        CHECK(c.beta_delta < 1e-4);
        CHECK(c.divergence_delta < 1e-4);
    }

    TEST_CASE("cube moments") {
        for (double a : {-0.5, 0.0, 1.0, 2.5}) CHECK(cube_moment(0, a) == Approx(1.0));
        CHECK(cube_moment(1, 0.0) == Approx(2.0).epsilon(1e-12));
        CHECK(cube_moment(2, -0.5) == Approx(14.6969384566990686).epsilon(1e-10));
        CHECK(cube_moment(3, 1.0) == Approx(34.0).epsilon(1e-10));
        CHECK(cube_moment(5, 6.0) == Approx(308.548564168132940).epsilon(1e-10));
    }

    TEST_CASE("audit: poisson") {
        std::vector<long> k;
        std::vector<double> p;
        double s = 0.0;
        for (int i = 0; i <= 30; ++i) {
            k.push_back(i);
            p.push_back(std::exp(-0.5 + i * std::log(0.5) - std::lgamma(i + 1.0)));
            s += p.back();
        }
        for (double& v : p) v /= s;
        const auto r = audit_bound(DistributionSpec::pmf(k, p),
                                   AnalyticTarget{expfam::AnalyticFamily::poisson(), 1.0});
        CHECK(r.divergence == Approx(0.153426).epsilon(1e-6));
        CHECK(r.bound == Approx(0.125));
        CHECK(r.margin == Approx(0.0284264).epsilon(1e-5));
        CHECK(r.satisfied);
        CHECK(r.proven);
        CHECK(r.target == "poisson:1");
    }

    TEST_CASE("audit: base law against its own target") {
        const auto x = gamma_grid(2.0, 1.0);
        const auto r = audit_bound(x, LaguerreTarget{2.0, 2});
        CHECK(std::abs(r.divergence) < 1e-6);
        CHECK(std::abs(r.moment_value) < 1e-5);
        CHECK(r.bound < 1e-10);
        CHECK(r.satisfied);
    }

    TEST_CASE("audit: counterexample member") {
        auto fam = std::make_shared<tilt::TiltedFamily>(tilt::Base::gamma(-0.5), orthopoly::laguerre_statistic(3, -0.5));
        const auto p = fam->project_to_mean(-3.0);
        const auto r = audit_bound(DistributionSpec::tilted(fam, p.beta), LaguerreTarget{-0.5, 3});
        CHECK(r.moment_value == Approx(-3.0).epsilon(1e-9));
        CHECK(r.divergence == Approx(p.divergence).epsilon(1e-8));
        CHECK(r.bound == Approx(4.5).epsilon(1e-9));
        CHECK_FALSE(r.satisfied);
        CHECK(r.applicable);
        CHECK_FALSE(r.proven);
    }

    TEST_CASE("audit: support mismatch") {
        std::vector<double> x, v;
        for (int i = -2000; i <= 2000; ++i) {
            x.push_back(i / 200.0);
            v.push_back(std::exp(-0.5 * x.back() * x.back()) / std::sqrt(2 * M_PI));
        }
        const auto normal = DistributionSpec::grid(x, v);
        CHECK_THROWS_AS(audit_bound(normal, LaguerreTarget{0.0, 2}), DomainError);
        CHECK_THROWS_AS(audit_bound(normal, AnalyticTarget{expfam::AnalyticFamily::poisson(), 1.0}), DomainError);
        const auto r = audit_bound(normal, HermiteTarget{4});
        CHECK(std::abs(r.divergence) < 1e-10);
        CHECK(r.satisfied);
    }

    TEST_CASE("infinite divergence satisfies finite bounds") {
        CHECK(bound_satisfied(kInfiniteDivergence, 3.0));
        CHECK(bound_satisfied(1.0, 1.0 + 0.5e-9));
        CHECK_FALSE(bound_satisfied(1.0, 1.0 + 2e-9));
    }

    TEST_CASE("chi-square corollary") {
        // chi2(1) itself: 2 * Gamma(1/2, 1).
        auto base = std::make_shared<tilt::TiltedFamily>(tilt::Base::gamma(-0.5), orthopoly::laguerre_statistic(2, -0.5));
        auto r = chi_square_corollary_check(DistributionSpec::tilted(base, 0.0, 2.0));
        CHECK(std::abs(r.divergence) < 1e-12);
        CHECK(std::abs(r.bound) < 1e-12);
        CHECK(r.satisfied);

        // Tilted degree-2 member, rescaled so that E[X] = 1.
        const double beta = -0.2;
        const auto y = DistributionSpec::tilted(base, beta, 1.0);
        const auto x = DistributionSpec::tilted(base, beta, 1.0 / y.mean());
        r = chi_square_corollary_check(x);
        CHECK(r.satisfied);
        CHECK(r.margin > 0.0);
        for (const auto& [name, value] : r.diagnostics)
            if (name == "scaling_mismatch") CHECK(value < 1e-9);

        CHECK_THROWS_AS(chi_square_corollary_check(DistributionSpec::tilted(base, beta, 3.0)), DomainError);
    }

    TEST_CASE("exponential example") {
        // Exp(1) has Var = 1: bound 0.
        auto fam = std::make_shared<tilt::TiltedFamily>(tilt::Base::gamma(0.0), orthopoly::laguerre_statistic(2, 0.0));
        auto r = exponential_corollary_check(DistributionSpec::tilted(fam, 0.0));
        CHECK(r.bound == Approx(0.0).scale(1.0));
        CHECK(r.satisfied);
        const auto y = DistributionSpec::tilted(fam, -0.4);
        r = exponential_corollary_check(DistributionSpec::tilted(fam, -0.4, 1.0 / y.mean()));
        CHECK(r.bound > 0.0);
        CHECK(r.satisfied);
    }

    TEST_CASE("target descriptions") {
        CHECK(describe(LaguerreTarget{-0.5, 3}) == "gamma:-0.5:laguerre:3");
        CHECK(describe(HermiteTarget{4}) == "gaussian:hermite:4");
        CHECK(describe(AnalyticTarget{expfam::AnalyticFamily::binomial(10), 3.0}) == "binomial:10:0.3");
    }
}
