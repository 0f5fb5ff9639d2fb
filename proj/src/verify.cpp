#include "divbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "divbound/error.hpp"
#include "divbound/orthopoly.hpp"
#include "divbound/tilt.hpp"

namespace divbound::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

Reference gamma_reference(double alpha) {
    Reference r;
    r.kind = Reference::Kind::Continuous;
    r.support_lo = 0.0;
    r.log_density = [alpha](double x) {
        if (!(x > 0.0)) return -kInf;
        return alpha * std::log(x) - x - std::lgamma(alpha + 1.0);
    };
    r.name = "Gamma(" + fmt(alpha + 1.0) + ",1)";
    return r;
}

Reference normal_reference() {
    Reference r;
    r.kind = Reference::Kind::Continuous;
    r.log_density = [](double x) { return -0.5 * x * x - kLogSqrt2Pi; };
    r.name = "N(0,1)";
    return r;
}

Reference chi_square1_reference() {
    Reference r;
    r.kind = Reference::Kind::Continuous;
    r.support_lo = 0.0;
    r.log_density = [](double x) {
        if (!(x > 0.0)) return -kInf;
        return -0.5 * std::log(x) - 0.5 * x - kLogSqrt2Pi;
    };
    r.name = "chi2(1)";
    return r;
}

void finish(BoundReport& r) {
    r.margin = r.divergence - r.bound;
    r.satisfied = bound_satisfied(r.divergence, r.bound);
}

void require_continuous(const DistributionSpec& x, const std::string& target) {
    if (x.is_discrete()) throw DomainError("support mismatch: a pmf has atoms but " + target + " has a density");
}

}  // namespace

double compute_beta0() {
    return numerics::find_root([](double b) { return b * b * std::exp(b * b) - 1.0; }, -1.0, -0.5, 1e-15);
}

double beta0_local_max(double beta0) {
    const double x = -2.0 / beta0;
    return x * x * std::exp(beta0 * x);
}

double compute_alpha0() {
    const double b = compute_beta0();
    return 1.0 / (2.0 * b * b - 1.0) - 1.0;
}

double beta0_of_alpha(double alpha) { return orthopoly::laguerre2_extremum(alpha).min_value; }

TableRow check_condition_integral(double alpha, int nodes) {
    const double b0 = beta0_of_alpha(alpha);
    const PolynomialStatistic l2 = orthopoly::laguerre_statistic(2, alpha);
    const auto scheme = numerics::QuadratureScheme::gamma(alpha, nodes);
    const numerics::Integral in = numerics::integrate_weighted(
        [&](double x) {
            const double t = l2(x);
            return t * t * std::exp(b0 * t);
        },
        scheme);
    return {alpha, b0, in.value, in.value <= 1.0, in.error, in.adaptive};
}

std::vector<TableRow> condition_table(int nodes) {
    std::vector<TableRow> rows;
    for (int twice = -1; twice <= 12; ++twice) rows.push_back(check_condition_integral(0.5 * twice, nodes));
    return rows;
}

PointwiseCheck large_alpha_pointwise(double alpha) {
    const double b0 = compute_beta0();
    const auto ext = orthopoly::laguerre2_extremum(alpha);
    PointwiseCheck c{};
    c.min_value = ext.min_value;
    c.holds = ext.min_value >= b0 - 1e-12;

    // f(y) = y^2 exp(b0 y) along L2~ on a grid covering the bulk of Gamma(alpha+1,1)
    // and the minimizer alpha + 2.
    const double hi = 4.0 * (alpha + 1.0) + 40.0;
    constexpr int points = 10000;
    c.grid_max = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double x = hi * i / points;
        const double y = orthopoly::normalized_laguerre(2, alpha, x);
        c.grid_max = std::max(c.grid_max, y * y * std::exp(b0 * y));
    }
    c.grid_holds = c.grid_max <= 1.0 + 1e-12;
    return c;
}

bool large_alpha_pointwise_check(double alpha) {
    const PointwiseCheck c = large_alpha_pointwise(alpha);
    return c.holds && c.grid_holds;
}

Counterexample reproduce_counterexample(int nodes, bool with_stability) {
    constexpr double kAlpha = -0.5;
    constexpr double kTarget = -3.0;
    auto solve = [&](int n) {
        const tilt::TiltedFamily fam(tilt::Base::gamma(kAlpha), orthopoly::laguerre_statistic(3, kAlpha), n);
        return fam.project_to_mean(kTarget);
    };
    const tilt::Projection p = solve(nodes);
    Counterexample c{};
    c.beta = p.beta;
    c.divergence = p.divergence;
    c.conjectured_bound = 0.5 * kTarget * kTarget;
    c.margin = c.divergence - c.conjectured_bound;
    c.violated = c.margin < -kSlack;
    c.nodes = nodes;
    if (with_stability) {
        const tilt::Projection q = solve(2 * nodes);
        c.beta_delta = std::abs(q.beta - p.beta);
        c.divergence_delta = std::abs(q.divergence - p.divergence);
    }
    return c;
}

double cube_moment(int n, double alpha) {
    const PolynomialStatistic ln = orthopoly::laguerre_statistic(n, alpha);
    const int nodes = (3 * n + 1) / 2 + 10;
    const auto scheme = numerics::QuadratureScheme::gamma(alpha, nodes);
    return numerics::integrate_weighted(
               [&](double x) {
                   const double t = ln(x);
                   return t * t * t;
               },
               scheme)
        .value;
}

std::string describe(const Target& target) {
    return std::visit(overloaded{
                          [](const AnalyticTarget& t) {
                              const auto& f = t.family;
                              switch (f.kind()) {
                                  case expfam::FamilyKind::GaussianMean: return "gaussian:mean:" + fmt(t.nu);
                                  case expfam::FamilyKind::GaussianSecondMoment: return "gaussian:second:" + fmt(t.nu);
                                  case expfam::FamilyKind::Gamma:
                                      return "gamma:" + fmt(f.param1()) + ":mean:" + fmt(t.nu);
                                  case expfam::FamilyKind::Poisson: return "poisson:" + fmt(t.nu);
                                  case expfam::FamilyKind::Binomial:
                                      return "binomial:" + fmt(f.param1()) + ":" + fmt(t.nu / f.param1());
                                  case expfam::FamilyKind::NegativeBinomial:
                                      return "negbin:" + fmt(f.param1()) + ":" + fmt(t.nu / (t.nu + f.param1()));
                                  case expfam::FamilyKind::InverseGaussian:
                                      return "invgauss:" + fmt(t.nu) + ":" + fmt(f.param1());
                              }
                              return std::string("analytic");
                          },
                          [](const LaguerreTarget& t) {
                              return "gamma:" + fmt(t.alpha) + ":laguerre:" + std::to_string(t.order);
                          },
                          [](const HermiteTarget& t) { return "gaussian:hermite:" + std::to_string(t.order); },
                      },
                      target);
}

bool bound_satisfied(double divergence, double bound) {
    if (divergence == kInf) return std::isfinite(bound);
    return divergence - bound >= -kSlack;
}

BoundReport audit_bound(const DistributionSpec& x, const Target& target) {
    BoundReport r;
    r.target = describe(target);
    std::visit(
        overloaded{
            [&](const AnalyticTarget& t) {
                const Reference ref = t.family.reference(t.nu);
                if (t.family.is_discrete() != x.is_discrete())
                    throw DomainError("support mismatch: " + r.target +
                                      (t.family.is_discrete() ? " is discrete but X has a density"
                                                              : " has a density but X is discrete"));
                if (x.support_lo() < ref.support_lo || x.support_hi() > ref.support_hi)
                    throw DomainError("support mismatch: X puts mass outside the support of " + r.target);
                r.moment_value = x.mean();
                const expfam::QuadraticBound qb = expfam::quadratic_lower_bound(t.family, r.moment_value, t.nu);
                r.bound = qb.bound;
                r.applicable = qb.applicable;
                r.proven = qb.applicable;
                r.reason = qb.reason;
                r.divergence = divergence_vs_density(x, ref);
                r.diagnostics.emplace_back("variance_at_reference", t.family.variance_at_mean(t.nu));
            },
            [&](const LaguerreTarget& t) {
                require_continuous(x, r.target);
                if (t.order < 1) throw DomainError("Laguerre target order must be at least 1");
                if (x.support_lo() < 0.0)
                    throw DomainError("support mismatch: X puts mass on negative values but " + r.target +
                                      " lives on [0, inf)");
                const PolynomialStatistic stat = orthopoly::laguerre_statistic(t.order, t.alpha);
                r.moment_value = x.expect([&](double v) { return stat(v); });
                r.bound = 0.5 * r.moment_value * r.moment_value;
                r.applicable = r.moment_value <= 0.0;
                if (!r.applicable) {
                    r.reason = "moment is positive; the bound only concerns non-positive moments";
                } else if (t.order == 1) {
                    r.proven = true;
                    r.reason = "variance-function bound for the Gamma family";
                } else if (t.order == 2) {
                    const bool half_integer = std::abs(2.0 * t.alpha - std::round(2.0 * t.alpha)) < 1e-12;
                    r.proven = half_integer || t.alpha >= compute_alpha0();
                    if (half_integer) r.reason = "degree-2 bound proven for half-integer alpha";
                    else if (r.proven) r.reason = "degree-2 bound proven for alpha >= alpha0";
                    else r.reason = "degree-2 bound conjectured for this alpha";
                } else {
                    r.reason = "degree >= 3: inequality known to fail in general";
                }
                r.divergence = divergence_vs_density(x, gamma_reference(t.alpha));
            },
            [&](const HermiteTarget& t) {
                require_continuous(x, r.target);
                if (t.order < 1) throw DomainError("Hermite target order must be at least 1");
                const PolynomialStatistic stat = orthopoly::hermite_statistic(t.order);
                r.moment_value = x.expect([&](double v) { return stat(v); });
                r.bound = 0.5 * r.moment_value * r.moment_value;
                r.applicable = r.moment_value <= 0.0 && t.order % 2 == 0;
                r.proven = r.applicable && (t.order == 2 || t.order == 4);
                if (t.order % 2 == 1) r.reason = "odd Hermite order: no bound claimed";
                else if (!r.applicable) r.reason = "moment is positive; the bound only concerns non-positive moments";
                else if (r.proven) r.reason = "Hermite bound proven for orders 2 and 4";
                else r.reason = "order >= 6: inequality known to fail in general";
                r.divergence = divergence_vs_density(x, normal_reference());
            },
        },
        target);
    finish(r);
    return r;
}

BoundReport chi_square_corollary_check(const DistributionSpec& x) {
    require_continuous(x, "chi2(1)");
    if (x.support_lo() < 0.0) throw DomainError("chi-square check needs support in [0, inf)");
    const double mean = x.mean();
    if (std::abs(mean - 1.0) > 1e-8) throw DomainError("chi-square check needs E[X] = 1, got " + fmt(mean));
    const double var = x.variance();
    if (var > 2.0 + 1e-12) throw DomainError("chi-square check needs Var(X) <= 2, got " + fmt(var));

    BoundReport r;
    r.target = "chi2:1";
    r.bound = (var - 2.0) * (var - 2.0) / 48.0;
    r.applicable = true;
    r.proven = true;
    r.reason = "E[X] = 1 and Var(X) <= 2";
    r.divergence = divergence_vs_density(x, chi_square1_reference());

    // Same quantities through X/2 against Gamma(1/2, 1).
    const DistributionSpec half = x.scaled(0.5);
    const PolynomialStatistic l2 = orthopoly::laguerre_statistic(2, -0.5);
    r.moment_value = half.expect([&](double v) { return l2(v); });
    const double d_half = divergence_vs_density(half, gamma_reference(-0.5));
    r.diagnostics.emplace_back("variance", var);
    r.diagnostics.emplace_back("scaled_divergence", d_half);
    r.diagnostics.emplace_back("scaling_mismatch", std::abs(d_half - r.divergence));
    r.diagnostics.emplace_back("laguerre_bound_mismatch", std::abs(0.5 * r.moment_value * r.moment_value - r.bound));
    finish(r);
    return r;
}

BoundReport exponential_corollary_check(const DistributionSpec& x) {
    require_continuous(x, "Exp(1)");
    if (x.support_lo() < 0.0) throw DomainError("exponential check needs support in [0, inf)");
    const double mean = x.mean();
    if (std::abs(mean - 1.0) > 1e-8) throw DomainError("exponential check needs E[X] = 1, got " + fmt(mean));
    const double var = x.variance();
    if (var > 1.0 + 1e-12) throw DomainError("exponential check needs Var(X) <= 1, got " + fmt(var));

    BoundReport r;
    r.target = "gamma:0:laguerre:2";
    r.bound = (var - 1.0) * (var - 1.0) / 8.0;
    r.applicable = true;
    r.proven = true;
    r.reason = "E[X] = 1 and Var(X) <= 1";
    const PolynomialStatistic l2 = orthopoly::laguerre_statistic(2, 0.0);
    r.moment_value = x.expect([&](double v) { return l2(v); });
    r.divergence = divergence_vs_density(x, gamma_reference(0.0));
    r.diagnostics.emplace_back("variance", var);
    finish(r);
    return r;
}

}  // namespace divbound::verify
