#include "divbound/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "divbound/error.hpp"
#include "divbound/quadrature.hpp"

namespace divbound::expfam {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double lchoose(double n, double k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

double logit(double p) { return std::log(p) - std::log1p(-p); }

}  // namespace

AnalyticFamily AnalyticFamily::gaussian_mean() { return {FamilyKind::GaussianMean, 0.0, 0.0}; }

AnalyticFamily AnalyticFamily::gaussian_second_moment() { return {FamilyKind::GaussianSecondMoment, 0.0, 0.0}; }

AnalyticFamily AnalyticFamily::gamma(double alpha) {
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("Gamma family requires alpha > -1");
    return {FamilyKind::Gamma, alpha, 0.0};
}

AnalyticFamily AnalyticFamily::poisson() { return {FamilyKind::Poisson, 0.0, 0.0}; }

AnalyticFamily AnalyticFamily::binomial(int n, double base_p) {
    if (n < 1) throw DomainError("binomial family requires n >= 1");
    if (!(base_p > 0.0 && base_p < 1.0)) throw DomainError("binomial base probability must lie in (0, 1)");
    return {FamilyKind::Binomial, static_cast<double>(n), base_p};
}

AnalyticFamily AnalyticFamily::negative_binomial(double r, double base_p) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("negative binomial family requires r > 0");
    if (!(base_p > 0.0 && base_p < 1.0)) throw DomainError("negative binomial base probability must lie in (0, 1)");
    return {FamilyKind::NegativeBinomial, r, base_p};
}

AnalyticFamily AnalyticFamily::inverse_gaussian(double lambda, double base_mu) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("inverse Gaussian family requires lambda > 0");
    if (!(base_mu > 0.0) || !std::isfinite(base_mu)) throw DomainError("inverse Gaussian base mean must be positive");
    return {FamilyKind::InverseGaussian, lambda, base_mu};
}

std::string AnalyticFamily::name() const {
    switch (kind_) {
        case FamilyKind::GaussianMean: return "gaussian-mean";
        case FamilyKind::GaussianSecondMoment: return "gaussian-second-moment";
        case FamilyKind::Gamma: return "gamma(alpha=" + fmt(p1_) + ")";
        case FamilyKind::Poisson: return "poisson";
        case FamilyKind::Binomial: return "binomial(n=" + fmt(p1_) + ",p0=" + fmt(p2_) + ")";
        case FamilyKind::NegativeBinomial: return "negbin(r=" + fmt(p1_) + ",p0=" + fmt(p2_) + ")";
        case FamilyKind::InverseGaussian: return "invgauss(lambda=" + fmt(p1_) + ",mu0=" + fmt(p2_) + ")";
    }
    return "unknown";
}

bool AnalyticFamily::is_discrete() const noexcept {
    return kind_ == FamilyKind::Poisson || kind_ == FamilyKind::Binomial || kind_ == FamilyKind::NegativeBinomial;
}

OpenInterval AnalyticFamily::natural_domain() const {
    switch (kind_) {
        case FamilyKind::GaussianSecondMoment: return {-kInf, 0.5};
        case FamilyKind::Gamma: return {-kInf, 1.0};
        case FamilyKind::NegativeBinomial: return {-kInf, -std::log(p2_)};
        case FamilyKind::InverseGaussian: return {-kInf, p1_ / (2.0 * p2_ * p2_)};
        default: return {-kInf, kInf};
    }
}

OpenInterval AnalyticFamily::mean_domain() const {
    switch (kind_) {
        case FamilyKind::GaussianMean: return {-kInf, kInf};
        case FamilyKind::Binomial: return {0.0, p1_};
        default: return {0.0, kInf};
    }
}

void AnalyticFamily::require_natural(double beta) const {
    const OpenInterval d = natural_domain();
    if (!d.contains(beta))
        throw DomainError(name() + ": natural parameter " + fmt(beta) + " outside (" + fmt(d.lo) + ", " + fmt(d.hi) + ")");
}

void AnalyticFamily::require_mean(double mu) const {
    const OpenInterval d = mean_domain();
    if (!d.contains(mu))
        throw DomainError(name() + ": mean " + fmt(mu) + " outside (" + fmt(d.lo) + ", " + fmt(d.hi) + ")");
}

double AnalyticFamily::log_partition(double beta) const {
    require_natural(beta);
    switch (kind_) {
        case FamilyKind::GaussianMean: return 0.5 * beta * beta;
        case FamilyKind::GaussianSecondMoment: return -0.5 * std::log1p(-2.0 * beta);
        case FamilyKind::Gamma: return -(p1_ + 1.0) * std::log1p(-beta);
        case FamilyKind::Poisson: return std::expm1(beta);
        case FamilyKind::Binomial: return p1_ * std::log1p(p2_ * std::expm1(beta));
        case FamilyKind::NegativeBinomial: return p1_ * (std::log1p(-p2_) - std::log1p(-p2_ * std::exp(beta)));
        case FamilyKind::InverseGaussian: return p1_ / p2_ - p1_ / mean_of(beta);
    }
    return 0.0;
}

double AnalyticFamily::mean_of(double beta) const {
    require_natural(beta);
    switch (kind_) {
        case FamilyKind::GaussianMean: return beta;
        case FamilyKind::GaussianSecondMoment: return 1.0 / (1.0 - 2.0 * beta);
        case FamilyKind::Gamma: return (p1_ + 1.0) / (1.0 - beta);
        case FamilyKind::Poisson: return std::exp(beta);
        case FamilyKind::Binomial: {
            const double e = p2_ * std::exp(beta);
            return p1_ * e / (1.0 - p2_ + e);
        }
        case FamilyKind::NegativeBinomial: {
            const double q = p2_ * std::exp(beta);
            return p1_ * q / (1.0 - q);
        }
        case FamilyKind::InverseGaussian: return 1.0 / std::sqrt(1.0 / (p2_ * p2_) - 2.0 * beta / p1_);
    }
    return 0.0;
}

double AnalyticFamily::natural_of(double mu) const {
    require_mean(mu);
    switch (kind_) {
        case FamilyKind::GaussianMean: return mu;
        case FamilyKind::GaussianSecondMoment: return 0.5 * (1.0 - 1.0 / mu);
        case FamilyKind::Gamma: return 1.0 - (p1_ + 1.0) / mu;
        case FamilyKind::Poisson: return std::log(mu);
        case FamilyKind::Binomial: return logit(mu / p1_) - logit(p2_);
        case FamilyKind::NegativeBinomial: return std::log(mu / (mu + p1_)) - std::log(p2_);
        case FamilyKind::InverseGaussian: return 0.5 * p1_ * (1.0 / (p2_ * p2_) - 1.0 / (mu * mu));
    }
    return 0.0;
}

double AnalyticFamily::variance_at_mean(double mu) const {
    require_mean(mu);
    switch (kind_) {
        case FamilyKind::GaussianMean: return 1.0;
        case FamilyKind::GaussianSecondMoment: return 2.0 * mu * mu;
        case FamilyKind::Gamma: return mu * mu / (p1_ + 1.0);
        case FamilyKind::Poisson: return mu;
        case FamilyKind::Binomial: return mu - mu * mu / p1_;
        case FamilyKind::NegativeBinomial: return mu * (mu + p1_) / p1_;
        case FamilyKind::InverseGaussian: return mu * mu * mu / p1_;
    }
    return 0.0;
}

VarianceProfile AnalyticFamily::variance_profile() const {
    switch (kind_) {
        case FamilyKind::GaussianMean: return {Monotonicity::Constant};
        case FamilyKind::Binomial: return {Monotonicity::Unimodal, 0.5 * p1_};
        default: return {Monotonicity::Increasing};
    }
}

double AnalyticFamily::log_density(double mu, double x) const {
    require_mean(mu);
    switch (kind_) {
        case FamilyKind::GaussianMean: return -0.5 * (x - mu) * (x - mu) - kLogSqrt2Pi;
        case FamilyKind::GaussianSecondMoment: return -0.5 * x * x / mu - 0.5 * std::log(mu) - kLogSqrt2Pi;
        case FamilyKind::Gamma: {
            if (!(x > 0.0)) return -kInf;
            const double k = p1_ + 1.0;
            const double theta = mu / k;
            return p1_ * std::log(x) - x / theta - std::lgamma(k) - k * std::log(theta);
        }
        case FamilyKind::Poisson:
            if (x < 0.0 || x != std::floor(x)) return -kInf;
            return x * std::log(mu) - mu - std::lgamma(x + 1.0);
        case FamilyKind::Binomial: {
            if (x < 0.0 || x > p1_ || x != std::floor(x)) return -kInf;
            const double p = mu / p1_;
            return lchoose(p1_, x) + x * std::log(p) + (p1_ - x) * std::log1p(-p);
        }
        case FamilyKind::NegativeBinomial: {
            if (x < 0.0 || x != std::floor(x)) return -kInf;
            const double q = mu / (mu + p1_);
            return std::lgamma(x + p1_) - std::lgamma(x + 1.0) - std::lgamma(p1_) + p1_ * std::log1p(-q) +
                   x * std::log(q);
        }
        case FamilyKind::InverseGaussian:
            if (!(x > 0.0)) return -kInf;
            return 0.5 * std::log(p1_ / (x * x * x)) - kLogSqrt2Pi - p1_ * (x - mu) * (x - mu) / (2.0 * mu * mu * x);
    }
    return -kInf;
}

Reference AnalyticFamily::reference(double mu) const {
    require_mean(mu);
    Reference r;
    r.kind = is_discrete() ? Reference::Kind::Discrete : Reference::Kind::Continuous;
    r.log_density = [fam = *this, mu](double x) { return fam.log_density(mu, x); };
    switch (kind_) {
        case FamilyKind::GaussianMean:
        case FamilyKind::GaussianSecondMoment: break;
        case FamilyKind::Binomial:
            r.support_lo = 0.0;
            r.support_hi = p1_;
            break;
        default: r.support_lo = 0.0; break;
    }
    r.name = name() + " mean " + fmt(mu);
    return r;
}

double divergence_mean_params(const AnalyticFamily& family, double mu, double nu) {
    const double bm = family.natural_of(mu);
    const double bn = family.natural_of(nu);
    if (mu == nu) return 0.0;
    const double d = (bm - bn) * mu - family.log_partition(bm) + family.log_partition(bn);
    return std::max(d, 0.0);
}

double divergence_closed_form(const AnalyticFamily& family, double mu, double nu) {
    const OpenInterval md = family.mean_domain();
    if (!md.contains(mu) || !md.contains(nu)) throw DomainError(family.name() + ": mean outside the mean domain");
    const double a = family.param1();
    switch (family.kind()) {
        case FamilyKind::GaussianMean: return 0.5 * (mu - nu) * (mu - nu);
        case FamilyKind::GaussianSecondMoment: {
            const double r = mu / nu;
            return 0.5 * (r - 1.0 - std::log(r));
        }
        case FamilyKind::Gamma: {
            const double r = mu / nu;
            return (a + 1.0) * (r - 1.0 - std::log(r));
        }
        case FamilyKind::Poisson: return mu * std::log(mu / nu) - mu + nu;
        case FamilyKind::Binomial: {
            const double p = mu / a;
            const double q = nu / a;
            return a * (p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q)));
        }
        case FamilyKind::NegativeBinomial: {
            const double p = mu / (mu + a);
            const double q = nu / (nu + a);
            return mu * std::log(p / q) + a * std::log((1.0 - p) / (1.0 - q));
        }
        case FamilyKind::InverseGaussian: return a * (mu - nu) * (mu - nu) / (2.0 * mu * nu * nu);
    }
    return 0.0;
}

double divergence_by_quadrature(const AnalyticFamily& family, double mu, double nu) {
    const OpenInterval md = family.mean_domain();
    if (!md.contains(mu) || !md.contains(nu)) throw DomainError(family.name() + ": mean outside the mean domain");
    const Reference ref = family.reference(nu);

    if (family.is_discrete()) {
        std::vector<long> support;
        std::vector<double> probs;
        const double hi = family.kind() == FamilyKind::Binomial ? family.param1() : 1e7;
        const double log_cut = std::log(1e-18);
        double mass = 0.0;
        for (long k = 0; k <= static_cast<long>(hi); ++k) {
            const double lp = family.log_density(mu, static_cast<double>(k));
            if (k > mu && lp < log_cut) break;
            support.push_back(k);
            probs.push_back(std::exp(lp));
            mass += probs.back();
        }
        for (auto& p : probs) p /= mass;
        return divergence_vs_density(DistributionSpec::pmf(std::move(support), std::move(probs), 1e-12), ref);
    }

    const numerics::Function log_ratio = [&](double x) { return family.log_density(mu, x) - ref.log_density(x); };
    // Expectations under the member itself, written as an affine image of the
    // quadrature weight so that no density ratio enters the Gauss sums.
    auto under_member = [&](const numerics::QuadratureScheme& scheme, double shift, double scale) {
        return numerics::integrate_weighted([&](double y) { return log_ratio(shift + scale * y); }, scheme).value;
    };
    switch (family.kind()) {
        case FamilyKind::GaussianMean:
            return under_member(numerics::QuadratureScheme::gaussian(numerics::kDefaultNodes), mu, 1.0);
        case FamilyKind::GaussianSecondMoment:
            return under_member(numerics::QuadratureScheme::gaussian(numerics::kDefaultNodes), 0.0, std::sqrt(mu));
        case FamilyKind::Gamma: {
            const double a = family.param1();
            return under_member(numerics::QuadratureScheme::gamma(a, numerics::kDefaultNodes), 0.0, mu / (a + 1.0));
        }
        default: {
            const numerics::Function f = [&](double x) {
                const double lp = family.log_density(mu, x);
                const double p = std::exp(lp);
                return p == 0.0 ? 0.0 : p * (lp - ref.log_density(x));
            };
            return numerics::integrate_interval(f, 0.0, kInf, 1e-13, 1e-10).value;
        }
    }
}

QuadraticBound quadratic_lower_bound(const AnalyticFamily& family, double mu, double nu) {
    // mu may sit on the boundary of the mean domain (e.g. a point mass at 0).
    const OpenInterval md = family.mean_domain();
    if (!(mu >= md.lo && mu <= md.hi)) throw DomainError(family.name() + ": mean " + fmt(mu) + " outside the mean domain");
    const double v = family.variance_at_mean(nu);
    QuadraticBound b{(mu - nu) * (mu - nu) / (2.0 * v), false, {}};
    const VarianceProfile prof = family.variance_profile();
    switch (prof.monotonicity) {
        case Monotonicity::Constant:
            b.applicable = true;
            b.reason = "variance function is constant";
            break;
        case Monotonicity::Increasing:
            b.applicable = mu <= nu;
            b.reason = b.applicable ? "variance function increasing and mean <= reference mean"
                                    : "variance function increasing but mean > reference mean";
            break;
        case Monotonicity::Decreasing:
            b.applicable = mu >= nu;
            b.reason = b.applicable ? "variance function decreasing and mean >= reference mean"
                                    : "variance function decreasing but mean < reference mean";
            break;
        case Monotonicity::Unimodal:
            b.applicable = (mu <= nu && nu <= prof.peak) || (mu >= nu && nu >= prof.peak);
            b.reason = b.applicable ? "mean and reference mean on the same side of the variance peak " + fmt(prof.peak)
                                    : "requires mean <= reference <= " + fmt(prof.peak) + " or mean >= reference >= " +
                                          fmt(prof.peak);
            break;
    }
    return b;
}

double intermediate_eta(const AnalyticFamily& family, double mu, double nu) {
    if (mu == nu) throw DomainError("intermediate_eta requires distinct means");
    const double d = divergence_mean_params(family, mu, nu);
    const double lo = std::min(mu, nu);
    const double hi = std::max(mu, nu);
    const double sq = 0.5 * (mu - nu) * (mu - nu);
    if (family.variance_profile().monotonicity == Monotonicity::Constant) return 0.5 * (lo + hi);

    const numerics::Function g = [&](double eta) { return sq / family.variance_at_mean(eta) - d; };
    const double tol = 1e-14 * std::max(1.0, d);
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0.0) != (ghi < 0.0)) return numerics::find_root(g, lo, hi, tol);

    // Non-monotone V: look for an interior sign change.
    constexpr int grid = 512;
    double best = lo;
    double best_abs = std::abs(glo);
    double xp = lo;
    double gp = glo;
    for (int i = 1; i <= grid; ++i) {
        const double xc = i == grid ? hi : lo + (hi - lo) * i / grid;
        const double gc = g(xc);
        if (std::abs(gc) < best_abs) {
            best_abs = std::abs(gc);
            best = xc;
        }
        if ((gp < 0.0) != (gc < 0.0)) return numerics::find_root(g, xp, xc, tol);
        xp = xc;
        gp = gc;
    }
    if (best_abs <= 1e-10 * std::max(1.0, d)) return best;
    std::ostringstream os;
    os.precision(12);
    os << family.name() << ": no intermediate point found for mu=" << mu << ", nu=" << nu
       << " (closest residual " << best_abs << ")";
    throw EvaluationError(os.str());
}

NaturalDivergence divergence_natural_params(const AnalyticFamily& family, double a, double b) {
    const double ma = family.mean_of(a);
    family.mean_of(b);
    if (a == b) return {0.0, a};
    const double d = std::max(0.0, (a - b) * ma - family.log_partition(a) + family.log_partition(b));
    const double sq = 0.5 * (a - b) * (a - b);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (family.variance_profile().monotonicity == Monotonicity::Constant) return {d, 0.5 * (lo + hi)};

    const numerics::Function g = [&](double gam) { return family.variance_at_mean(family.mean_of(gam)) * sq - d; };
    const double tol = 1e-14 * std::max(1.0, d);
    const double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return {d, lo};
    if (ghi == 0.0) return {d, hi};
    if ((glo < 0.0) != (ghi < 0.0)) return {d, numerics::find_root(g, lo, hi, tol)};
    constexpr int grid = 512;
    double xp = lo;
    double gp = glo;
    for (int i = 1; i <= grid; ++i) {
        const double xc = i == grid ? hi : lo + (hi - lo) * i / grid;
        const double gc = g(xc);
        if ((gp < 0.0) != (gc < 0.0)) return {d, numerics::find_root(g, xp, xc, tol)};
        xp = xc;
        gp = gc;
    }
    throw EvaluationError(family.name() + ": no intermediate natural parameter found");
}

}  // namespace divbound::expfam
