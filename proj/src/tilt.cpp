#include "divbound/tilt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "divbound/error.hpp"
#include "divbound/kernels.hpp"

namespace divbound::tilt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

bool close(double a, double b, double abs_tol, double rel_tol) {
    return std::abs(a - b) <= std::max(abs_tol, rel_tol * std::max(std::abs(a), std::abs(b)));
}

TiltMoments from_sums(const kernels::TiltSums& s) {
    TiltMoments m;
    m.log_z = s.shift + std::log(s.s0);
    m.mean = s.s1 / s.s0;
    m.second = s.s2 / s.s0;
    return m;
}

}  // namespace

Base Base::gamma(double alpha) {
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("Gamma base requires alpha > -1");
    return {BaseKind::Gamma, alpha};
}

double Base::support_lo() const { return kind == BaseKind::Gamma ? 0.0 : -kInf; }

double Base::log_density(double x) const {
    if (kind == BaseKind::Gaussian) return -0.5 * x * x - kLogSqrt2Pi;
    if (!(x > 0.0)) return -kInf;
    return alpha * std::log(x) - x - std::lgamma(alpha + 1.0);
}

numerics::QuadratureScheme Base::scheme(int nodes) const {
    return kind == BaseKind::Gamma ? numerics::QuadratureScheme::gamma(alpha, nodes)
                                   : numerics::QuadratureScheme::gaussian(nodes);
}

std::string Base::describe() const {
    std::ostringstream os;
    if (kind == BaseKind::Gamma) os << "Gamma(" << alpha + 1.0 << ",1)";
    else os << "N(0,1)";
    return os.str();
}

bool Interval::contains(double b) const {
    if (std::isnan(b)) return false;
    const bool above = lo_closed ? b >= lo : b > lo;
    const bool below = hi_closed ? b <= hi : b < hi;
    return above && below;
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(12);
    os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
    return os.str();
}

Interval beta_domain_of(const Base& base, const PolynomialStatistic& statistic) {
    const int d = statistic.degree();
    if (d < 1 || statistic.leading() == 0.0) throw DomainError("malformed statistic: degree must be at least 1");
    const double c = statistic.leading();

    if (base.kind == BaseKind::Gamma) {
        // exp(b c x^d - x) integrable at +inf.
        if (d == 1) return c > 0 ? Interval{-kInf, 1.0 / c, false, false} : Interval{1.0 / c, kInf, false, false};
        return c > 0 ? Interval{-kInf, 0.0, false, true} : Interval{0.0, kInf, true, false};
    }
    // exp(b c x^d - x^2/2) integrable at both tails.
    if (d == 1) return {-kInf, kInf, false, false};
    if (d == 2) return c > 0 ? Interval{-kInf, 0.5 / c, false, false} : Interval{0.5 / c, kInf, false, false};
    if (d % 2 == 1) return {0.0, 0.0, true, true};
    return c > 0 ? Interval{-kInf, 0.0, false, true} : Interval{0.0, kInf, true, false};
}

TiltedFamily::TiltedFamily(Base base, PolynomialStatistic statistic, int nodes)
    : base_(base),
      statistic_(std::move(statistic)),
      domain_(beta_domain_of(base_, statistic_)),
      scheme_(base_.scheme(nodes)) {
    const auto kind = base_.kind == BaseKind::Gamma ? numerics::WeightKind::Gamma : numerics::WeightKind::Gaussian;
    coarse_ = numerics::gauss_rule(kind, base_.alpha, nodes);
    fine_ = numerics::gauss_rule(kind, base_.alpha, 2 * nodes);
    t_coarse_.resize(coarse_->nodes.size());
    t_fine_.resize(fine_->nodes.size());
    statistic_.evaluate(coarse_->nodes, t_coarse_);
    statistic_.evaluate(fine_->nodes, t_fine_);
}

void TiltedFamily::require_in_domain(double beta) const {
    if (!domain_.contains(beta)) {
        std::ostringstream os;
        os.precision(12);
        os << "beta = " << beta << " outside the natural domain " << domain_.str();
        throw DomainError(os.str());
    }
}

TiltMoments TiltedFamily::moments(double beta) const {
    require_in_domain(beta);
    const TiltMoments coarse = from_sums(kernels::tilt_sums(t_coarse_, coarse_->log_weights, beta));
    const TiltMoments fine = from_sums(kernels::tilt_sums(t_fine_, fine_->log_weights, beta));
    const double at = scheme_.abs_tol;
    const double rt = scheme_.rel_tol;
    if (std::isfinite(fine.log_z) && close(coarse.log_z, fine.log_z, at, rt) && close(coarse.mean, fine.mean, at, rt) &&
        close(coarse.second, fine.second, at, rt))
        return fine;

    // Gauss rule not converged: adaptive route, normalized by the fine estimate.
    const double c = std::isfinite(fine.log_z) ? fine.log_z : 0.0;
    const numerics::Function h = [&](double x) { return beta * statistic_(x) - c; };
    const numerics::Function one = [](double) { return 1.0; };
    const numerics::Function t1 = [&](double x) { return statistic_(x); };
    const numerics::Function t2 = [&](double x) {
        const double t = statistic_(x);
        return t * t;
    };
    const double s0 = numerics::integrate_adaptive(one, h, scheme_).value;
    const double s1 = numerics::integrate_adaptive(t1, h, scheme_).value;
    const double s2 = numerics::integrate_adaptive(t2, h, scheme_).value;
    if (!(s0 > 0.0) || !std::isfinite(s0)) throw EvaluationError("tilted partition function is not positive");
    TiltMoments m;
    m.log_z = c + std::log(s0);
    m.mean = s1 / s0;
    m.second = s2 / s0;
    m.adaptive = true;
    return m;
}

double TiltedFamily::partition(double beta, int order) const {
    if (order < 0 || order > 2) throw DomainError("partition: derivative order must be 0, 1 or 2");
    const TiltMoments m = moments(beta);
    const double z = std::exp(m.log_z);
    if (order == 0) return z;
    return z * (order == 1 ? m.mean : m.second);
}

double TiltedFamily::tilted_variance(double beta) const {
    const TiltMoments m = moments(beta);
    return std::max(0.0, m.second - m.mean * m.mean);
}

double TiltedFamily::divergence_from_base(double beta) const {
    const TiltMoments m = moments(beta);
    const double d = beta * m.mean - m.log_z;
    return (d < 0.0 && d > -1e-12) ? 0.0 : d;
}

double TiltedFamily::expect(double beta, const numerics::Function& f) const {
    const double lz = log_partition(beta);
    const numerics::Function h = [&](double x) { return beta * statistic_(x) - lz; };
    return numerics::integrate_weighted_exp(f, h, scheme_).value;
}

double TiltedFamily::log_density(double beta, double x) const {
    return beta * statistic_(x) - log_partition(beta) + base_.log_density(x);
}

TiltedFamily::MeanRange TiltedFamily::attainable_mean_range() const {
    const auto [tmin, tmax] = statistic_.range_over(base_.support_lo(), kInf);
    MeanRange r{tmin, tmax, false, false};
    if (domain_.lo_closed) {
        r.lo = tilted_mean(domain_.lo);
        r.lo_attained = true;
    }
    if (domain_.hi_closed) {
        r.hi = tilted_mean(domain_.hi);
        r.hi_attained = true;
    }
    return r;
}

Projection TiltedFamily::project_to_mean(double target, double tol) const {
    const MeanRange range = attainable_mean_range();
    const bool above_lo = range.lo_attained ? target >= range.lo - tol : target > range.lo;
    const bool below_hi = range.hi_attained ? target <= range.hi + tol : target < range.hi;
    if (!above_lo || !below_hi || !std::isfinite(target)) {
        std::ostringstream os;
        os.precision(12);
        os << "mean " << target << " is not attainable; attainable interval is " << (range.lo_attained ? '[' : '(')
           << range.lo << ", " << range.hi << (range.hi_attained ? ']' : ')');
        throw RangeError(os.str(), range.lo, range.hi);
    }

    const double start = domain_.contains(0.0) ? 0.0 : (std::isfinite(domain_.lo) ? domain_.lo + 1.0 : domain_.hi - 1.0);
    const double m0 = tilted_mean(start);
    if (std::abs(m0 - target) <= tol) return {start, divergence_from_base(start)};

    // Step away from the start, doubling, or halving the gap to a finite
    // open boundary, until the target mean is enclosed.
    const bool go_down = target < m0;
    const double edge = go_down ? domain_.lo : domain_.hi;
    const bool edge_closed = go_down ? domain_.lo_closed : domain_.hi_closed;
    double inner = start;
    double step = 1.0;
    double outer = start;
    bool enclosed = false;
    for (int it = 0; it < 200; ++it) {
        double cand = go_down ? inner - step : inner + step;
        if (std::isfinite(edge) && (go_down ? cand <= edge : cand >= edge))
            cand = edge_closed ? edge : 0.5 * (inner + edge);
        const double mc = tilted_mean(cand);
        if (go_down ? mc <= target : mc >= target) {
            outer = cand;
            enclosed = true;
            break;
        }
        inner = cand;
        step *= 2.0;
        if (edge_closed && cand == edge) break;
    }
    if (!enclosed) {
        std::ostringstream os;
        os << "could not bracket the natural parameter for mean " << target;
        throw RangeError(os.str(), range.lo, range.hi);
    }
    const double lo = std::min(inner, outer);
    const double hi = std::max(inner, outer);
    const double beta = numerics::find_root([&](double b) { return tilted_mean(b) - target; }, lo, hi, tol);
    return {beta, divergence_from_base(beta)};
}

}  // namespace divbound::tilt
