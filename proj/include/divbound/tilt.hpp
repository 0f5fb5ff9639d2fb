#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "divbound/polynomial.hpp"
#include "divbound/quadrature.hpp"

// Exponentially tilted families dQ_b/dQ_0 = exp(b T(x)) / Z(b) with a
// polynomial statistic T over a Gamma(a+1, 1) or standard normal base.
namespace divbound::tilt {

enum class BaseKind { Gamma, Gaussian };

struct Base {
    BaseKind kind = BaseKind::Gamma;
    double alpha = 0.0;  // Gamma shape minus one

    static Base gamma(double alpha);
    static Base gaussian() { return {BaseKind::Gaussian, 0.0}; }

    double support_lo() const;
    double log_density(double x) const;
    numerics::QuadratureScheme scheme(int nodes) const;
    std::string describe() const;
};

// Interval of natural parameters. Bounds may be infinite; closed flags only
// matter for finite bounds.
struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double b) const;
    std::string str() const;
};

// Natural parameters with finite partition function, from the tail of
// exp(b T(x)) against the base density.
Interval beta_domain_of(const Base& base, const PolynomialStatistic& statistic);

struct TiltMoments {
    double log_z = 0.0;   // ln Z(b)
    double mean = 0.0;    // E_b[T]
    double second = 0.0;  // E_b[T^2]
    bool adaptive = false;
};

struct Projection {
    double beta;
    double divergence;
};

class TiltedFamily {
public:
    TiltedFamily(Base base, PolynomialStatistic statistic, int nodes = numerics::default_node_count());

    const Base& base() const noexcept { return base_; }
    const PolynomialStatistic& statistic() const noexcept { return statistic_; }
    const Interval& beta_domain() const noexcept { return domain_; }
    const numerics::QuadratureScheme& scheme() const noexcept { return scheme_; }
    TiltedFamily with_nodes(int nodes) const { return TiltedFamily(base_, statistic_, nodes); }

    TiltMoments moments(double beta) const;
    // Z(b), Z'(b) or Z''(b).
    double partition(double beta, int order) const;
    double log_partition(double beta) const { return moments(beta).log_z; }
    double tilted_mean(double beta) const { return moments(beta).mean; }
    double tilted_variance(double beta) const;
    // D(Q_b || Q_0) = b mu_b - ln Z(b).
    double divergence_from_base(double beta) const;
    // E_{Q_b}[f] by quadrature against the base weight.
    double expect(double beta, const numerics::Function& f) const;
    // log dQ_b/dx at x (base density included).
    double log_density(double beta, double x) const;

    // Closure of the attainable mean range {mu_b : b in domain}; the
    // bool flags tell whether each end is attained.
    struct MeanRange {
        double lo;
        double hi;
        bool lo_attained;
        bool hi_attained;
    };
    MeanRange attainable_mean_range() const;

    // Information projection of the base onto {E[T] = target}.
    Projection project_to_mean(double target, double tol = 1e-12) const;

private:
    void require_in_domain(double beta) const;

    Base base_;
    PolynomialStatistic statistic_;
    Interval domain_;
    numerics::QuadratureScheme scheme_;
    std::shared_ptr<const numerics::GaussRule> coarse_;
    std::shared_ptr<const numerics::GaussRule> fine_;
    std::vector<double> t_coarse_;
    std::vector<double> t_fine_;
};

}  // namespace divbound::tilt
