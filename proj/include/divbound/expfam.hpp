#pragma once

#include <string>

#include "divbound/distribution.hpp"

// Catalog of natural exponential families dQ_b/dQ_0 = exp(b x) / Z(b) with
// closed-form cumulant functions. Each family fixes a base member (b = 0):
//
//   GaussianMean           N(0,1), statistic x
//   GaussianSecondMoment   N(0,1), statistic x^2 (members N(0, m))
//   Gamma(alpha)           Gamma(alpha+1, 1), rate changes with b
//   Poisson                Po(1)
//   Binomial(n, p0)        bin(n, p0)
//   NegativeBinomial(r,p0) NB(r, p0), pmf C(k+r-1,k)(1-p)^r p^k
//   InverseGaussian(l,m0)  IG(m0, l)
namespace divbound::expfam {

enum class FamilyKind {
    GaussianMean,
    GaussianSecondMoment,
    Gamma,
    Poisson,
    Binomial,
    NegativeBinomial,
    InverseGaussian,
};

enum class Monotonicity { Constant, Increasing, Decreasing, Unimodal };

struct VarianceProfile {
    Monotonicity monotonicity;
    double peak = 0.0;  // location of the maximum when unimodal
};

struct OpenInterval {
    double lo;
    double hi;
    bool contains(double v) const { return v > lo && v < hi; }
};

class AnalyticFamily {
public:
    static AnalyticFamily gaussian_mean();
    static AnalyticFamily gaussian_second_moment();
    static AnalyticFamily gamma(double alpha);
    static AnalyticFamily poisson();
    static AnalyticFamily binomial(int n, double base_p = 0.5);
    static AnalyticFamily negative_binomial(double r, double base_p = 0.5);
    static AnalyticFamily inverse_gaussian(double lambda, double base_mu = 1.0);

    FamilyKind kind() const noexcept { return kind_; }
    std::string name() const;
    bool is_discrete() const noexcept;

    OpenInterval natural_domain() const;
    OpenInterval mean_domain() const;

    double log_partition(double beta) const;
    double mean_of(double beta) const;
    double natural_of(double mu) const;
    double variance_at_mean(double mu) const;
    VarianceProfile variance_profile() const;

    // Log density (or log pmf) of the member with mean mu.
    double log_density(double mu, double x) const;
    Reference reference(double mu) const;

    double param1() const noexcept { return p1_; }
    double param2() const noexcept { return p2_; }

private:
    AnalyticFamily(FamilyKind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}
    void require_natural(double beta) const;
    void require_mean(double mu) const;

    FamilyKind kind_;
    double p1_;  // alpha | n | r | lambda
    double p2_;  // base p | base mean
};

// D(Q^mu || Q^nu) through the cumulant function (Bregman form).
double divergence_mean_params(const AnalyticFamily& family, double mu, double nu);

// Textbook divergence formula for the two members; independent of the
// cumulant route.
double divergence_closed_form(const AnalyticFamily& family, double mu, double nu);

// Divergence by direct summation (discrete) or quadrature of p ln(p/q).
double divergence_by_quadrature(const AnalyticFamily& family, double mu, double nu);

struct QuadraticBound {
    double bound;
    bool applicable;
    std::string reason;
};

// (mu - nu)^2 / (2 V(nu)) with the region where it is a valid lower bound.
QuadraticBound quadratic_lower_bound(const AnalyticFamily& family, double mu, double nu);

// eta between mu and nu with D(Q^mu||Q^nu) = (mu - nu)^2 / (2 V(eta)).
double intermediate_eta(const AnalyticFamily& family, double mu, double nu);

struct NaturalDivergence {
    double value;
    double gamma_witness;
};

// D(Q_a || Q_b) and gamma between a and b with D = V(mu_gamma) (a - b)^2 / 2.
NaturalDivergence divergence_natural_params(const AnalyticFamily& family, double a, double b);

}  // namespace divbound::expfam
