#pragma once

#include <optional>

#include "divbound/polynomial.hpp"
#include "divbound/rational.hpp"

// Laguerre and probabilists' Hermite polynomials.
//
// L_n^a is the generalized Laguerre polynomial (orthogonal under the
// Gamma(a+1, 1) law); the normalized form (-1)^n L_n^a / C(n+a, n)^(1/2) is
// orthonormal with a positive leading coefficient. He_n is orthogonal under
// the standard normal; He_n / sqrt(n!) is orthonormal.
namespace divbound::orthopoly {

// Generalized binomial C(n + a, n) via log-gamma; valid for a > -1.
double generalized_binomial(int n, double alpha);

double laguerre(int n, double alpha, double x);
double normalized_laguerre(int n, double alpha, double x);

struct Extremum {
    double argmin;
    double min_value;
};

// Closed-form minimum of the normalized degree-2 Laguerre polynomial.
Extremum laguerre2_extremum(double alpha);

double hermite_prob(int n, double x);
double normalized_hermite(int n, double x);

struct BridgeSides {
    double lhs;  // He_{2n}(x)
    double rhs;  // (-2)^n n! L_n^{-1/2}(x^2 / 2)
};

BridgeSides hermite_laguerre_bridge(int n, double x);

// Exact coefficient lists built by running the three-term recurrence in
// rational arithmetic.
ExactPolynomial laguerre_exact(int n, const Rational& alpha);
ExactPolynomial hermite_exact(int n);

// alpha as a rational when its denominator is at most 8 (covers half-integers).
std::optional<Rational> small_rational(double alpha);

// Normalized Laguerre polynomial as a sufficient statistic. Coefficients are
// computed exactly and then scaled when alpha has a small denominator.
PolynomialStatistic laguerre_statistic(int n, double alpha);
// Normalized Hermite polynomial He_n / sqrt(n!).
PolynomialStatistic hermite_statistic(int n);

}  // namespace divbound::orthopoly
