#include "divbound/orthopoly.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "divbound/error.hpp"

namespace divbound::orthopoly {
namespace {

void check_degree(int n) {
    if (n < 0) throw DomainError("polynomial degree must be non-negative, got " + std::to_string(n));
}

void check_alpha(double alpha) {
    if (!(alpha > -1.0) || !std::isfinite(alpha)) {
        std::ostringstream os;
        os << "Laguerre parameter alpha must lie in (-1, inf), got " << alpha;
        throw DomainError(os.str());
    }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// (n+1) L_{n+1} = (2n+1+a-x) L_n - (n+a) L_{n-1}, on coefficient vectors.
template <typename T>
std::vector<T> laguerre_coefficients(int n, const T& alpha) {
    std::vector<T> prev{T(1)};
    if (n == 0) return prev;
    std::vector<T> cur{T(1) + alpha, T(-1)};
    for (int k = 1; k < n; ++k) {
        std::vector<T> next(static_cast<std::size_t>(k) + 2, T(0));
        const T lin = T(2 * k + 1) + alpha;
        const T back = T(k) + alpha;
        const T inv = T(1) / T(k + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i] += lin * cur[i];
            next[i + 1] -= cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= back * prev[i];
        for (auto& c : next) c = c * inv;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

double generalized_binomial(int n, double alpha) {
    check_degree(n);
    check_alpha(alpha);
    return std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(alpha + 1.0) - std::lgamma(n + 1.0));
}

double laguerre(int n, double alpha, double x) {
    check_degree(n);
    check_alpha(alpha);
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double normalized_laguerre(int n, double alpha, double x) {
    return sign_pow(n) * laguerre(n, alpha, x) / std::sqrt(generalized_binomial(n, alpha));
}

Extremum laguerre2_extremum(double alpha) {
    check_alpha(alpha);
    return {alpha + 2.0, -std::sqrt(0.5 * (1.0 + 1.0 / (alpha + 1.0)))};
}

double hermite_prob(int n, double x) {
    check_degree(n);
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double normalized_hermite(int n, double x) {
    check_degree(n);
    return hermite_prob(n, x) / std::sqrt(std::exp(std::lgamma(n + 1.0)));
}

BridgeSides hermite_laguerre_bridge(int n, double x) {
    check_degree(n);
    const double factor = sign_pow(n) * std::ldexp(std::exp(std::lgamma(n + 1.0)), n);
    return {hermite_prob(2 * n, x), factor * laguerre(n, -0.5, 0.5 * x * x)};
}

ExactPolynomial laguerre_exact(int n, const Rational& alpha) {
    check_degree(n);
    check_alpha(alpha.to_double());
    return ExactPolynomial(laguerre_coefficients<Rational>(n, alpha));
}

ExactPolynomial hermite_exact(int n) {
    check_degree(n);
    ExactPolynomial prev = ExactPolynomial::constant(1);
    if (n == 0) return prev;
    ExactPolynomial cur = ExactPolynomial::monomial(1);
    const ExactPolynomial x = ExactPolynomial::monomial(1);
    for (int k = 1; k < n; ++k) {
        ExactPolynomial next = x * cur - Rational(k) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::optional<Rational> small_rational(double alpha) {
    for (int d = 1; d <= 8; ++d) {
        const double scaled = alpha * d;
        const double r = std::round(scaled);
        if (std::abs(scaled - r) < 1e-12 && std::abs(r) < 1e9) return Rational(static_cast<std::int64_t>(r), d);
    }
    return std::nullopt;
}

PolynomialStatistic laguerre_statistic(int n, double alpha) {
    check_degree(n);
    check_alpha(alpha);
    const double scale = sign_pow(n) / std::sqrt(generalized_binomial(n, alpha));
    std::ostringstream label;
    label << "normalized_laguerre(n=" << n << ",alpha=" << alpha << ")";
    if (auto q = small_rational(alpha)) {
        try {
            return PolynomialStatistic(laguerre_exact(n, *q), scale, label.str());
        } catch (const std::overflow_error&) {
            // high degree: fall through to floating point
        }
    }
    std::vector<double> c = laguerre_coefficients<double>(n, alpha);
    for (auto& v : c) v *= scale;
    return PolynomialStatistic(std::move(c), label.str());
}

PolynomialStatistic hermite_statistic(int n) {
    check_degree(n);
    const double scale = 1.0 / std::sqrt(std::exp(std::lgamma(n + 1.0)));
    return PolynomialStatistic(hermite_exact(n), scale, "normalized_hermite(n=" + std::to_string(n) + ")");
}

}  // namespace divbound::orthopoly
