#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divbound/rational.hpp"

namespace divbound {

// Polynomial with exact rational coefficients, ascending powers.
class ExactPolynomial {
public:
    ExactPolynomial() = default;
    explicit ExactPolynomial(std::vector<Rational> coefficients);

    static ExactPolynomial constant(Rational c) { return ExactPolynomial({c}); }
    static ExactPolynomial monomial(int power, Rational c = 1);

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coefficient(int power) const;
    Rational operator()(const Rational& x) const;

    friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator*(const Rational& s, const ExactPolynomial& p);
    friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) = default;

private:
    void trim();
    std::vector<Rational> coeffs_{Rational(0)};
};

// Real polynomial used as the sufficient statistic of a tilted family.
// Coefficients are indexed by power; trailing zeros are trimmed so that
// degree() is the index of the last nonzero coefficient.
class PolynomialStatistic {
public:
    PolynomialStatistic() = default;
    explicit PolynomialStatistic(std::vector<double> coefficients, std::string label = {});
    // Scales an exact polynomial; the exact form is kept for inspection.
    PolynomialStatistic(const ExactPolynomial& exact, double scale, std::string label = {});

    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double leading() const noexcept { return coeffs_.back(); }
    const std::string& label() const noexcept { return label_; }
    const std::optional<ExactPolynomial>& exact() const noexcept { return exact_; }
    double exact_scale() const noexcept { return exact_scale_; }

    double operator()(double x) const noexcept;
    // Batched Horner evaluation through the active SIMD kernel table.
    void evaluate(std::span<const double> x, std::span<double> out) const;

    PolynomialStatistic derivative() const;
    // p(s * x) as a polynomial in x.
    PolynomialStatistic rescaled_argument(double s) const;

    // Infimum and supremum of the polynomial over [lo, hi]; either bound may
    // be infinite. Critical points are isolated by a Cauchy bound on the
    // derivative's roots, then refined.
    std::pair<double, double> range_over(double lo, double hi) const;

private:
    void trim();
    std::vector<double> coeffs_{0.0};
    std::optional<ExactPolynomial> exact_;
    double exact_scale_ = 1.0;
    std::string label_;
};

}  // namespace divbound
