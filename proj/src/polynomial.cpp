#include "divbound/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "divbound/error.hpp"
#include "divbound/kernels.hpp"

namespace divbound {

ExactPolynomial::ExactPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

ExactPolynomial ExactPolynomial::monomial(int power, Rational c) {
    std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
    v.back() = c;
    return ExactPolynomial(std::move(v));
}

void ExactPolynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

Rational ExactPolynomial::coefficient(int power) const {
    if (power < 0 || power > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(power)];
}

Rational ExactPolynomial::operator()(const Rational& x) const {
    Rational acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return ExactPolynomial(std::move(v));
}

ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a + Rational(-1) * b;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ExactPolynomial(std::move(v));
}

ExactPolynomial operator*(const Rational& s, const ExactPolynomial& p) {
    std::vector<Rational> v = p.coeffs_;
    for (auto& c : v) c *= s;
    return ExactPolynomial(std::move(v));
}

PolynomialStatistic::PolynomialStatistic(std::vector<double> coefficients, std::string label)
    : coeffs_(std::move(coefficients)), label_(std::move(label)) {
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
    trim();
}

PolynomialStatistic::PolynomialStatistic(const ExactPolynomial& exact, double scale, std::string label)
    : exact_(exact), exact_scale_(scale), label_(std::move(label)) {
    coeffs_.clear();
    for (const auto& c : exact.coefficients()) coeffs_.push_back(c.to_double() * scale);
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
    trim();
}

void PolynomialStatistic::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double PolynomialStatistic::operator()(double x) const noexcept {
    double acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

void PolynomialStatistic::evaluate(std::span<const double> x, std::span<double> out) const {
    kernels::horner(coeffs_, x, out);
}

PolynomialStatistic PolynomialStatistic::derivative() const {
    if (coeffs_.size() == 1) return PolynomialStatistic({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return PolynomialStatistic(std::move(d));
}

PolynomialStatistic PolynomialStatistic::rescaled_argument(double s) const {
    std::vector<double> c = coeffs_;
    double p = 1.0;
    for (auto& ck : c) {
        ck *= p;
        p *= s;
    }
    return PolynomialStatistic(std::move(c), label_);
}

std::pair<double, double> PolynomialStatistic::range_over(double lo, double hi) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!(lo <= hi)) throw DomainError("range_over: empty interval");
    if (degree() == 0) return {coeffs_[0], coeffs_[0]};

    double best_lo = inf;
    double best_hi = -inf;
    auto visit = [&](double v) {
        best_lo = std::min(best_lo, v);
        best_hi = std::max(best_hi, v);
    };

    const bool odd = degree() % 2 == 1;
    const double lead = leading();
    if (std::isinf(hi)) visit(lead > 0 ? inf : -inf);
    else visit((*this)(hi));
    if (std::isinf(lo)) visit((lead > 0) != odd ? inf : -inf);
    else visit((*this)(lo));

    const PolynomialStatistic d = derivative();
    if (d.degree() >= 1) {
        double bound = 0.0;
        for (int k = 0; k < d.degree(); ++k) bound = std::max(bound, std::abs(d.coefficients()[k] / d.leading()));
        bound += 1.0;
        const double a = std::max(lo, -bound);
        const double b = std::min(hi, bound);
        if (a < b) {
            constexpr int grid = 8192;
            const double h = (b - a) / grid;
            double xp = a;
            double dp = d(xp);
            for (int i = 1; i <= grid; ++i) {
                const double xc = (i == grid) ? b : a + h * i;
                const double dc = d(xc);
                if (dp == 0.0) visit((*this)(xp));
                if ((dp < 0.0) != (dc < 0.0) && dc != 0.0 && dp != 0.0) {
                    double l = xp, r = xc, dl = dp;
                    for (int it = 0; it < 200 && r - l > 0.0; ++it) {
                        const double m = 0.5 * (l + r);
                        if (m <= l || m >= r) break;
                        const double dm = d(m);
                        if ((dm < 0.0) == (dl < 0.0)) {
                            l = m;
                            dl = dm;
                        } else {
                            r = m;
                        }
                    }
                    visit((*this)(0.5 * (l + r)));
                }
                xp = xc;
                dp = dc;
            }
            if (dp == 0.0) visit((*this)(xp));
        }
    }
    return {best_lo, best_hi};
}

}  // namespace divbound
