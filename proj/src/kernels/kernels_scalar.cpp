#include <algorithm>
#include <cmath>
#include <limits>

#include "divbound/kernels.hpp"
#include "kernels_impl.hpp"

namespace divbound::kernels::scalar {

void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = nc ? c[nc - 1] : 0.0;
        for (std::size_t k = nc; k-- > 1;) acc = acc * x[i] + c[k - 1];
        out[i] = acc;
    }
}

void laguerre(int degree, double alpha, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double prev = 1.0;
        if (degree == 0) {
            out[i] = prev;
            continue;
        }
        double cur = 1.0 + alpha - x[i];
        for (int k = 1; k < degree; ++k) {
            const double next = ((2.0 * k + 1.0 + alpha - x[i]) * cur - (k + alpha) * prev) / (k + 1.0);
            prev = cur;
            cur = next;
        }
        out[i] = cur;
    }
}

void hermite(int degree, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double prev = 1.0;
        if (degree == 0) {
            out[i] = prev;
            continue;
        }
        double cur = x[i];
        for (int k = 1; k < degree; ++k) {
            const double next = x[i] * cur - k * prev;
            prev = cur;
            cur = next;
        }
        out[i] = cur;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

TiltSums tilt_sums(const double* t, const double* logw, std::size_t n, double beta) {
    TiltSums r;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, beta * t[i] + logw[i]);
    if (!std::isfinite(shift)) return r;
    r.shift = shift;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(beta * t[i] + logw[i] - shift);
        r.s0 += e;
        r.s1 += e * t[i];
        r.s2 += e * t[i] * t[i];
    }
    return r;
}

void exp(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

}  // namespace divbound::kernels::scalar
