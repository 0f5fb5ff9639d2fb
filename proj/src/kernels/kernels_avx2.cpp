// Compiled with -mavx2 -mfma. Only reached through the dispatch table after a
// CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "divbound/kernels.hpp"
#include "kernels_impl.hpp"

namespace divbound::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// Cephes-style exp: x = n ln2 + r, |r| <= ln2/2, Pade(2,3) for e^r, then
// scale by 2^n through the exponent bits. Arguments below the smallest
// normal result flush to zero; arguments above 709 saturate.
inline __m256d exp_pd(__m256d x) {
    const __m256d lo = _mm256_set1_pd(-708.3964185322641);
    const __m256d hi = _mm256_set1_pd(709.0);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000009e0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);

    const __m256d under = _mm256_cmp_pd(x, lo, _CMP_NGE_UQ);  // also catches -inf and NaN
    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, xc);
    r = _mm256_fnmadd_pd(n, c2, r);
    const __m256d rr = _mm256_mul_pd(r, r);
    const __m256d px = _mm256_mul_pd(r, _mm256_fmadd_pd(_mm256_fmadd_pd(p0, rr, p1), rr, p2));
    const __m256d qx = _mm256_fmadd_pd(_mm256_fmadd_pd(_mm256_fmadd_pd(q0, rr, q1), rr, q2), rr, q3);
    const __m256d er = _mm256_fmadd_pd(two, _mm256_div_pd(px, _mm256_sub_pd(qx, px)), one);

    const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    const __m256d res = _mm256_mul_pd(er, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(under, res);
}

}  // namespace

void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
    if (nc == 0) {
        std::fill(out, out + n, 0.0);
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d acc = _mm256_set1_pd(c[nc - 1]);
        for (std::size_t k = nc; k-- > 1;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(c[k - 1]));
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) scalar::horner(c, nc, x + i, out + i, n - i);
}

void laguerre(int degree, double alpha, const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    const __m256d a = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d prev = _mm256_set1_pd(1.0);
        if (degree == 0) {
            _mm256_storeu_pd(out + i, prev);
            continue;
        }
        __m256d cur = _mm256_sub_pd(_mm256_add_pd(_mm256_set1_pd(1.0), a), xv);
        for (int k = 1; k < degree; ++k) {
            const __m256d lin = _mm256_sub_pd(_mm256_set1_pd(2.0 * k + 1.0 + alpha), xv);
            const __m256d num = _mm256_fmsub_pd(lin, cur, _mm256_mul_pd(_mm256_set1_pd(k + alpha), prev));
            const __m256d next = _mm256_div_pd(num, _mm256_set1_pd(k + 1.0));
            prev = cur;
            cur = next;
        }
        _mm256_storeu_pd(out + i, cur);
    }
    if (i < n) scalar::laguerre(degree, alpha, x + i, out + i, n - i);
}

void hermite(int degree, const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d prev = _mm256_set1_pd(1.0);
        if (degree == 0) {
            _mm256_storeu_pd(out + i, prev);
            continue;
        }
        __m256d cur = xv;
        for (int k = 1; k < degree; ++k) {
            const __m256d next = _mm256_fnmadd_pd(_mm256_set1_pd(static_cast<double>(k)), prev, _mm256_mul_pd(xv, cur));
            prev = cur;
            cur = next;
        }
        _mm256_storeu_pd(out + i, cur);
    }
    if (i < n) scalar::hermite(degree, x + i, out + i, n - i);
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

TiltSums tilt_sums(const double* t, const double* logw, std::size_t n, double beta) {
    TiltSums r;
    const __m256d bv = _mm256_set1_pd(beta);
    __m256d mx = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        mx = _mm256_max_pd(mx, _mm256_fmadd_pd(bv, _mm256_loadu_pd(t + i), _mm256_loadu_pd(logw + i)));
    double shift = hmax(mx);
    for (std::size_t j = i; j < n; ++j) shift = std::max(shift, std::fma(beta, t[j], logw[j]));
    if (!std::isfinite(shift)) return r;
    r.shift = shift;

    const __m256d sv = _mm256_set1_pd(shift);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    for (i = 0; i + 4 <= n; i += 4) {
        const __m256d tv = _mm256_loadu_pd(t + i);
        const __m256d arg = _mm256_sub_pd(_mm256_fmadd_pd(bv, tv, _mm256_loadu_pd(logw + i)), sv);
        const __m256d e = exp_pd(arg);
        const __m256d et = _mm256_mul_pd(e, tv);
        a0 = _mm256_add_pd(a0, e);
        a1 = _mm256_add_pd(a1, et);
        a2 = _mm256_fmadd_pd(et, tv, a2);
    }
    r.s0 = hsum(a0);
    r.s1 = hsum(a1);
    r.s2 = hsum(a2);
    for (; i < n; ++i) {
        const double e = std::exp(std::fma(beta, t[i], logw[i]) - shift);
        r.s0 += e;
        r.s1 += e * t[i];
        r.s2 += e * t[i] * t[i];
    }
    return r;
}

void exp(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) {
        __m256d v = exp_pd(_mm256_set1_pd(x[i]));
        out[i] = _mm256_cvtsd_f64(v);
    }
}

}  // namespace divbound::kernels::avx2
