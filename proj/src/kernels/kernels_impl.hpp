#pragma once

#include <cstddef>

#include "divbound/kernels.hpp"

namespace divbound::kernels {

namespace scalar {
void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);
void laguerre(int degree, double alpha, const double* x, double* out, std::size_t n);
void hermite(int degree, const double* x, double* out, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
TiltSums tilt_sums(const double* t, const double* logw, std::size_t n, double beta);
void exp(const double* x, double* out, std::size_t n);
}  // namespace scalar

#if defined(DIVBOUND_HAVE_AVX2)
namespace avx2 {
void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);
void laguerre(int degree, double alpha, const double* x, double* out, std::size_t n);
void hermite(int degree, const double* x, double* out, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
TiltSums tilt_sums(const double* t, const double* logw, std::size_t n, double beta);
void exp(const double* x, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace divbound::kernels
