#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The variant is chosen
// once at first use from CPUID; DIVBOUND_SIMD=scalar|avx2|auto overrides.

#include <cstddef>
#include <span>

namespace divbound::kernels {

enum class Isa { Scalar, Avx2 };

// Shifted tilt sums: s_k = sum_i t_i^k * exp(beta * t_i + logw_i - shift),
// shift = max_i (beta * t_i + logw_i) over nodes with finite logw.
struct TiltSums {
    double shift = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

struct KernelTable {
    Isa isa;
    const char* name;
    void (*horner)(const double* coeffs, std::size_t ncoeffs, const double* x, double* out, std::size_t n);
    void (*laguerre)(int degree, double alpha, const double* x, double* out, std::size_t n);
    void (*hermite)(int degree, const double* x, double* out, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    TiltSums (*tilt_sums)(const double* t, const double* logw, std::size_t n, double beta);
    void (*exp)(const double* x, double* out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant is not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_table() noexcept;
const KernelTable& active() noexcept;

inline void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out,
                   const KernelTable& k = active()) {
    k.horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}
inline void laguerre(int degree, double alpha, std::span<const double> x, std::span<double> out,
                     const KernelTable& k = active()) {
    k.laguerre(degree, alpha, x.data(), out.data(), x.size());
}
inline void hermite(int degree, std::span<const double> x, std::span<double> out,
                    const KernelTable& k = active()) {
    k.hermite(degree, x.data(), out.data(), x.size());
}
inline double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k = active()) {
    return k.dot(a.data(), b.data(), a.size());
}
inline TiltSums tilt_sums(std::span<const double> t, std::span<const double> logw, double beta,
                          const KernelTable& k = active()) {
    return k.tilt_sums(t.data(), logw.data(), t.size(), beta);
}

}  // namespace divbound::kernels
