#include <cstdlib>
#include <string_view>

#include "divbound/kernels.hpp"
#include "kernels_impl.hpp"

namespace divbound::kernels {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, "scalar",      scalar::horner,    scalar::laguerre, scalar::hermite,
                              scalar::dot,  scalar::tilt_sums, scalar::exp};

#if defined(DIVBOUND_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, "avx2",         avx2::horner,    avx2::laguerre, avx2::hermite,
                            avx2::dot, avx2::tilt_sums, avx2::exp};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
    const char* env = std::getenv("DIVBOUND_SIMD");
    const std::string_view choice = env ? env : "auto";
    if (choice == "scalar") return kScalar;
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(DIVBOUND_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace divbound::kernels
