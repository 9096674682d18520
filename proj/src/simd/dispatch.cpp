// Runtime selection of Jacobi kernels. No intrinsics here.

#include "permsep/simd/jacobi_kernels.hpp"

#include "permsep/error.hpp"

#include <cstdlib>
#include <string>

namespace permsep::simd {

namespace {

constexpr JacobiKernels kScalar{Isa::Scalar, &detail::gram_scalar, &detail::rotate_scalar};
#ifdef PERMSEP_HAVE_AVX2
constexpr JacobiKernels kAvx2{Isa::Avx2, &detail::gram_avx2, &detail::rotate_avx2};
#endif

} // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(PERMSEP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa detect_isa() noexcept {
    if (const char* forced = std::getenv("PERMSEP_SIMD")) {
        const std::string v(forced);
        if (v == "scalar") return Isa::Scalar;
        if (v == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const JacobiKernels& kernels(Isa isa) {
    if (!isa_available(isa)) {
        throw InvalidArgument("SIMD kernels '" + std::string(to_string(isa)) + "' not available on this machine");
    }
#ifdef PERMSEP_HAVE_AVX2
    if (isa == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
}

const JacobiKernels& active_kernels() noexcept {
    static const JacobiKernels& chosen = kernels(detect_isa());
    return chosen;
}

} // namespace permsep::simd
