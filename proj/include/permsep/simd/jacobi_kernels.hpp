#pragma once

// Column kernels for one-sided Jacobi. Every kernel has a scalar reference
// implementation; wider variants are selected at runtime and must agree with
// the reference to rounding.

#include "permsep/matrix.hpp"

#include <cstddef>
#include <string_view>

namespace permsep::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Squared norms of two columns and their inner product a^H b.
struct ColumnGram {
    double aa = 0.0;
    double bb = 0.0;
    Complex ab{};
};

using GramFn = ColumnGram (*)(const Complex* a, const Complex* b, std::size_t n) noexcept;

/// With bw = w·b: a <- c·a - s·bw, b <- s·a + c·bw.
using RotateFn = void (*)(Complex* a, Complex* b, std::size_t n, double c, double s, Complex w) noexcept;

struct JacobiKernels {
    Isa isa;
    GramFn gram;
    RotateFn rotate;
};

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa) noexcept;

/// Best available ISA, unless PERMSEP_SIMD=scalar|avx2 overrides it.
Isa detect_isa() noexcept;

/// Throws InvalidArgument if `isa` is not available.
const JacobiKernels& kernels(Isa isa);

/// Kernels chosen once per process by detect_isa().
const JacobiKernels& active_kernels() noexcept;

namespace detail {
ColumnGram gram_scalar(const Complex* a, const Complex* b, std::size_t n) noexcept;
void rotate_scalar(Complex* a, Complex* b, std::size_t n, double c, double s, Complex w) noexcept;
#ifdef PERMSEP_HAVE_AVX2
ColumnGram gram_avx2(const Complex* a, const Complex* b, std::size_t n) noexcept;
void rotate_avx2(Complex* a, Complex* b, std::size_t n, double c, double s, Complex w) noexcept;
#endif
} // namespace detail

} // namespace permsep::simd
