#include "permsep/simd/jacobi_kernels.hpp"

#include <immintrin.h>

namespace permsep::simd::detail {

namespace {

inline double hsum(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

// Two complex values per 256-bit register, interleaved [re, im, re, im].
ColumnGram gram_avx2(const Complex* a, const Complex* b, std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d saa = _mm256_setzero_pd(), sbb = _mm256_setzero_pd();
    __m256d sre = _mm256_setzero_pd(), sim = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        saa = _mm256_add_pd(saa, _mm256_mul_pd(va, va));
        sbb = _mm256_add_pd(sbb, _mm256_mul_pd(vb, vb));
        sre = _mm256_add_pd(sre, _mm256_mul_pd(va, vb));
        // [ai*br, ar*bi, ...]
        sim = _mm256_add_pd(sim, _mm256_mul_pd(_mm256_permute_pd(va, 0b0101), vb));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, sim);
    double aa = hsum(saa), bb = hsum(sbb), re = hsum(sre);
    double im = (lanes[1] + lanes[3]) - (lanes[0] + lanes[2]);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        aa += ar * ar + ai * ai;
        bb += br * br + bi * bi;
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {aa, bb, Complex(re, im)};
}

void rotate_avx2(Complex* a, Complex* b, std::size_t n, double c, double s, Complex w) noexcept {
    auto* pa = reinterpret_cast<double*>(a);
    auto* pb = reinterpret_cast<double*>(b);
    const __m256d vc = _mm256_set1_pd(c), vs = _mm256_set1_pd(s);
    const __m256d wr = _mm256_set1_pd(w.real()), wi = _mm256_set1_pd(w.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d wb = _mm256_addsub_pd(_mm256_mul_pd(wr, vb), _mm256_mul_pd(wi, _mm256_permute_pd(vb, 0b0101)));
        _mm256_storeu_pd(pa + 2 * i, _mm256_sub_pd(_mm256_mul_pd(vc, va), _mm256_mul_pd(vs, wb)));
        _mm256_storeu_pd(pb + 2 * i, _mm256_add_pd(_mm256_mul_pd(vs, va), _mm256_mul_pd(vc, wb)));
    }
    if (i < n) rotate_scalar(a + i, b + i, n - i, c, s, w);
}

} // namespace permsep::simd::detail
