#include "permsep/simd/jacobi_kernels.hpp"

namespace permsep::simd::detail {

ColumnGram gram_scalar(const Complex* a, const Complex* b, std::size_t n) noexcept {
    double aa = 0.0, bb = 0.0, re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        aa += ar * ar + ai * ai;
        bb += br * br + bi * bi;
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {aa, bb, Complex(re, im)};
}

void rotate_scalar(Complex* a, Complex* b, std::size_t n, double c, double s, Complex w) noexcept {
    const double wr = w.real(), wi = w.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        const double tr = wr * br - wi * bi;
        const double ti = wr * bi + wi * br;
        a[i] = Complex(c * ar - s * tr, c * ai - s * ti);
        b[i] = Complex(s * ar + c * tr, s * ai + c * ti);
    }
}

} // namespace permsep::simd::detail
