#pragma once

#include "permsep/matrix.hpp"
#include "permsep/simd/jacobi_kernels.hpp"
#include "permsep/tensor.hpp"

#include <span>
#include <vector>

namespace permsep {

/// Singular values of a matrix, sorted descending.
class SingularSpectrum {
public:
    SingularSpectrum() = default;
    /// Sorts descending; rejects negative or non-finite values.
    explicit SingularSpectrum(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    /// Sum of the singular values.
    double trace_norm() const noexcept;

private:
    std::vector<double> values_;
};

/// Comparator tolerance for spectra of unit-trace inputs.
inline constexpr double kDefaultSpectrumTolerance = 1e-8;

/// One-sided (Hestenes) Jacobi. Throws InvalidArgument on non-finite entries.
SingularSpectrum singular_values(const CMatrix& m);
SingularSpectrum singular_values(const CMatrix& m, const simd::JacobiKernels& kernels);
SingularSpectrum singular_values(const GeneralMatrix& m);

double trace_norm(const CMatrix& m);
double trace_norm(const GeneralMatrix& m);

/// Same length and max elementwise |a_i - b_i| <= tol. Requires tol > 0.
bool spectra_equal(const SingularSpectrum& a, const SingularSpectrum& b, double tol = kDefaultSpectrumTolerance);

} // namespace permsep
