#include "permsep/spectra.hpp"

#include "permsep/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace permsep {

namespace {

constexpr int kMaxSweeps = 80;
constexpr double kOrthogonality = 4.0 * std::numeric_limits<double>::epsilon();

} // namespace

SingularSpectrum::SingularSpectrum(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("singular values must be finite and non-negative");
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

double SingularSpectrum::trace_norm() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

SingularSpectrum singular_values(const CMatrix& m, const simd::JacobiKernels& k) {
    for (const Complex& z : m.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidArgument("singular_values: matrix has non-finite entries");
        }
    }
    // Orthogonalize the shorter set of vectors: columns when tall, rows when
    // wide (sigma(M) = sigma(M^T)). Working storage is one vector per line.
    const bool tall = m.rows() >= m.cols();
    const std::size_t count = tall ? m.cols() : m.rows();
    const std::size_t len = tall ? m.rows() : m.cols();
    if (count == 0) return SingularSpectrum{};

    thread_local std::vector<Complex> work;
    work.resize(count * len);
    if (tall) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) work[c * len + r] = m(r, c);
    } else {
        std::copy(m.data().begin(), m.data().end(), work.begin());
    }
    auto line = [&](std::size_t i) { return work.data() + i * len; };

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < count; ++p) {
            for (std::size_t q = p + 1; q < count; ++q) {
                const simd::ColumnGram g = k.gram(line(p), line(q), len);
                const double off = std::abs(g.ab);
                if (off == 0.0 || off <= kOrthogonality * std::sqrt(g.aa) * std::sqrt(g.bb)) continue;
                rotated = true;
                const Complex phase = std::conj(g.ab) / off;
                const double zeta = (g.bb - g.aa) / (2.0 * off);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                k.rotate(line(p), line(q), len, c, c * t, phase);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = std::sqrt(k.gram(line(i), line(i), len).aa);
    return SingularSpectrum(std::move(values));
}

SingularSpectrum singular_values(const CMatrix& m) {
    return singular_values(m, simd::active_kernels());
}

SingularSpectrum singular_values(const GeneralMatrix& m) {
    return singular_values(m.entries());
}

double trace_norm(const CMatrix& m) {
    return singular_values(m).trace_norm();
}

double trace_norm(const GeneralMatrix& m) {
    return singular_values(m).trace_norm();
}

bool spectra_equal(const SingularSpectrum& a, const SingularSpectrum& b, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("spectra_equal: tolerance must be positive");
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.values()[i] - b.values()[i]) > tol) return false;
    }
    return true;
}

} // namespace permsep
