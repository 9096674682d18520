#include "permsep/tensor.hpp"

#include "permsep/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace permsep {

namespace {

std::string fmt_magnitude(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

void check_factor(int parties, int f, const char* what) {
    if (f < 1 || f > parties) {
        throw InvalidArgument(std::string(what) + ": party index " + std::to_string(f) + " outside 1.." +
                              std::to_string(parties));
    }
}

std::vector<Slot> standard_layout(int parties) {
    std::vector<Slot> layout;
    layout.reserve(static_cast<std::size_t>(2 * parties));
    for (int p = 0; p < 2 * parties; ++p) layout.push_back(Slot::at_standard_position(p, parties));
    return layout;
}

} // namespace

// ---------------------------------------------------------------- Subsystems

Subsystems::Subsystems(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw InvalidArgument("subsystems: at least one party required");
    for (int d : dims_) {
        if (d < 1) throw InvalidArgument("subsystems: dimensions must be positive");
        if (total_ > std::numeric_limits<std::uint32_t>::max() / static_cast<std::size_t>(d)) {
            throw ResourceLimit("subsystems: total dimension too large");
        }
        total_ *= static_cast<std::size_t>(d);
    }
}

Subsystems Subsystems::uniform(int parties, int d) {
    if (parties < 1) throw InvalidArgument("subsystems: at least one party required");
    return Subsystems(std::vector<int>(static_cast<std::size_t>(parties), d));
}

std::string to_string(Slot s) {
    return (s.side == Side::Ket ? "k" : "b") + std::to_string(s.party);
}

// ---------------------------------------------------------- IndexPermutation

IndexPermutation::IndexPermutation(std::vector<int> map) : map_(std::move(map)) {
    if (map_.empty() || map_.size() % 2 != 0) {
        throw InvalidPermutation("index permutation must act on an even, non-zero number of slots");
    }
    std::vector<bool> seen(map_.size(), false);
    for (int t : map_) {
        if (t < 0 || static_cast<std::size_t>(t) >= map_.size() || seen[static_cast<std::size_t>(t)]) {
            throw InvalidPermutation("index permutation is not a bijection: " + to_string(*this));
        }
        seen[static_cast<std::size_t>(t)] = true;
    }
}

IndexPermutation IndexPermutation::identity(int parties) {
    if (parties < 1) throw InvalidArgument("identity permutation: parties must be positive");
    std::vector<int> map(static_cast<std::size_t>(2 * parties));
    std::iota(map.begin(), map.end(), 0);
    return IndexPermutation(std::move(map));
}

IndexPermutation IndexPermutation::whole_transpose(int parties) {
    auto map = identity(parties).map_;
    for (int p = 0; p < parties; ++p) std::swap(map[static_cast<std::size_t>(p)], map[static_cast<std::size_t>(p + parties)]);
    return IndexPermutation(std::move(map));
}

IndexPermutation IndexPermutation::transpose_factors(int parties, std::span<const int> factors) {
    auto map = identity(parties).map_;
    std::vector<bool> used(static_cast<std::size_t>(parties), false);
    for (int f : factors) {
        check_factor(parties, f, "partial transpose");
        if (used[static_cast<std::size_t>(f - 1)]) continue;
        used[static_cast<std::size_t>(f - 1)] = true;
        std::swap(map[static_cast<std::size_t>(f - 1)], map[static_cast<std::size_t>(parties + f - 1)]);
    }
    return IndexPermutation(std::move(map));
}

IndexPermutation IndexPermutation::swap_columns(int parties, int j, int k) {
    check_factor(parties, j, "swap");
    check_factor(parties, k, "swap");
    if (j == k) throw InvalidArgument("swap: factors must differ");
    auto map = identity(parties).map_;
    std::swap(map[static_cast<std::size_t>(parties + j - 1)], map[static_cast<std::size_t>(parties + k - 1)]);
    return IndexPermutation(std::move(map));
}

IndexPermutation IndexPermutation::swap_rows(int parties, int j, int k) {
    check_factor(parties, j, "swap");
    check_factor(parties, k, "swap");
    if (j == k) throw InvalidArgument("swap: factors must differ");
    auto map = identity(parties).map_;
    std::swap(map[static_cast<std::size_t>(j - 1)], map[static_cast<std::size_t>(k - 1)]);
    return IndexPermutation(std::move(map));
}

IndexPermutation IndexPermutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t p = 0; p < map_.size(); ++p) inv[static_cast<std::size_t>(map_[p])] = static_cast<int>(p);
    return IndexPermutation(std::move(inv));
}

IndexPermutation compose(const IndexPermutation& outer, const IndexPermutation& inner) {
    if (outer.slot_count() != inner.slot_count()) {
        throw InvalidPermutation("compose: slot counts differ");
    }
    std::vector<int> map(static_cast<std::size_t>(inner.slot_count()));
    for (int p = 0; p < inner.slot_count(); ++p) map[static_cast<std::size_t>(p)] = outer.target(inner.target(p));
    return IndexPermutation(std::move(map));
}

std::string to_string(const IndexPermutation& sigma) {
    std::string s = "[";
    for (std::size_t i = 0; i < sigma.map().size(); ++i) {
        if (i) s += ',';
        s += std::to_string(sigma.map()[i]);
    }
    return s + "]";
}

// ------------------------------------------------------------- GeneralMatrix

GeneralMatrix::GeneralMatrix(Subsystems subsystems, std::vector<Slot> layout, CMatrix entries)
    : subsystems_(std::move(subsystems)), layout_(std::move(layout)), entries_(std::move(entries)) {
    const int n = subsystems_.parties();
    if (layout_.size() != static_cast<std::size_t>(2 * n)) {
        throw InvalidArgument("general matrix: layout must name all 2N slots");
    }
    std::vector<bool> seen(layout_.size(), false);
    for (const Slot& s : layout_) {
        if (s.party < 1 || s.party > n) throw InvalidArgument("general matrix: slot party out of range");
        const auto pos = static_cast<std::size_t>(s.standard_position(n));
        if (seen[pos]) throw InvalidArgument("general matrix: slot " + to_string(s) + " appears twice");
        seen[pos] = true;
    }
    std::size_t rows = 1, cols = 1;
    for (int q = 0; q < n; ++q) rows *= static_cast<std::size_t>(dim_at(q));
    for (int q = n; q < 2 * n; ++q) cols *= static_cast<std::size_t>(dim_at(q));
    if (entries_.rows() != rows || entries_.cols() != cols) {
        throw InvalidArgument("general matrix: entry shape does not match slot dimensions");
    }
}

GeneralMatrix GeneralMatrix::from_density(const DensityMatrix& rho) {
    return GeneralMatrix(rho.subsystems(), standard_layout(rho.parties()), rho.entries());
}

// ------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Subsystems subsystems, CMatrix entries)
    : subsystems_(std::move(subsystems)), entries_(std::move(entries)) {
    const std::size_t n = subsystems_.total();
    if (entries_.rows() != n || entries_.cols() != n) {
        throw InvalidState("shape", 0.0,
                           "density matrix shape " + std::to_string(entries_.rows()) + "x" +
                               std::to_string(entries_.cols()) + " does not match total dimension " +
                               std::to_string(n));
    }
    for (const Complex& z : entries_.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidState("finite", std::numeric_limits<double>::infinity(),
                               "density matrix has non-finite entries");
        }
    }
    double herm = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) herm = std::max(herm, std::abs(entries_(r, c) - std::conj(entries_(c, r))));
    if (herm > kHermitianTolerance) {
        throw InvalidState("hermitian", herm, "density matrix violates hermitian invariant: max |rho - rho^H| = " +
                                                  fmt_magnitude(herm));
    }
    Complex tr{};
    for (std::size_t i = 0; i < n; ++i) tr += entries_(i, i);
    const double trace_err = std::abs(tr - Complex(1.0, 0.0));
    if (trace_err > kTraceTolerance) {
        throw InvalidState("trace", trace_err,
                           "density matrix violates trace invariant: |trace - 1| = " + fmt_magnitude(trace_err));
    }
    Eigen::MatrixXcd h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entries_(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < kEigenvalueFloor) {
        throw InvalidState("psd", -lowest,
                           "density matrix violates psd invariant: smallest eigenvalue = " + fmt_magnitude(lowest));
    }
}

// ----------------------------------------------------------- PermutationPlan

PermutationPlan::PermutationPlan(const Subsystems& subsystems, std::span<const Slot> source_layout,
                                 const IndexPermutation& sigma) {
    const int n = subsystems.parties();
    if (sigma.slot_count() != 2 * n || source_layout.size() != static_cast<std::size_t>(2 * n)) {
        throw InvalidPermutation("permutation acts on " + std::to_string(sigma.slot_count()) +
                                 " slots but the matrix has " + std::to_string(2 * n));
    }
    const auto positions = static_cast<std::size_t>(2 * n);

    std::vector<std::size_t> src_dim(positions), src_stride(positions);
    for (std::size_t p = 0; p < positions; ++p) src_dim[p] = static_cast<std::size_t>(subsystems.dim(source_layout[p].party));
    std::size_t src_cols = 1;
    for (std::size_t p = static_cast<std::size_t>(n); p < positions; ++p) src_cols *= src_dim[p];
    {
        std::size_t s = 1;
        for (std::size_t p = positions; p-- > static_cast<std::size_t>(n);) {
            src_stride[p] = s;
            s *= src_dim[p];
        }
        s = src_cols;
        for (std::size_t p = static_cast<std::size_t>(n); p-- > 0;) {
            src_stride[p] = s;
            s *= src_dim[p];
        }
    }

    const IndexPermutation inv = sigma.inverse();
    target_layout_.resize(positions);
    std::vector<std::size_t> dim(positions), stride(positions);
    for (std::size_t q = 0; q < positions; ++q) {
        const auto p = static_cast<std::size_t>(inv.target(static_cast<int>(q)));
        target_layout_[q] = source_layout[p];
        dim[q] = src_dim[p];
        stride[q] = src_stride[p];
    }
    rows_ = cols_ = 1;
    for (std::size_t q = 0; q < static_cast<std::size_t>(n); ++q) rows_ *= dim[q];
    for (std::size_t q = static_cast<std::size_t>(n); q < positions; ++q) cols_ *= dim[q];

    // Odometer over target digits, last position fastest.
    gather_.resize(rows_ * cols_);
    std::vector<std::size_t> digit(positions, 0);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < gather_.size(); ++i) {
        gather_[i] = static_cast<std::uint32_t>(offset);
        for (std::size_t q = positions; q-- > 0;) {
            if (++digit[q] < dim[q]) {
                offset += stride[q];
                break;
            }
            digit[q] = 0;
            offset -= stride[q] * (dim[q] - 1);
        }
    }
}

CMatrix PermutationPlan::apply(std::span<const Complex> source) const {
    CMatrix out(rows_, cols_);
    apply_into(source, out.data());
    return out;
}

void PermutationPlan::apply_into(std::span<const Complex> source, std::span<Complex> out) const {
    if (source.size() != gather_.size() || out.size() != gather_.size()) {
        throw InvalidArgument("permutation plan: buffer size mismatch");
    }
    for (std::size_t i = 0; i < gather_.size(); ++i) out[i] = source[gather_[i]];
}

// ---------------------------------------------------------------- operations

GeneralMatrix apply_permutation(const GeneralMatrix& m, const IndexPermutation& sigma) {
    const PermutationPlan plan(m.subsystems(), m.layout(), sigma);
    auto layout = std::vector<Slot>(plan.target_layout().begin(), plan.target_layout().end());
    return GeneralMatrix(m.subsystems(), std::move(layout), plan.apply(m.entries().data()));
}

GeneralMatrix apply_permutation(const DensityMatrix& rho, const IndexPermutation& sigma) {
    return apply_permutation(GeneralMatrix::from_density(rho), sigma);
}

GeneralMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> parties) {
    return apply_permutation(rho, IndexPermutation::transpose_factors(rho.parties(), parties));
}

GeneralMatrix transpose_factors(const GeneralMatrix& m, std::span<const int> factors) {
    return apply_permutation(m, IndexPermutation::transpose_factors(m.parties(), factors));
}

GeneralMatrix whole_transpose(const GeneralMatrix& m) {
    return apply_permutation(m, IndexPermutation::whole_transpose(m.parties()));
}

GeneralMatrix right_multiply_swap(const GeneralMatrix& m, int j, int k) {
    return apply_permutation(m, IndexPermutation::swap_columns(m.parties(), j, k));
}

GeneralMatrix left_multiply_swap(const GeneralMatrix& m, int j, int k) {
    return apply_permutation(m, IndexPermutation::swap_rows(m.parties(), j, k));
}

SwapOperators swap_operator(int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw InvalidArgument("swap operator: dimensions must be positive");
    const auto a_dim = static_cast<std::size_t>(d1), b_dim = static_cast<std::size_t>(d2);
    CMatrix right(a_dim * b_dim, b_dim * a_dim);
    for (std::size_t a = 0; a < a_dim; ++a)
        for (std::size_t b = 0; b < b_dim; ++b) right(a * b_dim + b, b * a_dim + a) = 1.0;
    CMatrix left = right.transpose();
    return {std::move(left), std::move(right)};
}

} // namespace permsep
