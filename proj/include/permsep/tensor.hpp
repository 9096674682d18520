#pragma once

#include "permsep/matrix.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace permsep {

/// Ordered subsystem dimensions d_1..d_N of a tensor-product space.
class Subsystems {
public:
    explicit Subsystems(std::vector<int> dims);

    /// N copies of dimension d.
    static Subsystems uniform(int parties, int d);

    int parties() const noexcept { return static_cast<int>(dims_.size()); }
    /// Dimension of party `party` (1-based).
    int dim(int party) const { return dims_.at(static_cast<std::size_t>(party - 1)); }
    std::span<const int> dims() const noexcept { return dims_; }
    /// Product of all dimensions.
    std::size_t total() const noexcept { return total_; }

    bool operator==(const Subsystems&) const = default;

private:
    std::vector<int> dims_;
    std::size_t total_ = 1;
};

enum class Side : std::uint8_t { Ket, Bra };

/// One of the 2N indices of a density matrix: the ket index i_k or bra index i_k'.
struct Slot {
    Side side = Side::Ket;
    int party = 1; // 1-based

    auto operator<=>(const Slot&) const = default;

    /// Position this slot occupies in the untouched density-matrix layout:
    /// kets at 0..N-1, bras at N..2N-1.
    int standard_position(int parties) const noexcept {
        return (side == Side::Ket ? 0 : parties) + party - 1;
    }
    static Slot at_standard_position(int position, int parties) noexcept {
        return position < parties ? Slot{Side::Ket, position + 1} : Slot{Side::Bra, position - parties + 1};
    }
};

/// "k2" / "b3".
std::string to_string(Slot s);

/// Bijection on the 2N slot positions. Positions 0..N-1 are row positions,
/// N..2N-1 column positions; `target(p)` is where the content of source
/// position p ends up.
class IndexPermutation {
public:
    /// Validates bijectivity and even length.
    explicit IndexPermutation(std::vector<int> map);

    static IndexPermutation identity(int parties);
    /// Exchanges the whole row block with the column block.
    static IndexPermutation whole_transpose(int parties);
    /// Exchanges row position f-1 with column position N+f-1 for every f (1-based factors).
    static IndexPermutation transpose_factors(int parties, std::span<const int> factors);
    /// Exchanges column positions of factors j and k (1-based).
    static IndexPermutation swap_columns(int parties, int j, int k);
    /// Exchanges row positions of factors j and k (1-based).
    static IndexPermutation swap_rows(int parties, int j, int k);

    int parties() const noexcept { return static_cast<int>(map_.size() / 2); }
    int slot_count() const noexcept { return static_cast<int>(map_.size()); }
    int target(int source_position) const { return map_.at(static_cast<std::size_t>(source_position)); }
    std::span<const int> map() const noexcept { return map_; }

    IndexPermutation inverse() const;

    /// Lexicographic on the position map.
    auto operator<=>(const IndexPermutation&) const = default;

private:
    std::vector<int> map_;
};

/// outer ∘ inner: first apply `inner`, then `outer`.
IndexPermutation compose(const IndexPermutation& outer, const IndexPermutation& inner);

std::string to_string(const IndexPermutation& sigma);

class DensityMatrix;

/// Complex matrix whose rows and columns are tensor products of slot factors.
/// `layout()[q]` names the source slot sitting at position q; the first N
/// entries index rows (first slowest), the remaining N index columns.
class GeneralMatrix {
public:
    /// Validates that the layout is a permutation of all 2N slots and that the
    /// entry shape matches the slot dimensions.
    GeneralMatrix(Subsystems subsystems, std::vector<Slot> layout, CMatrix entries);

    static GeneralMatrix from_density(const DensityMatrix& rho);

    const Subsystems& subsystems() const noexcept { return subsystems_; }
    int parties() const noexcept { return subsystems_.parties(); }
    std::span<const Slot> layout() const noexcept { return layout_; }
    std::span<const Slot> row_slots() const noexcept { return std::span(layout_).first(static_cast<std::size_t>(parties())); }
    std::span<const Slot> col_slots() const noexcept { return std::span(layout_).last(static_cast<std::size_t>(parties())); }
    /// Dimension of the factor at position q.
    int dim_at(int position) const { return subsystems_.dim(layout_.at(static_cast<std::size_t>(position)).party); }

    const CMatrix& entries() const noexcept { return entries_; }

private:
    Subsystems subsystems_;
    std::vector<Slot> layout_;
    CMatrix entries_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on a tensor product.
/// Row index is (i_1..i_N) with i_1 slowest; column index likewise for the bras.
class DensityMatrix {
public:
    static constexpr double kHermitianTolerance = 1e-12;
    static constexpr double kTraceTolerance = 1e-12;
    static constexpr double kEigenvalueFloor = -1e-10;

    /// Throws InvalidState naming the first violated invariant.
    DensityMatrix(Subsystems subsystems, CMatrix entries);

    const Subsystems& subsystems() const noexcept { return subsystems_; }
    int parties() const noexcept { return subsystems_.parties(); }
    std::size_t dimension() const noexcept { return subsystems_.total(); }
    const CMatrix& entries() const noexcept { return entries_; }

private:
    Subsystems subsystems_;
    CMatrix entries_;
};

/// Precomputed gather map for one permutation over one source layout.
/// Reusable across any number of matrices sharing that layout.
class PermutationPlan {
public:
    PermutationPlan(const Subsystems& subsystems, std::span<const Slot> source_layout, const IndexPermutation& sigma);

    std::span<const Slot> target_layout() const noexcept { return target_layout_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    /// Gathers `source` (row-major, source layout) into the permuted matrix.
    CMatrix apply(std::span<const Complex> source) const;
    /// Gathers into caller-owned storage of size rows()*cols().
    void apply_into(std::span<const Complex> source, std::span<Complex> out) const;

private:
    std::vector<Slot> target_layout_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> gather_;
};

GeneralMatrix apply_permutation(const GeneralMatrix& m, const IndexPermutation& sigma);
GeneralMatrix apply_permutation(const DensityMatrix& rho, const IndexPermutation& sigma);

/// Partial transposition on the given parties (1-based).
GeneralMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> parties);

/// Partial transposition by position: exchanges row factor f with column factor f.
GeneralMatrix transpose_factors(const GeneralMatrix& m, std::span<const int> factors);

GeneralMatrix whole_transpose(const GeneralMatrix& m);

/// m · V_{jk}^R: exchanges column factors j and k. Pure relabeling.
GeneralMatrix right_multiply_swap(const GeneralMatrix& m, int j, int k);

/// V_{jk}^L · m: exchanges row factors j and k. Pure relabeling.
GeneralMatrix left_multiply_swap(const GeneralMatrix& m, int j, int k);

/// Explicit swap matrices. `right` is (d1·d2)×(d2·d1) and maps |b⟩|a⟩ to
/// |a⟩|b⟩; `left` is its transpose and inverse.
struct SwapOperators {
    CMatrix left;
    CMatrix right;
};

SwapOperators swap_operator(int d1, int d2);

} // namespace permsep
