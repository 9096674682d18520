#pragma once

// Equivalence classes of index-permutation criteria.
//
// Reordering row factors or column factors multiplies the permuted matrix by
// permutation matrices, and a whole transposition swaps rows with columns;
// neither changes singular values. What survives is which source slots sit
// in row positions, up to complementation. That subset is the class
// invariant; an empirical oracle groups permutations by their spectra on
// random states and must reproduce the same partition.

#include "permsep/spectra.hpp"
#include "permsep/tensor.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permsep {

/// Bit p set = slot at standard position p (kets 0..N-1, bras N..2N-1).
using SlotMask = std::uint32_t;

inline constexpr int kMaxClassifiedParties = 5;

enum class ClassKind { Trivial, PartialTranspose, Realign, Mixed };

/// Party sets derived from a row set: `both` has ket and bra in rows,
/// `neither` has none, `transposed` has only its bra in rows. The remaining
/// parties have only their ket in rows. |both| == |neither| always.
struct ClassLabel {
    ClassKind kind = ClassKind::Trivial;
    std::vector<int> both;
    std::vector<int> neither;
    std::vector<int> transposed;

    auto operator<=>(const ClassLabel&) const = default;
};

/// "Trivial", "PT({1})", "Realign(B={2},Z={1})", "Mixed(B={1},Z={2},T={3})".
std::string to_string(const ClassLabel& label);

/// Operator-style reading of a label, e.g. "realign(1↔2) ∘ t₃".
std::string describe(const ClassLabel& label);

class CanonicalClass {
public:
    /// Normalizes `row_set` against its complement: the side with fewer
    /// transposed parties wins, ties go to the side holding k1.
    static CanonicalClass from_row_set(int parties, SlotMask row_set);

    int parties() const noexcept { return parties_; }
    SlotMask row_set() const noexcept { return row_set_; }
    const ClassLabel& label() const noexcept { return label_; }
    ClassKind kind() const noexcept { return label_.kind; }
    /// Lexicographically smallest position map in the class.
    const IndexPermutation& representative() const noexcept { return representative_; }

    /// Row set as a slot list ordered by party, ket before bra: "k1,b1,b3".
    std::string id() const;
    std::vector<Slot> row_slots() const;

    bool operator==(const CanonicalClass& other) const noexcept {
        return parties_ == other.parties_ && row_set_ == other.row_set_;
    }
    /// Canonical class order: kind, then the party sets.
    bool operator<(const CanonicalClass& other) const;

private:
    CanonicalClass(int parties, SlotMask row_set, ClassLabel label, IndexPermutation representative);

    int parties_;
    SlotMask row_set_;
    ClassLabel label_;
    IndexPermutation representative_;
};

/// Source slots that sigma sends to row positions, before normalization.
SlotMask row_set_of(const IndexPermutation& sigma);

CanonicalClass canonical_form(const IndexPermutation& sigma);

/// Class of a permuted matrix, read from its layout.
CanonicalClass canonical_form(const GeneralMatrix& m);

/// Parses a class id ("k1,b1,b3", either side of the complement).
CanonicalClass parse_class_id(int parties, const std::string& id);

std::string classify_permutation_label(const IndexPermutation& sigma);

struct ClassPopulation {
    CanonicalClass cls;
    std::uint64_t population = 0;
};

/// Brute force over all (2N)! permutations, 1 <= N <= 5, in canonical order.
std::vector<ClassPopulation> enumerate_classes(int parties);

/// The same classes built from the C(2N, N) row sets directly.
std::vector<CanonicalClass> class_catalog(int parties);

/// Calls visit(rank, sigma) for every permutation of 2N positions in
/// lexicographic order.
template <class Visit>
void for_each_permutation(int parties, Visit&& visit);

/// For every permutation in lexicographic order, the index of its class in
/// enumerate_classes(parties).
std::vector<std::uint32_t> analytic_partition(int parties);

/// Row set with every ket slot exchanged for its bra slot.
SlotMask exchange_kets_and_bras(int parties, SlotMask rows);

/// Class reached by exchanging every ket slot with its bra slot. For a
/// Hermitian source this relabeling equals entrywise conjugation, so a class
/// and its partner have identical spectra on every density matrix.
CanonicalClass hermitian_partner(const CanonicalClass& cls);

/// analytic_partition with each class merged with its hermitian_partner;
/// labels index enumerate_classes(parties) at the smaller class of the pair.
std::vector<std::uint32_t> hermitian_partition(int parties);

struct OracleGrouping {
    /// group_of[rank] for every permutation in lexicographic order.
    std::vector<std::uint32_t> group_of;
    std::vector<std::uint64_t> group_sizes;
    /// First (lexicographically smallest) member of each group.
    std::vector<IndexPermutation> representatives;
};

enum class OracleEnsemble {
    /// Full-rank random density matrices.
    DensityMatrices,
    /// Complex Gaussian matrices scaled to unit Frobenius norm; no Hermitian
    /// symmetry, so only the index permutation itself can tie two spectra.
    GeneralMatrices,
};

struct OracleOptions {
    int dim = 2;
    int samples = 5;
    std::uint64_t seed = 1729;
    double tol = kDefaultSpectrumTolerance;
    OracleEnsemble ensemble = OracleEnsemble::DensityMatrices;
};

std::string_view to_string(OracleEnsemble ensemble);

/// Groups all (2N)! permutations by their singular values on `samples` random
/// matrices of the chosen ensemble with every dimension equal to `dim`. Two permutations
/// share a group iff their spectra agree within `tol` on every sample
/// (compared against the group's first member). Throws ResourceLimit for
/// N >= 5 with dim >= 3.
OracleGrouping oracle_grouping(int parties, const OracleOptions& options = {});

/// True iff the two labelings induce the same partition.
bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// ---------------------------------------------------------------- inline

template <class Visit>
void for_each_permutation(int parties, Visit&& visit) {
    std::vector<int> current(static_cast<std::size_t>(2 * parties));
    std::iota(current.begin(), current.end(), 0);
    std::uint64_t rank = 0;
    do {
        visit(rank++, std::as_const(current));
    } while (std::next_permutation(current.begin(), current.end()));
}

} // namespace permsep
