#include "permsep/criteria.hpp"

#include "permsep/error.hpp"
#include "permsep/parallel.hpp"
#include "permsep/spectra.hpp"

#include <optional>

namespace permsep {

namespace {

void require_bipartite(const DensityMatrix& rho, const char* what) {
    if (rho.parties() != 2) {
        throw InvalidArgument(std::string(what) + " requires a bipartite state, got " +
                              std::to_string(rho.parties()) + " parties");
    }
}

void require_tolerance(double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("detection tolerance must be positive");
}

} // namespace

GeneralMatrix realign(const DensityMatrix& rho) {
    require_bipartite(rho, "realign");
    const auto d1 = static_cast<std::size_t>(rho.subsystems().dim(1));
    const auto d2 = static_cast<std::size_t>(rho.subsystems().dim(2));
    const CMatrix& m = rho.entries();
    CMatrix out(d1 * d1, d2 * d2);
    for (std::size_t i1 = 0; i1 < d1; ++i1)
        for (std::size_t i2 = 0; i2 < d2; ++i2)
            for (std::size_t j1 = 0; j1 < d1; ++j1)
                for (std::size_t j2 = 0; j2 < d2; ++j2) out(j1 * d1 + i1, j2 * d2 + i2) = m(i1 * d2 + i2, j1 * d2 + j2);
    std::vector<Slot> layout{{Side::Bra, 1}, {Side::Ket, 1}, {Side::Bra, 2}, {Side::Ket, 2}};
    return GeneralMatrix(rho.subsystems(), std::move(layout), std::move(out));
}

GeneralMatrix realign_via_swap(const DensityMatrix& rho) {
    require_bipartite(rho, "realign_via_swap");
    const int second[] = {2};
    const GeneralMatrix swapped = right_multiply_swap(GeneralMatrix::from_density(rho), 1, 2);
    return left_multiply_swap(transpose_factors(swapped, second), 1, 2);
}

IndexPermutation one_side_permutation(int parties, int j, int k, int l) {
    if (l != j && l != k) throw InvalidArgument("one-side criterion: transposed factor must be j or k");
    const int factors[] = {l};
    return compose(IndexPermutation::transpose_factors(parties, factors), IndexPermutation::swap_columns(parties, j, k));
}

GeneralMatrix one_side_criterion(const DensityMatrix& rho, int j, int k, int l) {
    return apply_permutation(rho, one_side_permutation(rho.parties(), j, k, l));
}

CriterionVerdict evaluate_criterion(const DensityMatrix& rho, const IndexPermutation& sigma, double tol) {
    require_tolerance(tol);
    const double value = trace_norm(apply_permutation(rho, sigma));
    return {value, value > 1.0 + tol, canonical_form(sigma), tol};
}

CriterionVerdict evaluate_class(const DensityMatrix& rho, const CanonicalClass& cls, double tol) {
    if (cls.parties() != rho.parties()) throw InvalidArgument("class and state party counts differ");
    require_tolerance(tol);
    const double value = trace_norm(apply_permutation(rho, cls.representative()));
    return {value, value > 1.0 + tol, cls, tol};
}

std::vector<CriterionVerdict> evaluate_all_classes(const DensityMatrix& rho, double tol) {
    require_tolerance(tol);
    std::vector<CanonicalClass> classes;
    for (auto& cls : class_catalog(rho.parties()))
        if (cls.kind() != ClassKind::Trivial) classes.push_back(std::move(cls));
    std::vector<std::optional<CriterionVerdict>> slots(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) { slots[i] = evaluate_class(rho, classes[i], tol); });
    std::vector<CriterionVerdict> out;
    out.reserve(slots.size());
    for (auto& v : slots) out.push_back(std::move(*v));
    return out;
}

} // namespace permsep
