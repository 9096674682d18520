#pragma once

#include "permsep/classifier.hpp"
#include "permsep/tensor.hpp"

#include <vector>

namespace permsep {

/// Margin over the separable bound 1 before a trace norm counts as detection.
inline constexpr double kDefaultDetectionTolerance = 1e-9;

struct CriterionVerdict {
    /// Trace norm of the permuted matrix.
    double value = 0.0;
    /// value > 1 + tolerance.
    bool detected = false;
    CanonicalClass criterion;
    double tolerance = kDefaultDetectionTolerance;
};

/// Direct realignment of a bipartite state: the basic operator
/// |i1><i1'| (x) |i2><i2'| goes to |i1'><i2'| (x) |i1><i2|, so rows are
/// indexed by (i1', i1) and columns by (i2', i2). Shape d1^2 x d2^2.
GeneralMatrix realign(const DensityMatrix& rho);

/// The same matrix built as V^L ((rho V^R)^{t_2}) from index maps.
GeneralMatrix realign_via_swap(const DensityMatrix& rho);

/// (rho V_{jk}^R)^{t_l}, l in {j, k}.
GeneralMatrix one_side_criterion(const DensityMatrix& rho, int j, int k, int l);

/// Position map realizing one_side_criterion on an N-party layout.
IndexPermutation one_side_permutation(int parties, int j, int k, int l);

CriterionVerdict evaluate_criterion(const DensityMatrix& rho, const IndexPermutation& sigma,
                                    double tol = kDefaultDetectionTolerance);

/// Evaluates a class through its representative permutation.
CriterionVerdict evaluate_class(const DensityMatrix& rho, const CanonicalClass& cls,
                                double tol = kDefaultDetectionTolerance);

/// One verdict per non-trivial class for rho's party count, in canonical
/// class order. Classes are evaluated concurrently.
std::vector<CriterionVerdict> evaluate_all_classes(const DensityMatrix& rho, double tol = kDefaultDetectionTolerance);

} // namespace permsep
