#pragma once

#include "greedylab/constants.hpp"
#include "greedylab/gap_sequence.hpp"
#include "greedylab/norm_oracle.hpp"
#include "greedylab/types.hpp"

#include <cstdint>
#include <utility>

namespace greedylab {

// Independent brute-force references for validating the fast paths. Caps are
// hard errors, never silent truncation.

// Full enumeration of ||x - P_A(x)|| over A subset of support, |A| <= m,
// walking subsets size by size in lexicographic order. Support cap 20.
std::pair<double, IndexSet> bf_sigma_tilde(const SparseVector& x, std::int64_t m,
                                           const NormOracle& norm);

// Containment test against every F_{j,l} with j <= max S and r_l <= 2 max S.
// Requires max S <= 200.
bool bf_pf_member(const GapSequence& g, const IndexSet& s);

// Enumeration of ||P_A(x)||_2 over all A subset of support with |A|^2 < min A.
// Support cap 12.
double bf_branch2(const SparseVector& x);

// Plain quadruple loop over subsets of {1..max_index} and all sign patterns.
// Caps: size_cap <= 4, max_index <= 12.
double bf_superdemocracy(const NormOracle& norm, const FamilyHandle* family, SetFilter filter,
                         PairConstraint constraint, int size_cap, std::int64_t max_index);

}  // namespace greedylab
