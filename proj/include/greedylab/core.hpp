#pragma once

#include "greedylab/norm_oracle.hpp"
#include "greedylab/types.hpp"

#include <cstdint>
#include <utility>

namespace greedylab {

// Result of selecting an m-term greedy set Lambda_m(x): every modulus inside
// dominates every modulus outside; ties broken toward smaller indices.
struct GreedyOutcome {
    IndexSet greedy_set;
    double threshold = 0.0;  // m-th largest coefficient modulus
    bool tie_broken = false; // a coefficient outside the set matches the threshold
};

enum class ZeroPadding { Off, On };

// P_A(x): coefficients kept exactly on A. Idempotent.
SparseVector project(const SparseVector& x, const IndexSet& a);

// S_m(x) = P_{1..m}(x); S_0 = 0.
SparseVector partial_sum(const SparseVector& x, const Index& m);

// Largest-modulus index selection. With padding off, m > |support| throws
// "insufficient support"; with padding on, the set is extended by the smallest
// unused indices (zero coefficients).
GreedyOutcome greedy_set(const SparseVector& x, std::int64_t m,
                         ZeroPadding padding = ZeroPadding::Off);

// ||x - P_{Lambda_m(x)}(x)|| under the oracle.
double greedy_residual(const SparseVector& x, std::int64_t m, const NormOracle& norm,
                       ZeroPadding padding = ZeroPadding::Off);

// 1_A and 1_{eps,A}.
SparseVector indicator(const IndexSet& a);
SparseVector indicator(const IndexSet& a, const SignPattern& eps);

inline constexpr std::size_t kSigmaTildeSupportCap = 20;

// Exact minimum of ||x - P_A(x)|| over A subset of support(x) with |A| <= m,
// with a minimizing A. Enumerates bitmasks in ascending order over the sorted
// support; first minimum wins. Support larger than the cap is a hard error.
std::pair<double, IndexSet> sigma_tilde(const SparseVector& x, std::int64_t m,
                                        const NormOracle& norm);

}  // namespace greedylab
