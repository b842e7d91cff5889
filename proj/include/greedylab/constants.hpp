#pragma once

#include "greedylab/core.hpp"
#include "greedylab/families.hpp"
#include "greedylab/norm_oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace greedylab {

// Side condition a candidate pair (A, B) must satisfy, |A| <= |B| throughout.
enum class PairConstraint {
    None,                        // (super)democracy
    Disjoint,                    // A and B disjoint
    Precedes,                    // A < B (conservative)
    FamilyStrongDisjoint,        // exists F in family: A subset F, B cap F = empty
    FamilyStrongDisjointPrecedes,// ... and A < B
    FamilyMinimumDisjoint,       // exists F: A subset F, B cap F = empty, min F < B
};

enum class SetFilter { All, FamilyMember, PfMember };

enum class SearchMode { ExactEnumeration, StructuredWitness, RandomSearch };

struct DemocracyWitness {
    IndexSet a, b;
    std::vector<int> eps, delta;  // signs aligned with a / b
    std::string note;
};

struct RatioWitness {
    SparseVector x;
    std::int64_t m = 0;
};

// Lower-bound estimate with the instance that attained it. Replaying the witness
// through the defining ratio reproduces value to 1e-9 relative.
struct ConstantEstimate {
    double value = 0.0;
    std::string mode;
    std::uint64_t budget_used = 0;
    std::optional<DemocracyWitness> pair_witness;
    std::optional<RatioWitness> ratio_witness;
};

struct EstimateOptions {
    int size_cap = 4;
    std::int64_t max_index = 12;
    SearchMode mode = SearchMode::RandomSearch;
    std::uint64_t seed = 1;
    std::uint64_t budget = 4000;  // candidate pairs / vectors examined
};

// ||1_{eps,A}|| / ||1_{delta,B}||; requires |A| <= |B|.
double democracy_ratio(const IndexSet& a, const SignPattern& eps, const IndexSet& b,
                       const SignPattern& delta, const NormOracle& norm);

// Supremum lower bound of democracy_ratio over admissible signed pairs.
// `family` may be null unless the constraint or filter mentions one.
ConstantEstimate estimate_superdemocracy(const NormOracle& norm, const FamilyHandle* family,
                                         SetFilter filter, PairConstraint constraint,
                                         const EstimateOptions& opt);

// Lower bound on the suppression quasi-greedy constant:
// max over sampled x and m of ||x - G_m(x)|| / ||x||.
ConstantEstimate estimate_suppression_qg(const NormOracle& norm, std::uint64_t budget,
                                         std::uint64_t seed);

struct ConditionedRatio {
    double ratio = 0.0;
    bool admissible = false;
};

// ||x - G_m(x)|| / ||x - P_F(x)||, conventions (0/0) = 1 and (pos/0) = +inf.
// Requires |F| <= m.
double almost_greedy_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                           const NormOracle& norm);

// Same ratio; admissible iff F \ Lambda_m(x) < Lambda_m(x) \ F.
ConditionedRatio strong_partial_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                                      const NormOracle& norm);

// Same ratio; admissible iff F is empty or min F <= Lambda_m(x).
ConditionedRatio minimum_partial_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                                       const NormOracle& norm);

// (min modulus over Lambda_m(x)) * ||1_{eps(x),Lambda_m(x)}|| / ||x||.
double truncation_ratio(const SparseVector& x, std::int64_t m, const NormOracle& norm);

// Re-evaluates the stored witness through its defining ratio.
double replay_witness(const ConstantEstimate& est, const NormOracle& norm);

}  // namespace greedylab
