#pragma once

#include "greedylab/gap_sequence.hpp"
#include "greedylab/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace greedylab {

// F_{j,l} = j + {b_1, ..., b_l}.
IndexSet f_set(const GapSequence& g, const Index& j, std::int64_t ell);

struct PfWitness {
    bool member = false;
    Index shift;                  // j
    Index length;                 // l
    std::vector<Index> anchors;   // per element s: the i with s = j + b_i
};

struct CoverSearchResult {
    enum class Verdict { Covered, Refuted, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::vector<IndexSet> cover;
    IndexSet leftover;
    std::uint64_t budget_used = 0;
};

// One of: the gap family F_(a_n) of shifted partial-sum sets, the initial
// segments F_0, or all finite sets. The empty set is always a member.
class FamilyHandle {
public:
    enum class Kind { GapFamily, InitialSegments, AllFiniteSets };

    static FamilyHandle gap_family(GapSequence g);
    static FamilyHandle initial_segments();
    static FamilyHandle all_finite_sets();

    Kind kind() const { return kind_; }
    const GapSequence& gap() const;

    bool member(const IndexSet& s) const;

    // Whether s is contained in some family member, with the covering F_{j,l} as
    // witness. Anchor scan: every i1 with b_{i1} <= min s is a candidate shift.
    PfWitness pf_member(const IndexSet& s) const;

    // Smallest |F| over nonempty members.
    std::int64_t min_cardinality() const { return 1; }

    // A member F with |F| >= m and |F intersect {1..m}| <= n, when one exists.
    std::optional<IndexSet> sliding_witness(std::int64_t m, std::int64_t n) const;

    // Greedy set cover first, exhaustive search under the budget second.
    // "Inconclusive" means the budget ran out before either outcome.
    CoverSearchResult covering_search(const IndexSet& b, std::int64_t n,
                                      std::uint64_t budget = 1'000'000) const;

private:
    explicit FamilyHandle(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::optional<GapSequence> gap_;
};

// The explicit M-set cover of a finite set B for a bounded gap sequence:
//   S_i = (min B2 - a_1 + (i-1)) + {b_1, ..., b_{max B2}},  B2 = {n in B : n >= M}.
// Leftover |B \ union S_i| <= M-1 whenever |B2| >= 2, and <= M always.
std::vector<IndexSet> construct_cover(const GapSequence& g, const IndexSet& b);

}  // namespace greedylab
