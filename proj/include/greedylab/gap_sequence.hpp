#pragma once

#include "greedylab/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace greedylab {

// A sequence (a_n) of positive integers together with its partial sums b_n.
// Four named rules, each with closed-form b_n and inverse lookups, so values at
// arbitrarily large n are exact. Immutable.
class GapSequence {
public:
    enum class Rule { Constant, Periodic, Linear, QuarticMarked };

    static GapSequence constant(std::int64_t d);
    // Finite list extended periodically: a_n = pattern[(n-1) mod L].
    static GapSequence periodic(std::vector<std::int64_t> pattern);
    // a_n = n.
    static GapSequence linear();
    // a_n = 2 iff n = k^4 for some k, else 1.
    static GapSequence quartic_marked();

    // "const:3" | "periodic:1,2" | "linear" | "quartic". Throws on anything else.
    static GapSequence parse(const std::string& text);
    std::string to_string() const;

    Rule rule() const { return rule_; }

    Index a(const Index& n) const;          // term a_n, n >= 1
    Index b(const Index& n) const;          // partial sum; b_0 = 0
    Index r(const Index& ell) const { return b(ell); }  // r_ell = max F_{0,ell}

    // max{n >= 0 : b_n <= v}; 0 for v < b_1.
    Index index_at_or_below(const Index& v) const;
    // Whether v equals some b_n, n >= 1.
    bool is_partial_sum_value(const Index& v) const;

    bool bounded() const;
    // max_n a_n for bounded rules.
    std::optional<Index> max_term() const;

    // |{n <= m : a_n >= 2}|.
    Index marked_count(const Index& m) const;

    // Minimal n > after with a_{n+1} > threshold; nullopt when no such n exists
    // (bounded rule whose maximum never exceeds the threshold).
    std::optional<Index> first_index_with_next_term_exceeding(const Index& threshold,
                                                              const Index& after) const;

    bool operator==(const GapSequence& other) const = default;

private:
    GapSequence(Rule rule, std::int64_t d, std::vector<std::int64_t> pattern);

    Rule rule_;
    std::int64_t d_ = 1;                      // Constant
    std::vector<std::int64_t> pattern_;       // Periodic
    std::vector<std::int64_t> prefix_;        // Periodic: prefix_[i] = sum of first i terms
    std::int64_t period_sum_ = 0;
};

// Integer fourth root.
Index iroot4(const Index& n);

}  // namespace greedylab
