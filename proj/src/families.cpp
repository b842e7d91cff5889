#include "greedylab/families.hpp"

#include <algorithm>
#include <numeric>

namespace greedylab {

IndexSet f_set(const GapSequence& g, const Index& j, std::int64_t ell) {
    if (j < 0) throw std::invalid_argument("f_set: shift must be nonnegative");
    if (ell < 1) throw std::invalid_argument("f_set: length must be positive");
    std::vector<Index> v;
    v.reserve(static_cast<std::size_t>(ell));
    for (std::int64_t i = 1; i <= ell; ++i) v.push_back(j + g.b(i));
    return IndexSet::from_sorted_unchecked(std::move(v));  // b_n strictly increases
}

FamilyHandle FamilyHandle::gap_family(GapSequence g) {
    FamilyHandle f(Kind::GapFamily);
    f.gap_ = std::move(g);
    return f;
}

FamilyHandle FamilyHandle::initial_segments() { return FamilyHandle(Kind::InitialSegments); }

FamilyHandle FamilyHandle::all_finite_sets() { return FamilyHandle(Kind::AllFiniteSets); }

const GapSequence& FamilyHandle::gap() const {
    if (!gap_) throw std::logic_error("family has no gap sequence");
    return *gap_;
}

bool FamilyHandle::member(const IndexSet& s) const {
    if (s.empty()) return true;
    switch (kind_) {
        case Kind::AllFiniteSets:
            return true;
        case Kind::InitialSegments:
            return s.min() == 1 && s.max() == static_cast<std::int64_t>(s.size());
        case Kind::GapFamily: {
            const Index j = s.min() - gap_->b(1);
            if (j < 0) return false;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s[i] != j + gap_->b(static_cast<std::int64_t>(i) + 1)) return false;
            return true;
        }
    }
    throw std::logic_error("unreachable");
}

PfWitness FamilyHandle::pf_member(const IndexSet& s) const {
    PfWitness w;
    if (s.empty()) {
        w.member = true;
        w.shift = 0;
        w.length = 0;
        return w;
    }
    switch (kind_) {
        case Kind::AllFiniteSets:
            w.member = true;
            w.shift = 0;
            w.length = static_cast<std::int64_t>(s.size());
            return w;
        case Kind::InitialSegments: {
            // hereditary closure of initial segments is everything
            w.member = true;
            w.shift = 0;
            w.length = s.max();
            return w;
        }
        case Kind::GapFamily: {
            const Index anchors_avail = gap_->index_at_or_below(s.min());
            if (anchors_avail > (std::int64_t{1} << 22))
                throw std::domain_error("pf_member: anchor scan too large for this set");
            for (Index i1 = 1; i1 <= anchors_avail; ++i1) {
                const Index j = s.min() - gap_->b(i1);
                bool ok = true;
                std::vector<Index> anchors;
                anchors.reserve(s.size());
                for (const Index& el : s) {
                    if (!gap_->is_partial_sum_value(el - j)) {
                        ok = false;
                        break;
                    }
                    anchors.push_back(gap_->index_at_or_below(el - j));
                }
                if (ok) {
                    w.member = true;
                    w.shift = j;
                    w.length = anchors.back();
                    w.anchors = std::move(anchors);
                    return w;
                }
            }
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<IndexSet> FamilyHandle::sliding_witness(std::int64_t m, std::int64_t n) const {
    if (m < 1) throw std::invalid_argument("sliding_witness: m must be positive");
    if (n < 0) throw std::invalid_argument("sliding_witness: n must be nonnegative");
    switch (kind_) {
        case Kind::GapFamily:
            // j = m pushes every element past m: a 0-sliding witness
            return f_set(*gap_, m, m);
        case Kind::InitialSegments:
            // every segment of size >= m meets {1..m} in all m points
            if (n >= m) return IndexSet::interval(1, m);
            return std::nullopt;
        case Kind::AllFiniteSets:
            return IndexSet::interval(m + 1, 2 * m);
    }
    throw std::logic_error("unreachable");
}

namespace {

// Elements of B covered by the saturated gap-family set with shift j.
std::vector<std::size_t> covered_positions(const GapSequence& g, const IndexSet& b, const Index& j) {
    std::vector<std::size_t> pos;
    for (std::size_t t = 0; t < b.size(); ++t)
        if (b[t] > j && g.is_partial_sum_value(b[t] - j)) pos.push_back(t);
    return pos;
}

}  // namespace

CoverSearchResult FamilyHandle::covering_search(const IndexSet& b, std::int64_t n,
                                                std::uint64_t budget) const {
    if (n < 1) throw std::invalid_argument("covering_search: n must be positive");
    CoverSearchResult res;
    if (b.empty()) {
        res.verdict = CoverSearchResult::Verdict::Covered;
        return res;
    }
    switch (kind_) {
        case Kind::AllFiniteSets:
            res.verdict = CoverSearchResult::Verdict::Covered;
            res.cover.push_back(b);
            res.budget_used = 1;
            return res;
        case Kind::InitialSegments: {
            res.verdict = CoverSearchResult::Verdict::Covered;
            res.cover.push_back(IndexSet::interval(1, b.max()));
            res.budget_used = 1;
            return res;
        }
        case Kind::GapFamily:
            break;
    }

    // Candidates: one saturated set per shift j < max B (larger l only adds
    // elements beyond B, so the saturated set dominates every smaller l).
    const std::int64_t max_b = to_int64(b.max());
    if (max_b > (std::int64_t{1} << 22))
        throw std::domain_error("covering_search: set span too large");
    struct Candidate {
        Index j;
        std::vector<std::size_t> covers;
    };
    std::vector<Candidate> cands;
    for (std::int64_t j = 0; j < max_b; ++j) {
        auto pos = covered_positions(*gap_, b, j);
        if (!pos.empty()) cands.push_back({Index(j), std::move(pos)});
        if (++res.budget_used >= budget) {
            res.verdict = CoverSearchResult::Verdict::Inconclusive;
            return res;
        }
    }

    auto materialize = [&](const Index& j) {
        const Index ell = gap_->index_at_or_below(b.max() - j);
        return f_set(*gap_, j, std::max<std::int64_t>(to_int64(ell), 1));
    };
    auto finish_covered = [&](const std::vector<std::size_t>& chosen) {
        std::vector<bool> covered(b.size(), false);
        for (std::size_t c : chosen) {
            res.cover.push_back(materialize(cands[c].j));
            for (std::size_t t : cands[c].covers) covered[t] = true;
        }
        std::vector<Index> left;
        for (std::size_t t = 0; t < b.size(); ++t)
            if (!covered[t]) left.push_back(b[t]);
        res.leftover = IndexSet(std::move(left));
        res.verdict = CoverSearchResult::Verdict::Covered;
    };

    // Greedy pass: n rounds of best marginal coverage.
    {
        std::vector<bool> covered(b.size(), false);
        std::vector<std::size_t> chosen;
        for (std::int64_t round = 0; round < n && !cands.empty(); ++round) {
            std::size_t best = cands.size();
            std::size_t best_gain = 0;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                std::size_t gain = 0;
                for (std::size_t t : cands[c].covers) gain += !covered[t];
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
                ++res.budget_used;
            }
            if (best == cands.size()) break;
            chosen.push_back(best);
            for (std::size_t t : cands[best].covers) covered[t] = true;
        }
        std::size_t uncovered = 0;
        for (bool c : covered) uncovered += !c;
        if (uncovered <= static_cast<std::size_t>(n)) {
            finish_covered(chosen);
            return res;
        }
    }

    // Exhaustive pass over n-subsets of candidates (repeats cannot help).
    const std::size_t c_count = cands.size();
    const auto pick = static_cast<std::size_t>(std::min<std::int64_t>(n, static_cast<std::int64_t>(c_count)));
    std::vector<std::size_t> combo(pick);
    std::iota(combo.begin(), combo.end(), 0);
    if (pick > 0) {
        while (true) {
            if (++res.budget_used >= budget) {
                res.verdict = CoverSearchResult::Verdict::Inconclusive;
                return res;
            }
            std::vector<bool> covered(b.size(), false);
            for (std::size_t c : combo)
                for (std::size_t t : cands[c].covers) covered[t] = true;
            std::size_t uncovered = 0;
            for (bool c : covered) uncovered += !c;
            if (uncovered <= static_cast<std::size_t>(n)) {
                finish_covered(combo);
                return res;
            }
            // next combination
            std::size_t i = pick;
            while (i > 0 && combo[i - 1] == c_count - pick + (i - 1)) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t t = i; t < pick; ++t) combo[t] = combo[t - 1] + 1;
        }
    } else if (b.size() <= static_cast<std::size_t>(n)) {
        res.verdict = CoverSearchResult::Verdict::Covered;
        res.leftover = b;
        return res;
    }
    res.verdict = CoverSearchResult::Verdict::Refuted;
    return res;
}

std::vector<IndexSet> construct_cover(const GapSequence& g, const IndexSet& b) {
    auto max_term = g.max_term();
    if (!max_term) throw std::invalid_argument("construct_cover: gap sequence must be bounded");
    const std::int64_t m = to_int64(*max_term);
    const Index a1 = g.a(1);

    std::vector<Index> b2_elems;
    for (const Index& el : b)
        if (el >= m) b2_elems.push_back(el);
    IndexSet b2(std::move(b2_elems));

    std::vector<IndexSet> cover;
    cover.reserve(static_cast<std::size_t>(m));
    if (b2.size() >= 2) {
        const std::int64_t ell = to_int64(b2.max());
        if (ell > (std::int64_t{1} << 22)) throw std::domain_error("construct_cover: span too large");
        for (std::int64_t i = 1; i <= m; ++i)
            cover.push_back(f_set(g, b2.min() - a1 + (i - 1), ell));
    } else if (b2.size() == 1) {
        // one set {min B2} covers B2 exactly; repeats are allowed
        for (std::int64_t i = 1; i <= m; ++i) cover.push_back(f_set(g, b2.min() - a1, 1));
    } else {
        for (std::int64_t i = 1; i <= m; ++i) cover.push_back(f_set(g, 0, 1));
    }
    return cover;
}

}  // namespace greedylab
