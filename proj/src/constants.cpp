#include "greedylab/constants.hpp"

#include "greedylab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace greedylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio_of(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : kInf;
    return num / den;
}

// Some F in the family with A subset F and F disjoint from B (and min F < B when
// `min_before_b`). A must be nonempty.
std::optional<IndexSet> family_witness(const FamilyHandle& fam, const IndexSet& a,
                                       const IndexSet& b, bool min_before_b) {
    if (a.empty()) throw std::invalid_argument("family_witness: A must be nonempty");
    auto accept = [&](const IndexSet& f) -> std::optional<IndexSet> {
        if (!a.is_subset_of(f)) return std::nullopt;
        if (!f.disjoint_from(b)) return std::nullopt;
        if (min_before_b && !b.empty() && !(f.min() < b.min())) return std::nullopt;
        return f;
    };
    switch (fam.kind()) {
        case FamilyHandle::Kind::AllFiniteSets:
            return accept(a);
        case FamilyHandle::Kind::InitialSegments:
            return accept(IndexSet::interval(1, a.max()));
        case FamilyHandle::Kind::GapFamily: {
            const GapSequence& g = fam.gap();
            const Index anchors = g.index_at_or_below(a.min());
            for (Index i1 = 1; i1 <= anchors; ++i1) {
                const Index j = a.min() - g.b(i1);
                bool aligned = true;
                for (const Index& el : a)
                    if (!g.is_partial_sum_value(el - j)) { aligned = false; break; }
                if (!aligned) continue;
                const Index ell = g.index_at_or_below(a.max() - j);
                auto f = accept(f_set(g, j, to_int64(ell)));
                if (f) return f;
            }
            return std::nullopt;
        }
    }
    throw std::logic_error("unreachable");
}

bool pair_admissible(const FamilyHandle* fam, PairConstraint c, const IndexSet& a,
                     const IndexSet& b) {
    if (a.size() > b.size()) return false;
    switch (c) {
        case PairConstraint::None:
            return true;
        case PairConstraint::Disjoint:
            return a.disjoint_from(b);
        case PairConstraint::Precedes:
            return strictly_precedes(a, b);
        case PairConstraint::FamilyStrongDisjoint:
            if (!fam) throw std::invalid_argument("constraint needs a family");
            return a.empty() || family_witness(*fam, a, b, false).has_value();
        case PairConstraint::FamilyStrongDisjointPrecedes:
            if (!fam) throw std::invalid_argument("constraint needs a family");
            return strictly_precedes(a, b) &&
                   (a.empty() || family_witness(*fam, a, b, false).has_value());
        case PairConstraint::FamilyMinimumDisjoint:
            if (!fam) throw std::invalid_argument("constraint needs a family");
            return !a.empty() && family_witness(*fam, a, b, true).has_value();
    }
    throw std::logic_error("unknown constraint");
}

bool set_passes_filter(const FamilyHandle* fam, SetFilter filter, const IndexSet& a) {
    switch (filter) {
        case SetFilter::All: return true;
        case SetFilter::FamilyMember:
            if (!fam) throw std::invalid_argument("filter needs a family");
            return fam->member(a);
        case SetFilter::PfMember:
            if (!fam) throw std::invalid_argument("filter needs a family");
            return fam->pf_member(a).member;
    }
    throw std::logic_error("unknown filter");
}

struct SignSearch {
    std::vector<int> signs;
    double value = 0.0;
};

// Best norm value of 1_{eps,A} over signs by greedy coordinate flips (maximize
// or minimize); deterministic given the start.
SignSearch ascend_signs(const NormOracle& norm, const IndexSet& a, std::vector<int> start,
                        bool maximize, std::uint64_t& evals) {
    auto value = [&](const std::vector<int>& s) {
        ++evals;
        return norm(indicator(a, SignPattern(a, s)));
    };
    SignSearch cur{std::move(start), 0.0};
    cur.value = value(cur.signs);
    bool improved = true;
    int passes = 0;
    while (improved && passes < 6) {
        improved = false;
        ++passes;
        for (std::size_t i = 0; i < cur.signs.size(); ++i) {
            cur.signs[i] = -cur.signs[i];
            double v = value(cur.signs);
            if (maximize ? v > cur.value : v < cur.value) {
                cur.value = v;
                improved = true;
            } else {
                cur.signs[i] = -cur.signs[i];
            }
        }
    }
    return cur;
}

SignSearch best_signs(const NormOracle& norm, const IndexSet& a, bool maximize, Rng& rng,
                      std::uint64_t& evals, int restarts = 3) {
    SignSearch best;
    bool first = true;
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> start(a.size(), 1);
        if (r > 0)
            for (auto& s : start) s = rng.sign();
        SignSearch got = ascend_signs(norm, a, std::move(start), maximize, evals);
        if (first || (maximize ? got.value > best.value : got.value < best.value)) {
            best = std::move(got);
            first = false;
        }
    }
    return best;
}

void consider_pair(const NormOracle& norm, const FamilyHandle* fam, SetFilter filter,
                   PairConstraint constraint, const IndexSet& a, const IndexSet& b, Rng& rng,
                   ConstantEstimate& est, const std::string& note) {
    if (a.empty() || b.empty() || a.size() > b.size()) return;
    if (!set_passes_filter(fam, filter, a)) return;
    if (!pair_admissible(fam, constraint, a, b)) return;
    SignSearch num = best_signs(norm, a, true, rng, est.budget_used);
    SignSearch den = best_signs(norm, b, false, rng, est.budget_used);
    double r = ratio_of(num.value, den.value);
    if (r > est.value) {
        est.value = r;
        est.pair_witness = DemocracyWitness{a, b, num.signs, den.signs, note};
    }
}

void all_sign_extremes(const NormOracle& norm, const IndexSet& a, double& max_v,
                       std::vector<int>& max_s, double& min_v, std::vector<int>& min_s,
                       std::uint64_t& evals) {
    const std::size_t n = a.size();
    max_v = -kInf;
    min_v = kInf;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> signs(n, 1);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) signs[i] = -1;
        double v = norm(indicator(a, SignPattern(a, signs)));
        ++evals;
        if (v > max_v) { max_v = v; max_s = signs; }
        if (v < min_v) { min_v = v; min_s = signs; }
    }
}

ConstantEstimate exact_enumeration(const NormOracle& norm, const FamilyHandle* fam,
                                   SetFilter filter, PairConstraint constraint,
                                   const EstimateOptions& opt) {
    if (opt.max_index > 20) throw std::invalid_argument("exact mode: max_index too large");
    ConstantEstimate est;
    est.mode = "exact-enumeration";
    const auto w = static_cast<std::uint32_t>(opt.max_index);

    struct Entry {
        IndexSet set;
        double max_v, min_v;
        std::vector<int> max_s, min_s;
        bool passes_filter;
    };
    std::vector<Entry> entries;
    for (std::uint32_t mask = 1; mask < (1u << w); ++mask) {
        if (std::popcount(mask) > opt.size_cap) continue;
        std::vector<Index> v;
        for (std::uint32_t i = 0; i < w; ++i)
            if (mask & (1u << i)) v.emplace_back(i + 1);
        Entry e{IndexSet(std::move(v)), 0, 0, {}, {}, false};
        all_sign_extremes(norm, e.set, e.max_v, e.max_s, e.min_v, e.min_s, est.budget_used);
        e.passes_filter = set_passes_filter(fam, filter, e.set);
        entries.push_back(std::move(e));
    }
    for (const Entry& ea : entries) {
        if (!ea.passes_filter) continue;
        for (const Entry& eb : entries) {
            if (ea.set.size() > eb.set.size()) continue;
            if (!pair_admissible(fam, constraint, ea.set, eb.set)) continue;
            double r = ratio_of(ea.max_v, eb.min_v);
            if (r > est.value) {
                est.value = r;
                est.pair_witness = DemocracyWitness{ea.set, eb.set, ea.max_s, eb.min_s, "exact"};
            }
        }
    }
    return est;
}

// Catalog of structured candidate sets inside [1, w]: intervals, final segments,
// family sets, unions of spread points. Versioned so reports can cite it.
std::vector<std::pair<IndexSet, std::string>> structured_catalog(const FamilyHandle* fam,
                                                                 std::int64_t w, int size_cap) {
    std::vector<std::pair<IndexSet, std::string>> out;
    auto add = [&](IndexSet s, const std::string& note) {
        if (!s.empty() && static_cast<int>(s.size()) <= size_cap) out.emplace_back(std::move(s), note);
    };
    for (std::int64_t len = 1; len <= size_cap; len *= 2) {
        add(IndexSet::interval(1, len), "interval@1");
        if (w / 2 + len <= w) add(IndexSet::interval(w / 2 + 1, w / 2 + len), "interval@mid");
        add(IndexSet::interval(w - len + 1, w), "final-segment");
        // arithmetic spread across the window
        std::vector<Index> sp;
        for (std::int64_t i = 0; i < len; ++i) sp.emplace_back(1 + i * std::max<std::int64_t>(1, (w - 1) / std::max<std::int64_t>(len, 2)));
        add(IndexSet::from_values(std::move(sp)), "spread");
    }
    if (fam && fam->kind() == FamilyHandle::Kind::GapFamily) {
        const GapSequence& g = fam->gap();
        for (std::int64_t j : {std::int64_t{0}, std::int64_t{1}, w / 3}) {
            std::int64_t ell = to_int64(g.index_at_or_below(Index(w) - j));
            ell = std::min<std::int64_t>(ell, size_cap);
            if (ell >= 1 && j >= 0) add(f_set(g, j, ell), "family-set");
        }
    }
    return out;
}

ConstantEstimate structured_search(const NormOracle& norm, const FamilyHandle* fam,
                                   SetFilter filter, PairConstraint constraint,
                                   const EstimateOptions& opt) {
    ConstantEstimate est;
    est.mode = "structured-witness/v1";
    Rng rng(opt.seed);
    auto catalog = structured_catalog(fam, opt.max_index, opt.size_cap);
    for (const auto& [a, note_a] : catalog) {
        for (const auto& [b, note_b] : catalog) {
            if (est.budget_used >= opt.budget) return est;
            consider_pair(norm, fam, filter, constraint, a, b, rng, est, note_a + "/" + note_b);
        }
    }
    return est;
}

ConstantEstimate random_search(const NormOracle& norm, const FamilyHandle* fam, SetFilter filter,
                               PairConstraint constraint, const EstimateOptions& opt) {
    ConstantEstimate est;
    est.mode = "random-search";
    Rng rng(opt.seed);
    const std::int64_t w = opt.max_index;

    while (est.budget_used < opt.budget) {
        const auto sa = static_cast<std::size_t>(rng.uniform_int(1, opt.size_cap));
        const auto sb = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(sa), opt.size_cap));
        IndexSet a, b;
        bool have = false;
        for (int attempt = 0; attempt < 64 && !have; ++attempt) {
            // For family-coupled constraints/filters, draw A inside a family set.
            const bool inside_family =
                filter != SetFilter::All || constraint == PairConstraint::FamilyStrongDisjoint ||
                constraint == PairConstraint::FamilyStrongDisjointPrecedes ||
                constraint == PairConstraint::FamilyMinimumDisjoint;
            if (inside_family && fam && fam->kind() == FamilyHandle::Kind::GapFamily) {
                const GapSequence& g = fam->gap();
                const std::int64_t j = rng.uniform_int(0, std::max<std::int64_t>(0, w / 2));
                const std::int64_t ell_cap = to_int64(g.index_at_or_below(Index(w) - j));
                if (ell_cap < 1) continue;
                IndexSet f = f_set(g, j, ell_cap);
                if (filter == SetFilter::FamilyMember) {
                    std::int64_t ell = rng.uniform_int(1, std::min<std::int64_t>(ell_cap, opt.size_cap));
                    a = f_set(g, j, ell);
                } else {
                    if (f.size() < sa) continue;
                    std::vector<Index> chosen;
                    while (chosen.size() < sa) {
                        Index cand = f[static_cast<std::size_t>(
                            rng.uniform_int(0, static_cast<std::int64_t>(f.size()) - 1))];
                        if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end())
                            chosen.push_back(cand);
                    }
                    a = IndexSet::from_values(std::move(chosen));
                }
            } else if (inside_family && fam &&
                       fam->kind() == FamilyHandle::Kind::InitialSegments) {
                const std::int64_t t = rng.uniform_int(static_cast<std::int64_t>(sa), std::max<std::int64_t>(static_cast<std::int64_t>(sa), w / 2));
                if (filter == SetFilter::FamilyMember) a = IndexSet::interval(1, t);
                else a = IndexSet(rng.sample_distinct(1, t, sa));
            } else {
                a = IndexSet(rng.sample_distinct(1, w, sa));
            }
            if (a.size() > sb) continue;
            b = IndexSet(rng.sample_distinct(1, w, sb));
            have = pair_admissible(fam, constraint, a, b) && set_passes_filter(fam, filter, a);
        }
        if (!have) {
            est.budget_used += 1;  // failed sampling round still consumes budget
            continue;
        }
        consider_pair(norm, fam, filter, constraint, a, b, rng, est, "random");
    }
    return est;
}

}  // namespace

double democracy_ratio(const IndexSet& a, const SignPattern& eps, const IndexSet& b,
                       const SignPattern& delta, const NormOracle& norm) {
    if (a.size() > b.size()) throw std::invalid_argument("democracy_ratio: |A| exceeds |B|");
    return ratio_of(norm(indicator(a, eps)), norm(indicator(b, delta)));
}

ConstantEstimate estimate_superdemocracy(const NormOracle& norm, const FamilyHandle* family,
                                         SetFilter filter, PairConstraint constraint,
                                         const EstimateOptions& opt) {
    switch (opt.mode) {
        case SearchMode::ExactEnumeration:
            return exact_enumeration(norm, family, filter, constraint, opt);
        case SearchMode::StructuredWitness:
            return structured_search(norm, family, filter, constraint, opt);
        case SearchMode::RandomSearch:
            return random_search(norm, family, filter, constraint, opt);
    }
    throw std::invalid_argument("unknown search mode");
}

ConstantEstimate estimate_suppression_qg(const NormOracle& norm, std::uint64_t budget,
                                         std::uint64_t seed) {
    ConstantEstimate est;
    est.mode = "structured+random";
    Rng rng(seed);

    auto consider = [&](const SparseVector& x) {
        if (x.zero() || est.budget_used >= budget) return;
        const double nx = norm(x);
        ++est.budget_used;
        const auto s = static_cast<std::int64_t>(x.support_size());
        for (std::int64_t m = 1; m <= s && est.budget_used < budget; ++m) {
            GreedyOutcome g = greedy_set(x, m);
            double r = ratio_of(norm(x.without(g.greedy_set)), nx);
            ++est.budget_used;
            if (r > est.value) {
                est.value = r;
                est.ratio_witness = RatioWitness{x, m};
            }
        }
    };

    // structured families: indicators, decreasing, alternating, two-level mixes
    for (std::int64_t size : {2, 4, 8, 16, 32, 64}) {
        for (std::int64_t base : {std::int64_t{0}, size * size}) {
            std::map<Index, double> dec, alt, ind, mix;
            for (std::int64_t n = 1; n <= size; ++n) {
                const Index idx = Index(base) + n;
                dec[idx] = 1.0 / std::sqrt(static_cast<double>(n));
                alt[idx] = (n % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
                ind[idx] = 1.0;
                mix[idx] = (n <= size / 2) ? 1.0 : 1.0 + 1.0 / static_cast<double>(size);
            }
            consider(SparseVector(std::move(dec)));
            consider(SparseVector(std::move(alt)));
            consider(SparseVector(std::move(ind)));
            consider(SparseVector(std::move(mix)));
        }
    }
    // seeded random vectors
    while (est.budget_used < budget) {
        const std::int64_t size = rng.uniform_int(1, 24);
        const std::int64_t span = rng.uniform_int(size, 4096);
        std::map<Index, double> m;
        for (const Index& idx : rng.sample_distinct(1, span, static_cast<std::size_t>(size)))
            m[idx] = rng.sign() * rng.uniform_range(0.05, 1.0);
        consider(SparseVector(std::move(m)));
    }
    return est;
}

double almost_greedy_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                           const NormOracle& norm) {
    if (static_cast<std::int64_t>(f.size()) > m)
        throw std::invalid_argument("|F| exceeds m");
    GreedyOutcome g = greedy_set(x, m, ZeroPadding::On);
    return ratio_of(norm(x.without(g.greedy_set)), norm(x.without(f)));
}

ConditionedRatio strong_partial_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                                      const NormOracle& norm) {
    if (static_cast<std::int64_t>(f.size()) > m)
        throw std::invalid_argument("|F| exceeds m");
    GreedyOutcome g = greedy_set(x, m, ZeroPadding::On);
    ConditionedRatio out;
    out.admissible = strictly_precedes(set_difference(f, g.greedy_set),
                                       set_difference(g.greedy_set, f));
    out.ratio = ratio_of(norm(x.without(g.greedy_set)), norm(x.without(f)));
    return out;
}

ConditionedRatio minimum_partial_ratio(const SparseVector& x, std::int64_t m, const IndexSet& f,
                                       const NormOracle& norm) {
    if (static_cast<std::int64_t>(f.size()) > m)
        throw std::invalid_argument("|F| exceeds m");
    GreedyOutcome g = greedy_set(x, m, ZeroPadding::On);
    ConditionedRatio out;
    out.admissible = f.empty() || g.greedy_set.empty() || f.min() <= g.greedy_set.min();
    out.ratio = ratio_of(norm(x.without(g.greedy_set)), norm(x.without(f)));
    return out;
}

double truncation_ratio(const SparseVector& x, std::int64_t m, const NormOracle& norm) {
    if (m < 1) throw std::invalid_argument("truncation_ratio: m must be positive");
    GreedyOutcome g = greedy_set(x, m);  // errors when m > |support|
    double min_mod = kInf;
    std::vector<int> signs;
    signs.reserve(g.greedy_set.size());
    for (const Index& idx : g.greedy_set) {
        const double c = x.coefficient(idx);
        min_mod = std::min(min_mod, std::fabs(c));
        signs.push_back(c >= 0.0 ? 1 : -1);
    }
    SparseVector one = indicator(g.greedy_set, SignPattern(g.greedy_set, signs));
    return ratio_of(min_mod * norm(one), norm(x));
}

double replay_witness(const ConstantEstimate& est, const NormOracle& norm) {
    if (est.pair_witness) {
        const auto& w = *est.pair_witness;
        return democracy_ratio(w.a, SignPattern(w.a, w.eps), w.b, SignPattern(w.b, w.delta), norm);
    }
    if (est.ratio_witness) {
        const auto& w = *est.ratio_witness;
        GreedyOutcome g = greedy_set(w.x, w.m, ZeroPadding::On);
        return ratio_of(norm(w.x.without(g.greedy_set)), norm(w.x));
    }
    throw std::logic_error("estimate carries no witness");
}

}  // namespace greedylab
