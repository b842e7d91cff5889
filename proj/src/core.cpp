#include "greedylab/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace greedylab {

SparseVector project(const SparseVector& x, const IndexSet& a) {
    return x.restricted_to(a);
}

SparseVector partial_sum(const SparseVector& x, const Index& m) {
    std::map<Index, double> kept;
    for (const auto& [k, v] : x) {
        if (k > m) break;
        kept.emplace(k, v);
    }
    return SparseVector(std::move(kept));
}

GreedyOutcome greedy_set(const SparseVector& x, std::int64_t m, ZeroPadding padding) {
    if (m < 0) throw std::invalid_argument("greedy_set: m must be nonnegative");
    const auto n = static_cast<std::int64_t>(x.support_size());
    if (m > n && padding == ZeroPadding::Off)
        throw std::invalid_argument("insufficient support");

    // (modulus desc, index asc)
    std::vector<std::pair<double, Index>> order;
    order.reserve(x.support_size());
    for (const auto& [k, v] : x) order.emplace_back(std::fabs(v), k);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    const std::int64_t taken = std::min<std::int64_t>(m, n);
    std::vector<Index> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < taken; ++i) chosen.push_back(order[static_cast<std::size_t>(i)].second);

    double threshold = taken > 0 ? order[static_cast<std::size_t>(taken - 1)].first : 0.0;
    bool tie = false;
    if (m > n) {
        // Pad with the smallest indices not already present; threshold 0 ties with
        // every untouched zero coordinate.
        threshold = 0.0;
        tie = true;
        Index candidate = 1;
        std::int64_t need = m - n;
        std::sort(chosen.begin(), chosen.end());
        while (need > 0) {
            if (!std::binary_search(chosen.begin(), chosen.end(), candidate)) {
                chosen.push_back(candidate);
                std::sort(chosen.begin(), chosen.end());
                --need;
            }
            ++candidate;
        }
    } else if (taken > 0 && taken < n) {
        tie = order[static_cast<std::size_t>(taken)].first == threshold;
    }

    return GreedyOutcome{IndexSet::from_values(std::move(chosen)), threshold, tie};
}

double greedy_residual(const SparseVector& x, std::int64_t m, const NormOracle& norm,
                       ZeroPadding padding) {
    GreedyOutcome g = greedy_set(x, m, padding);
    return norm(x.without(g.greedy_set));
}

SparseVector indicator(const IndexSet& a) {
    return indicator(a, SignPattern::all_plus(a));
}

SparseVector indicator(const IndexSet& a, const SignPattern& eps) {
    if (!(eps.domain() == a)) throw std::invalid_argument("sign pattern domain mismatch");
    std::map<Index, double> m;
    for (std::size_t i = 0; i < a.size(); ++i) m.emplace(a[i], static_cast<double>(eps.sign_at(i)));
    return SparseVector(std::move(m));
}

std::pair<double, IndexSet> sigma_tilde(const SparseVector& x, std::int64_t m,
                                        const NormOracle& norm) {
    if (m < 0) throw std::invalid_argument("sigma_tilde: m must be nonnegative");
    const std::size_t n = x.support_size();
    if (n > kSigmaTildeSupportCap) throw std::domain_error("brute-force cap exceeded");

    const IndexSet supp = x.support();
    double best = norm(x);  // A = empty
    std::uint32_t best_mask = 0;
    const std::uint32_t total = 1u << n;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        if (std::popcount(mask) > m) continue;
        std::vector<Index> drop;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) drop.push_back(supp[i]);
        double val = norm(x.without(IndexSet(std::move(drop))));
        if (val < best) {
            best = val;
            best_mask = mask;
        }
    }
    std::vector<Index> a;
    for (std::size_t i = 0; i < n; ++i)
        if (best_mask & (1u << i)) a.push_back(supp[i]);
    return {best, IndexSet(std::move(a))};
}

}  // namespace greedylab
