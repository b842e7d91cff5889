#include "greedylab/constructed_norms.hpp"

#include "greedylab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace greedylab {

BlockGapNorm::BlockGapNorm(std::shared_ptr<const BlockGapConstruction> c)
    : NormOracle("block-gap", 1.0), c_(std::move(c)) {
    for (int k = 1; k <= c_->depth(); ++k)
        block_bounds_.emplace_back(c_->block_lo(k), c_->block_hi(k));
}

void BlockGapNorm::guard(const SparseVector& x) const {
    if (!x.zero() && x.max_support() > c_->depth_guard())
        throw std::domain_error("construction depth exceeded");
}

double BlockGapNorm::block_branch(const SparseVector& x) const {
    guard(x);
    double acc = 0.0;
    for (const auto& [idx, v] : x) {
        // locate idx in a block: bounds ascend, so binary search on lo
        auto it = std::upper_bound(block_bounds_.begin(), block_bounds_.end(), idx,
                                   [](const Index& a, const auto& b) { return a < b.first; });
        if (it == block_bounds_.begin()) continue;
        --it;
        if (idx > it->second) continue;
        const int k = static_cast<int>(it - block_bounds_.begin()) + 1;
        const int j = static_cast<int>(to_int64(idx - it->first)) + 1;
        const double slot = static_cast<double>(k) * (k - 1) / 2.0 + j;
        acc += std::fabs(v) * std::pow(slot, -1.0 / c_->q());
    }
    return acc;
}

double BlockGapNorm::operator()(const SparseVector& x) const {
    guard(x);
    return std::max({block_branch(x), weighted_prefix_sup(x), l2_norm(x)});
}

TailStackNorm::TailStackNorm(std::shared_ptr<const TailStackConstruction> c)
    : NormOracle("tail-stack", 1.0), c_(std::move(c)) {}

double TailStackNorm::tail_branch(const SparseVector& x, int j) const {
    const Index cutoff = Index(c_->a1()) + c_->n(j);
    const double pj = c_->p(j);
    double acc = 0.0;
    for (auto it = x.entries().upper_bound(cutoff); it != x.entries().end(); ++it)
        acc += std::pow(std::fabs(it->second), pj);
    return std::pow(acc, 1.0 / pj);
}

double TailStackNorm::operator()(const SparseVector& x) const {
    double best = linf_norm(x);
    for (int j = 1; j <= c_->depth(); ++j) best = std::max(best, tail_branch(x, j));
    return best;
}

SparseMarkNorm::SparseMarkNorm(std::shared_ptr<const SparseMarkConstruction> c)
    : NormOracle("sparse-mark", 1.0), c_(std::move(c)) {}

double SparseMarkNorm::window_branch(const SparseVector& x) const {
    if (x.zero()) return 0.0;
    const std::int64_t max_s = to_int64(x.max_support());
    double best = 0.0;
    for (std::int64_t m = 1; m * m < max_s; ++m) {
        const Index base = Index(m) * m;
        double run = 0.0;
        auto it = x.entries().upper_bound(base);
        auto end = x.entries().upper_bound(base + m);
        for (; it != end; ++it) {
            const std::int64_t n = to_int64(it->first - base);
            run += it->second / std::sqrt(static_cast<double>(n));
            best = std::max(best, std::fabs(run));
        }
    }
    return best;
}

double SparseMarkNorm::complement_branch(const SparseVector& x) const {
    if (x.zero()) return 0.0;
    const std::int64_t max_s = to_int64(x.max_support());
    if (max_s > (std::int64_t{1} << 24))
        throw std::domain_error("support too large for the progression-complement sweep");
    const GapSequence& gap = c_->gap();
    std::vector<std::pair<std::int64_t, double>> entries;
    entries.reserve(x.support_size());
    for (const auto& [idx, v] : x) entries.emplace_back(to_int64(idx), v);

    // sieve of the partial-sum values b_n <= max support
    std::vector<std::uint8_t> is_psv(static_cast<std::size_t>(max_s) + 1, 0);
    for (Index n = 1;; ++n) {
        Index bn = gap.b(n);
        if (bn > max_s) break;
        const auto slot = static_cast<std::size_t>(to_int64(bn));
        if (slot < is_psv.size()) is_psv[slot] = 1;
    }

    // For fixed shift j the seminorm family is monotone in l, so its sup equals
    // the l2 norm over {p in supp : p > j, p - j not a partial sum}.
    double best_sq = 0.0;
    std::size_t first = 0;
    for (std::int64_t j = 0; j < max_s; ++j) {
        while (first < entries.size() && entries[first].first <= j) ++first;
        double acc = 0.0;
        for (std::size_t t = first; t < entries.size(); ++t) {
            if (!is_psv[static_cast<std::size_t>(entries[t].first - j)])
                acc += entries[t].second * entries[t].second;
        }
        best_sq = std::max(best_sq, acc);
    }
    return std::sqrt(best_sq);
}

double SparseMarkNorm::operator()(const SparseVector& x) const {
    return std::max({linf_norm(x), far_block_sup(x), window_branch(x), complement_branch(x)});
}

NormPtr make_block_gap_norm(std::shared_ptr<const BlockGapConstruction> c) {
    return std::make_shared<BlockGapNorm>(std::move(c));
}
NormPtr make_tail_stack_norm(std::shared_ptr<const TailStackConstruction> c) {
    return std::make_shared<TailStackNorm>(std::move(c));
}
NormPtr make_sparse_mark_norm(std::shared_ptr<const SparseMarkConstruction> c) {
    return std::make_shared<SparseMarkNorm>(std::move(c));
}

}  // namespace greedylab
