#include "greedylab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace greedylab {

double lp_norm(const SparseVector& x, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    double acc = 0.0;
    for (const auto& [_, v] : x) acc += std::pow(std::fabs(v), p);
    return std::pow(acc, 1.0 / p);
}

double linf_norm(const SparseVector& x) {
    double best = 0.0;
    for (const auto& [_, v] : x) best = std::max(best, std::fabs(v));
    return best;
}

double l2_norm(const SparseVector& x) {
    double acc = 0.0;
    for (const auto& [_, v] : x) acc += v * v;
    return std::sqrt(acc);
}

double weighted_prefix_sup(const SparseVector& x) {
    double run = 0.0, best = 0.0;
    for (const auto& [k, v] : x) {
        run += v / std::sqrt(to_double(k));
        best = std::max(best, std::fabs(run));
    }
    return best;
}

double far_block_sup(const SparseVector& x) {
    const std::size_t n = x.support_size();
    if (n == 0) return 0.0;
    std::vector<std::pair<Index, double>> entries(x.begin(), x.end());
    double best = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const Index floor_sq = Index(k) * Index(k);
        // moduli at indices > k^2, largest first, ties toward smaller index
        std::vector<double> moduli;
        for (const auto& [idx, v] : entries)
            if (idx > floor_sq) moduli.push_back(std::fabs(v));
        if (moduli.empty()) continue;
        std::stable_sort(moduli.begin(), moduli.end(), std::greater<>());
        if (moduli.size() > k) moduli.resize(k);
        // sum in ascending index order of the selected set for reproducible doubles
        double cut = moduli.back();
        std::size_t still = 0;
        for (double m : moduli) still += (m == cut);
        double acc = 0.0;
        for (const auto& [idx, v] : entries) {
            if (idx <= floor_sq) continue;
            double m = std::fabs(v);
            if (m > cut) acc += v * v;
            else if (m == cut && still > 0) {
                acc += v * v;
                --still;
            }
        }
        best = std::max(best, std::sqrt(acc));
    }
    return best;
}

namespace {

class LpNorm final : public NormOracle {
public:
    explicit LpNorm(double p)
        : NormOracle("l" + format(p), std::min(p, 1.0)), p_(p) {}
    double operator()(const SparseVector& x) const override { return lp_norm(x, p_); }

private:
    static std::string format(double p) {
        std::string s = std::to_string(p);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
    double p_;
};

class LinfNorm final : public NormOracle {
public:
    LinfNorm() : NormOracle("linf", 1.0) {}
    double operator()(const SparseVector& x) const override { return linf_norm(x); }
};

class KtNorm final : public NormOracle {
public:
    KtNorm() : NormOracle("kt", 1.0) {}
    double operator()(const SparseVector& x) const override {
        return std::max(l2_norm(x), weighted_prefix_sup(x));
    }
};

}  // namespace

NormPtr make_lp_norm(double p) { return std::make_shared<LpNorm>(p); }
NormPtr make_linf_norm() { return std::make_shared<LinfNorm>(); }
NormPtr make_kt_norm() { return std::make_shared<KtNorm>(); }

}  // namespace greedylab
