#pragma once

#include "greedylab/constructions.hpp"
#include "greedylab/norm_oracle.hpp"

#include <memory>

namespace greedylab {

// max{ block-weighted l1, weighted partial-sum sup, l2 } over a block-gap
// construction. The first branch weighs coefficient c_{k,j} (slot j of block k)
// by (k(k-1)/2 + j)^(-1/q). Supports beyond the built depth are rejected.
class BlockGapNorm final : public NormOracle {
public:
    explicit BlockGapNorm(std::shared_ptr<const BlockGapConstruction> c);
    double operator()(const SparseVector& x) const override;

    double block_branch(const SparseVector& x) const;  // the weighted-l1 branch alone
    const BlockGapConstruction& construction() const { return *c_; }

private:
    void guard(const SparseVector& x) const;
    std::shared_ptr<const BlockGapConstruction> c_;
    std::vector<std::pair<Index, Index>> block_bounds_;  // [lo, hi] per block, ascending
};

// max{ l_inf, l_{p_j} norm of the coefficients at indices > a_1 + n_j for j <= J }.
class TailStackNorm final : public NormOracle {
public:
    explicit TailStackNorm(std::shared_ptr<const TailStackConstruction> c);
    double operator()(const SparseVector& x) const override;

    double tail_branch(const SparseVector& x, int j) const;
    const TailStackConstruction& construction() const { return *c_; }

private:
    std::shared_ptr<const TailStackConstruction> c_;
};

// Four branches over a sparse-mark construction:
//   (i)   l_inf;
//   (ii)  far-block sup: max_k l2 of the k largest moduli at indices > k^2;
//   (iii) shifted window sups: max_m max_{k<=m} |sum_{n<=k} x_{m^2+n} n^(-1/2)|;
//   (iv)  progression complement: sup over (j,l) of the l2 norm of coefficients
//         in (j + I_{r_l}) \ F_{j,l}, evaluated at saturation (monotone in l).
class SparseMarkNorm final : public NormOracle {
public:
    explicit SparseMarkNorm(std::shared_ptr<const SparseMarkConstruction> c);
    double operator()(const SparseVector& x) const override;

    double window_branch(const SparseVector& x) const;       // (iii)
    double complement_branch(const SparseVector& x) const;   // (iv)
    const SparseMarkConstruction& construction() const { return *c_; }

private:
    std::shared_ptr<const SparseMarkConstruction> c_;
};

NormPtr make_block_gap_norm(std::shared_ptr<const BlockGapConstruction> c);
NormPtr make_tail_stack_norm(std::shared_ptr<const TailStackConstruction> c);
NormPtr make_sparse_mark_norm(std::shared_ptr<const SparseMarkConstruction> c);

}  // namespace greedylab
