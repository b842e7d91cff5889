#pragma once

#include "greedylab/norm_oracle.hpp"
#include "greedylab/types.hpp"

namespace greedylab {

// (sum |x_n|^p)^(1/p); a quasi-norm for 0 < p < 1.
double lp_norm(const SparseVector& x, double p);
double linf_norm(const SparseVector& x);
double l2_norm(const SparseVector& x);

// sup_n |sum_{k<=n} x_k k^(-1/2)|, attained at n <= max support.
double weighted_prefix_sup(const SparseVector& x);

// max over k of the l2-norm of the k largest moduli among indices > k^2
// (exact maximization of ||P_A(x)||_2 over |A|^2 < A).
double far_block_sup(const SparseVector& x);

NormPtr make_lp_norm(double p);
NormPtr make_linf_norm();
// Konyagin-Temlyakov norm: max of the l2 norm and the weighted partial-sum sup.
NormPtr make_kt_norm();

}  // namespace greedylab
