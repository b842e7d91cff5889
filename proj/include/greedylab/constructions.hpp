#pragma once

#include "greedylab/gap_sequence.hpp"
#include "greedylab/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace greedylab {

inline constexpr std::int64_t kDefaultHorizon = 1'000'000;

// Blocks A_k of size k placed between consecutive partial sums of an unbounded
// gap sequence, with the separation inequalities
//   b(n_k) + b(n_{k-1}+1) + k < A_k < b(n_k + 1)
// where n_k is the minimal index after n_{k-1} whose next term exceeds
// 2k^6 + b(n_{k-1}+1). Parameters 1 < p < 2, 1/p + 1/q = 1, 1/p - 1/q <= 1/2.
class BlockGapConstruction {
public:
    static BlockGapConstruction build(GapSequence gap, int depth, double p = 4.0 / 3.0);

    const GapSequence& gap() const { return gap_; }
    int depth() const { return depth_; }
    double p() const { return p_; }
    double q() const { return q_; }

    const Index& n(int k) const { return n_.at(static_cast<std::size_t>(k)); }          // k = 0..K
    const Index& b_at_n(int k) const { return b_n_.at(static_cast<std::size_t>(k)); }
    const Index& b_after_n(int k) const { return b_n1_.at(static_cast<std::size_t>(k)); } // b(n_k+1)

    Index block_lo(int k) const;   // k = 1..K
    Index block_hi(int k) const;
    IndexSet block(int k) const;
    IndexSet blocks_union(int s) const;  // D_s = A_1 union ... union A_s

    // (k, j) with idx = c_{k,j} (j 1-based within A_k), if idx lies in a built block.
    std::optional<std::pair<int, int>> block_slot(const Index& idx) const;

    // Norm evaluation is faithful only for supports within this bound.
    const Index& depth_guard() const { return b_n1_.back(); }

    void validate() const;  // re-checks every invariant, throws on violation

    void save(const std::string& path) const;
    static BlockGapConstruction load(const std::string& path);

    bool operator==(const BlockGapConstruction&) const = default;

private:
    BlockGapConstruction(GapSequence gap, int depth, double p);

    GapSequence gap_;
    int depth_ = 0;
    double p_ = 0.0, q_ = 0.0;
    std::vector<Index> n_, b_n_, b_n1_;
};

// Recursive (p_j, k_j, n_j) choice for the stack of l_{p_j} tail seminorms over a
// gap sequence with infinitely many terms >= 2:
//   m(n_j) = |F_{1,n_j} \ (a_1 + I_{n_j})| >= k_j,
//   k_j^(1/p_j) > j * k_j^(1/p_{j-1}) for j >= 2,
//   n_j > max F_{1,n_{j-1}}.
// Every "choose large enough" resolves to the minimal qualifying value.
class TailStackConstruction {
public:
    static TailStackConstruction build(GapSequence gap, std::vector<double> p_seq,
                                       std::int64_t horizon = kDefaultHorizon);

    const GapSequence& gap() const { return gap_; }
    int depth() const { return static_cast<int>(p_.size()); }     // J
    double p(int j) const { return p_.at(static_cast<std::size_t>(j - 1)); }    // j = 1..J
    std::int64_t k(int j) const { return k_.at(static_cast<std::size_t>(j - 1)); }
    std::int64_t n(int j) const { return n_.at(static_cast<std::size_t>(j - 1)); }
    std::int64_t m(int j) const { return m_.at(static_cast<std::size_t>(j - 1)); }
    std::int64_t a1() const { return a1_; }

    // |F_{1,n} \ (a_1 + I_n)| for this gap sequence.
    static std::int64_t escape_count(const GapSequence& gap, std::int64_t n);

    void validate() const;

    void save(const std::string& path) const;
    static TailStackConstruction load(const std::string& path);

    bool operator==(const TailStackConstruction&) const = default;

private:
    TailStackConstruction() = default;

    GapSequence gap_ = GapSequence::linear();
    std::int64_t a1_ = 1;
    std::vector<double> p_;
    std::vector<std::int64_t> k_, n_, m_;
};

// Bounded gap sequence whose marked indices {n : a_n >= 2} obey the density cap
// |{n <= m : a_n >= 2}| <= alpha * m^(1/4), verified for all m up to the horizon.
class SparseMarkConstruction {
public:
    static SparseMarkConstruction build(GapSequence gap, double alpha,
                                        std::int64_t horizon = 100'000);

    const GapSequence& gap() const { return gap_; }
    double alpha() const { return alpha_; }
    std::int64_t horizon() const { return horizon_; }
    std::int64_t max_gap() const { return max_gap_; }   // M
    std::int64_t m1() const { return m1_; }             // M1 = max{M, ceil(alpha)}

    void validate() const;

    void save(const std::string& path) const;
    static SparseMarkConstruction load(const std::string& path);

    bool operator==(const SparseMarkConstruction&) const = default;

private:
    SparseMarkConstruction() = default;

    GapSequence gap_ = GapSequence::quartic_marked();
    double alpha_ = 1.0;
    std::int64_t horizon_ = 0;
    std::int64_t max_gap_ = 0;
    std::int64_t m1_ = 0;
};

}  // namespace greedylab
