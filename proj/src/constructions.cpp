#include "greedylab/constructions.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace greedylab {

namespace {

// Tiny "key = value" reader shared by the three construction loaders.
std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open construction file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

const std::string& fetch(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("construction file missing key: " + key);
    return it->second;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BlockGapConstruction::BlockGapConstruction(GapSequence gap, int depth, double p)
    : gap_(std::move(gap)), depth_(depth), p_(p), q_(p / (p - 1.0)) {}

BlockGapConstruction BlockGapConstruction::build(GapSequence gap, int depth, double p) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("p must lie in (1,2)");
    BlockGapConstruction c(std::move(gap), depth, p);
    if (1.0 / c.p_ - 1.0 / c.q_ > 0.5 + 1e-15)
        throw std::invalid_argument("p must satisfy 1/p - 1/q <= 1/2");
    c.n_.push_back(1);
    c.b_n_.push_back(c.gap_.b(1));
    c.b_n1_.push_back(c.gap_.b(2));
    for (int k = 1; k <= depth; ++k) {
        Index threshold = 2 * Index(k) * k * k * k * k * k + c.b_n1_.back();
        auto nk = c.gap_.first_index_with_next_term_exceeding(threshold, c.n_.back());
        if (!nk) throw std::runtime_error("gap sequence not unbounded enough within horizon");
        c.n_.push_back(*nk);
        c.b_n_.push_back(c.gap_.b(*nk));
        c.b_n1_.push_back(c.gap_.b(*nk + 1));
    }
    c.validate();
    return c;
}

Index BlockGapConstruction::block_lo(int k) const {
    if (k < 1 || k > depth_) throw std::out_of_range("block index out of range");
    return b_n_[static_cast<std::size_t>(k)] + b_n1_[static_cast<std::size_t>(k - 1)] + k + 1;
}

Index BlockGapConstruction::block_hi(int k) const { return block_lo(k) + (k - 1); }

IndexSet BlockGapConstruction::block(int k) const {
    return IndexSet::interval(block_lo(k), block_hi(k));
}

IndexSet BlockGapConstruction::blocks_union(int s) const {
    std::vector<Index> v;
    for (int k = 1; k <= s; ++k)
        for (Index i = block_lo(k); i <= block_hi(k); ++i) v.push_back(i);
    return IndexSet::from_values(std::move(v));
}

std::optional<std::pair<int, int>> BlockGapConstruction::block_slot(const Index& idx) const {
    // blocks are pairwise disjoint and ascending in k
    for (int k = 1; k <= depth_; ++k) {
        Index lo = block_lo(k);
        if (idx < lo) return std::nullopt;
        if (idx <= lo + (k - 1)) return std::make_pair(k, static_cast<int>(to_int64(idx - lo)) + 1);
    }
    return std::nullopt;
}

void BlockGapConstruction::validate() const {
    if (n_.size() != static_cast<std::size_t>(depth_) + 1 || n_[0] != 1)
        throw std::runtime_error("block-gap construction: index sequence malformed");
    for (int k = 1; k <= depth_; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (n_[ku] <= n_[ku - 1])
            throw std::runtime_error("block-gap construction: n_k not strictly increasing");
        if (b_n_[ku] != gap_.b(n_[ku]) || b_n1_[ku] != gap_.b(n_[ku] + 1))
            throw std::runtime_error("block-gap construction: partial-sum cache mismatch");
        // gap inequality b(n_k+1) - b(n_k) > 2k^6 + b(n_{k-1}+1)
        Index need = 2 * Index(k) * k * k * k * k * k + b_n1_[ku - 1];
        if (b_n1_[ku] - b_n_[ku] <= need)
            throw std::runtime_error("block-gap construction: gap inequality violated");
        // separation b(n_k) + b(n_{k-1}+1) + k < A_k < b(n_k+1)
        if (!(block_lo(k) > b_n_[ku] + b_n1_[ku - 1] + k))
            throw std::runtime_error("block-gap construction: block starts too early");
        if (!(block_hi(k) < b_n1_[ku]))
            throw std::runtime_error("block-gap construction: block ends too late");
    }
}

void BlockGapConstruction::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write construction file: " + path);
    out << "kind = block-gap\n";
    out << "gap = " << gap_.to_string() << "\n";
    out << "depth = " << depth_ << "\n";
    out << "p = " << format_double(p_) << "\n";
    for (int k = 0; k <= depth_; ++k)
        out << "n" << k << " = " << n_[static_cast<std::size_t>(k)].str() << "\n";
}

BlockGapConstruction BlockGapConstruction::load(const std::string& path) {
    auto kv = read_kv(path);
    if (fetch(kv, "kind") != "block-gap")
        throw std::runtime_error("construction file kind mismatch (want block-gap)");
    GapSequence gap = GapSequence::parse(fetch(kv, "gap"));
    int depth = std::stoi(fetch(kv, "depth"));
    double p = std::stod(fetch(kv, "p"));
    BlockGapConstruction c(gap, depth, p);
    for (int k = 0; k <= depth; ++k) {
        Index nk(fetch(kv, "n" + std::to_string(k)));
        c.n_.push_back(nk);
        c.b_n_.push_back(gap.b(nk));
        c.b_n1_.push_back(gap.b(nk + 1));
    }
    c.validate();
    return c;
}

std::int64_t TailStackConstruction::escape_count(const GapSequence& gap, std::int64_t n) {
    // |{i <= n : b_i > a_1 + n - 1}| = n - min(n, index_at_or_below(a_1 + n - 1))
    Index a1 = gap.a(1);
    Index inside = gap.index_at_or_below(a1 + n - 1);
    if (inside > n) inside = n;
    return n - to_int64(inside);
}

TailStackConstruction TailStackConstruction::build(GapSequence gap, std::vector<double> p_seq,
                                                   std::int64_t horizon) {
    if (p_seq.empty()) throw std::invalid_argument("p sequence must be nonempty");
    for (std::size_t j = 0; j < p_seq.size(); ++j) {
        if (!(p_seq[j] > 1.0)) throw std::invalid_argument("p sequence must stay above 1");
        if (j > 0 && !(p_seq[j] < p_seq[j - 1]))
            throw std::invalid_argument("p sequence must strictly decrease");
    }
    TailStackConstruction c;
    c.gap_ = std::move(gap);
    c.a1_ = to_int64(c.gap_.a(1));
    c.p_ = std::move(p_seq);

    const int depth = static_cast<int>(c.p_.size());
    for (int j = 1; j <= depth; ++j) {
        std::int64_t kj;
        if (j == 1) {
            kj = 2;  // minimal k_1 > 1
        } else {
            // minimal k > k_{j-1} with k^(1/p_j) > j * k^(1/p_{j-1})
            const double expo = 1.0 / c.p_[static_cast<std::size_t>(j - 1)] -
                                1.0 / c.p_[static_cast<std::size_t>(j - 2)];
            kj = c.k_.back() + 1;
            while (kj <= horizon && !(std::pow(static_cast<double>(kj), expo) > j)) ++kj;
            if (kj > horizon)
                throw std::runtime_error("tail-stack construction: horizon exhausted finding k");
        }
        std::int64_t lo = (j == 1) ? 2 : to_int64(Index(1) + c.gap_.b(c.n_.back())) + 1;
        std::int64_t nj = lo;
        while (nj <= horizon && escape_count(c.gap_, nj) < kj) ++nj;
        if (nj > horizon)
            throw std::runtime_error("tail-stack construction: horizon exhausted finding n");
        c.k_.push_back(kj);
        c.n_.push_back(nj);
        c.m_.push_back(escape_count(c.gap_, nj));
    }
    c.validate();
    return c;
}

void TailStackConstruction::validate() const {
    const int depth = this->depth();
    for (int j = 1; j <= depth; ++j) {
        const auto ju = static_cast<std::size_t>(j - 1);
        if (m_[ju] < k_[ju])
            throw std::runtime_error("tail-stack construction: escape count below k");
        if (m_[ju] != escape_count(gap_, n_[ju]))
            throw std::runtime_error("tail-stack construction: cached escape count stale");
        if (j >= 2) {
            if (k_[ju] <= k_[ju - 1] || n_[ju] <= n_[ju - 1])
                throw std::runtime_error("tail-stack construction: sequences must increase");
            if (!(n_[ju] > to_int64(Index(1) + gap_.b(n_[ju - 1]))))
                throw std::runtime_error("tail-stack construction: n_j inside previous set");
            const double expo = 1.0 / p_[ju] - 1.0 / p_[ju - 1];
            if (!(std::pow(static_cast<double>(k_[ju]), expo) > j))
                throw std::runtime_error("tail-stack construction: exponent inequality violated");
        }
    }
}

void TailStackConstruction::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write construction file: " + path);
    out << "kind = tail-stack\n";
    out << "gap = " << gap_.to_string() << "\n";
    out << "depth = " << depth() << "\n";
    for (int j = 1; j <= depth(); ++j) {
        out << "p" << j << " = " << format_double(p(j)) << "\n";
        out << "k" << j << " = " << k(j) << "\n";
        out << "n" << j << " = " << n(j) << "\n";
    }
}

TailStackConstruction TailStackConstruction::load(const std::string& path) {
    auto kv = read_kv(path);
    if (fetch(kv, "kind") != "tail-stack")
        throw std::runtime_error("construction file kind mismatch (want tail-stack)");
    TailStackConstruction c;
    c.gap_ = GapSequence::parse(fetch(kv, "gap"));
    c.a1_ = to_int64(c.gap_.a(1));
    int depth = std::stoi(fetch(kv, "depth"));
    for (int j = 1; j <= depth; ++j) {
        c.p_.push_back(std::stod(fetch(kv, "p" + std::to_string(j))));
        c.k_.push_back(std::stoll(fetch(kv, "k" + std::to_string(j))));
        c.n_.push_back(std::stoll(fetch(kv, "n" + std::to_string(j))));
        c.m_.push_back(escape_count(c.gap_, c.n_.back()));
    }
    c.validate();
    return c;
}

SparseMarkConstruction SparseMarkConstruction::build(GapSequence gap, double alpha,
                                                     std::int64_t horizon) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    std::int64_t count = 0;
    const double alpha4 = alpha * alpha * alpha * alpha;
    for (std::int64_t m = 1; m <= horizon; ++m) {
        if (gap.a(m) >= 2) {
            ++count;
            // count > alpha * m^(1/4) compared as count^4 > alpha^4 * m, with a hair
            // of slack so exact equality (quartic marks, alpha = 1) never trips.
            const double c4 = std::pow(static_cast<double>(count), 4.0);
            if (c4 > alpha4 * static_cast<double>(m) * (1.0 + 1e-12)) {
                std::ostringstream msg;
                msg << "density cap violated at m=" << m << " (count " << count << " > "
                    << alpha * std::pow(static_cast<double>(m), 0.25) << ")";
                throw std::runtime_error(msg.str());
            }
        }
    }
    auto max_term = gap.max_term();
    if (!max_term)
        throw std::runtime_error("gap sequence unbounded: max term undefined for this construction");
    SparseMarkConstruction c;
    c.gap_ = std::move(gap);
    c.alpha_ = alpha;
    c.horizon_ = horizon;
    c.max_gap_ = to_int64(*max_term);
    c.m1_ = std::max<std::int64_t>(c.max_gap_, static_cast<std::int64_t>(std::ceil(alpha)));
    return c;
}

void SparseMarkConstruction::validate() const {
    SparseMarkConstruction again = build(gap_, alpha_, horizon_);
    if (!(again == *this)) throw std::runtime_error("sparse-mark construction: fields inconsistent");
}

void SparseMarkConstruction::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write construction file: " + path);
    out << "kind = sparse-mark\n";
    out << "gap = " << gap_.to_string() << "\n";
    out << "alpha = " << format_double(alpha_) << "\n";
    out << "horizon = " << horizon_ << "\n";
}

SparseMarkConstruction SparseMarkConstruction::load(const std::string& path) {
    auto kv = read_kv(path);
    if (fetch(kv, "kind") != "sparse-mark")
        throw std::runtime_error("construction file kind mismatch (want sparse-mark)");
    return build(GapSequence::parse(fetch(kv, "gap")), std::stod(fetch(kv, "alpha")),
                 std::stoll(fetch(kv, "horizon")));
}

}  // namespace greedylab
