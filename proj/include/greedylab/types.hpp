#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace greedylab {

// Basis-vector index. Arbitrary precision: the separated-block construction over
// a_n = n places blocks at positions that outgrow any fixed-width integer.
using Index = boost::multiprecision::cpp_int;

inline double to_double(const Index& n) { return n.convert_to<double>(); }

inline std::int64_t to_int64(const Index& n) {
    if (n < std::numeric_limits<std::int64_t>::min() || n > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("index does not fit in 64 bits: " + n.str());
    return n.convert_to<std::int64_t>();
}

// Strictly increasing finite set of positive integers.
class IndexSet {
public:
    IndexSet() = default;

    // Elements must be strictly increasing and >= 1.
    explicit IndexSet(std::vector<Index> sorted) : elems_(std::move(sorted)) {
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i] < 1) throw std::invalid_argument("IndexSet: indices must be positive");
            if (i > 0 && elems_[i] <= elems_[i - 1])
                throw std::invalid_argument("IndexSet: elements must strictly increase");
        }
    }

    IndexSet(std::initializer_list<std::int64_t> xs) {
        std::vector<Index> v;
        v.reserve(xs.size());
        for (auto x : xs) v.emplace_back(x);
        *this = IndexSet(std::move(v));
    }

    static IndexSet from_values(std::vector<Index> vals) {
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return IndexSet(std::move(vals));
    }

    // Caller guarantees sortedness, uniqueness, positivity.
    static IndexSet from_sorted_unchecked(std::vector<Index> vals) {
        IndexSet s;
        s.elems_ = std::move(vals);
        return s;
    }

    static IndexSet interval(const Index& lo, const Index& hi) {
        std::vector<Index> v;
        for (Index i = lo; i <= hi; ++i) v.push_back(i);
        return IndexSet(std::move(v));
    }

    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }
    const Index& operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<Index>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    const Index& min() const { require_nonempty(); return elems_.front(); }
    const Index& max() const { require_nonempty(); return elems_.back(); }

    bool contains(const Index& n) const {
        return std::binary_search(elems_.begin(), elems_.end(), n);
    }

    bool is_subset_of(const IndexSet& other) const {
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
    }

    bool disjoint_from(const IndexSet& other) const {
        std::size_t i = 0, j = 0;
        while (i < elems_.size() && j < other.elems_.size()) {
            if (elems_[i] < other.elems_[j]) ++i;
            else if (other.elems_[j] < elems_[i]) ++j;
            else return false;
        }
        return true;
    }

    friend IndexSet set_union(const IndexSet& a, const IndexSet& b) {
        std::vector<Index> v;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return IndexSet(std::move(v));
    }

    friend IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
        std::vector<Index> v;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return IndexSet(std::move(v));
    }

    friend IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
        std::vector<Index> v;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
        return IndexSet(std::move(v));
    }

    // A < B in the order sense: max A < min B. Vacuously true when either side is empty.
    friend bool strictly_precedes(const IndexSet& a, const IndexSet& b) {
        if (a.empty() || b.empty()) return true;
        return a.max() < b.min();
    }

    bool operator==(const IndexSet& other) const = default;

private:
    void require_nonempty() const {
        if (elems_.empty()) throw std::domain_error("IndexSet: empty set has no extreme element");
    }

    std::vector<Index> elems_;
};

// +/-1 sign assignment whose domain is a stated IndexSet.
class SignPattern {
public:
    SignPattern() = default;

    SignPattern(IndexSet domain, std::vector<int> signs)
        : domain_(std::move(domain)), signs_(std::move(signs)) {
        if (domain_.size() != signs_.size())
            throw std::invalid_argument("SignPattern: domain/sign length mismatch");
        for (int s : signs_)
            if (s != 1 && s != -1) throw std::invalid_argument("SignPattern: signs must be +1 or -1");
    }

    static SignPattern all_plus(const IndexSet& domain) {
        return SignPattern(domain, std::vector<int>(domain.size(), 1));
    }

    const IndexSet& domain() const { return domain_; }
    int sign_at(std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signs() const { return signs_; }
    std::size_t size() const { return signs_.size(); }

private:
    IndexSet domain_;
    std::vector<int> signs_;
};

// Finitely supported real coefficient sequence. Stored coefficients are nonzero;
// coefficient() is 0 off the support. Immutable after construction.
class SparseVector {
public:
    SparseVector() = default;

    explicit SparseVector(std::map<Index, double> entries) : entries_(std::move(entries)) {
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (it->first < 1) throw std::invalid_argument("SparseVector: indices must be positive");
            if (it->second == 0.0) it = entries_.erase(it);
            else ++it;
        }
    }

    static SparseVector from_pairs(const std::vector<std::pair<Index, double>>& pairs) {
        std::map<Index, double> m;
        for (const auto& [k, v] : pairs) m[k] += v;
        return SparseVector(std::move(m));
    }

    static SparseVector unit(const Index& n) { return SparseVector({{n, 1.0}}); }

    SparseVector(std::initializer_list<std::pair<std::int64_t, double>> xs) {
        std::map<Index, double> m;
        for (const auto& [k, v] : xs) m[Index(k)] += v;
        *this = SparseVector(std::move(m));
    }

    double coefficient(const Index& n) const {
        auto it = entries_.find(n);
        return it == entries_.end() ? 0.0 : it->second;
    }

    bool zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }
    const std::map<Index, double>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    IndexSet support() const {
        std::vector<Index> v;
        v.reserve(entries_.size());
        for (const auto& [k, _] : entries_) v.push_back(k);
        return IndexSet(std::move(v));
    }

    const Index& max_support() const {
        if (entries_.empty()) throw std::domain_error("SparseVector: zero vector has no support");
        return entries_.rbegin()->first;
    }

    SparseVector scaled(double lambda) const {
        std::map<Index, double> m;
        if (lambda != 0.0)
            for (const auto& [k, v] : entries_) m.emplace(k, lambda * v);
        return SparseVector(std::move(m));
    }

    SparseVector plus(const SparseVector& other) const {
        std::map<Index, double> m = entries_;
        for (const auto& [k, v] : other.entries_) m[k] += v;
        return SparseVector(std::move(m));
    }

    // Coordinates in `a` dropped exactly (no floating subtraction): x - P_A(x).
    SparseVector without(const IndexSet& a) const {
        std::map<Index, double> m;
        for (const auto& [k, v] : entries_)
            if (!a.contains(k)) m.emplace(k, v);
        return SparseVector(std::move(m));
    }

    SparseVector restricted_to(const IndexSet& a) const {
        std::map<Index, double> m;
        for (const auto& [k, v] : entries_)
            if (a.contains(k)) m.emplace(k, v);
        return SparseVector(std::move(m));
    }

    bool operator==(const SparseVector& other) const = default;

private:
    std::map<Index, double> entries_;
};

}  // namespace greedylab
