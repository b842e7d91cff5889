#include "greedylab/gap_sequence.hpp"

#include <algorithm>
#include <sstream>

namespace greedylab {

namespace {

Index isqrt(const Index& n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

bool is_fourth_power(const Index& n) {
    Index r = iroot4(n);
    return r * r * r * r == n;
}

}  // namespace

Index iroot4(const Index& n) {
    if (n < 0) throw std::domain_error("iroot4 of negative value");
    Index r = isqrt(isqrt(n));
    // floor(sqrt(floor(sqrt(n)))) == floor(n^(1/4)); nudge defensively anyway.
    while ((r + 1) * (r + 1) * (r + 1) * (r + 1) <= n) ++r;
    while (r > 0 && r * r * r * r > n) --r;
    return r;
}

GapSequence::GapSequence(Rule rule, std::int64_t d, std::vector<std::int64_t> pattern)
    : rule_(rule), d_(d), pattern_(std::move(pattern)) {
    prefix_.assign(1, 0);
    for (std::int64_t v : pattern_) prefix_.push_back(prefix_.back() + v);
    period_sum_ = prefix_.back();
}

GapSequence GapSequence::constant(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("gap terms must be positive integers");
    return GapSequence(Rule::Constant, d, {});
}

GapSequence GapSequence::periodic(std::vector<std::int64_t> pattern) {
    if (pattern.empty()) throw std::invalid_argument("periodic gap rule needs a nonempty pattern");
    for (std::int64_t v : pattern)
        if (v < 1) throw std::invalid_argument("gap terms must be positive integers");
    return GapSequence(Rule::Periodic, 1, std::move(pattern));
}

GapSequence GapSequence::linear() { return GapSequence(Rule::Linear, 1, {}); }

GapSequence GapSequence::quartic_marked() { return GapSequence(Rule::QuarticMarked, 1, {}); }

GapSequence GapSequence::parse(const std::string& text) {
    if (text == "linear" || text == "n") return linear();
    if (text == "quartic" || text == "quartic-marked") return quartic_marked();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon), tail = text.substr(colon + 1);
        if (head == "const") return constant(std::stoll(tail));
        if (head == "periodic" || head == "list") {
            std::vector<std::int64_t> vals;
            std::stringstream ss(tail);
            std::string item;
            while (std::getline(ss, item, ',')) vals.push_back(std::stoll(item));
            return periodic(std::move(vals));
        }
    }
    throw std::invalid_argument("unknown gap rule: " + text);
}

std::string GapSequence::to_string() const {
    switch (rule_) {
        case Rule::Constant: return "const:" + std::to_string(d_);
        case Rule::Linear: return "linear";
        case Rule::QuarticMarked: return "quartic";
        case Rule::Periodic: {
            std::string s = "periodic:";
            for (std::size_t i = 0; i < pattern_.size(); ++i)
                s += (i ? "," : "") + std::to_string(pattern_[i]);
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

Index GapSequence::a(const Index& n) const {
    if (n < 1) throw std::invalid_argument("a_n defined for n >= 1");
    switch (rule_) {
        case Rule::Constant: return d_;
        case Rule::Linear: return n;
        case Rule::QuarticMarked: return is_fourth_power(n) ? 2 : 1;
        case Rule::Periodic: {
            Index r = (n - 1) % static_cast<std::int64_t>(pattern_.size());
            return pattern_[r.convert_to<std::size_t>()];
        }
    }
    throw std::logic_error("unreachable");
}

Index GapSequence::b(const Index& n) const {
    if (n < 0) throw std::invalid_argument("b_n defined for n >= 0");
    switch (rule_) {
        case Rule::Constant: return d_ * n;
        case Rule::Linear: return n * (n + 1) / 2;
        case Rule::QuarticMarked: return n + iroot4(n);
        case Rule::Periodic: {
            auto len = static_cast<std::int64_t>(pattern_.size());
            Index q = n / len, r = n % len;
            return q * period_sum_ + prefix_[r.convert_to<std::size_t>()];
        }
    }
    throw std::logic_error("unreachable");
}

Index GapSequence::index_at_or_below(const Index& v) const {
    if (v < 0) return 0;
    switch (rule_) {
        case Rule::Constant: return v / d_;
        case Rule::Linear: {
            Index n = (isqrt(8 * v + 1) - 1) / 2;
            while (b(n + 1) <= v) ++n;
            while (n > 0 && b(n) > v) --n;
            return n;
        }
        case Rule::QuarticMarked: {
            Index n = v - iroot4(v);
            if (n < 0) n = 0;
            while (b(n + 1) <= v) ++n;
            while (n > 0 && b(n) > v) --n;
            return n;
        }
        case Rule::Periodic: {
            auto len = static_cast<std::int64_t>(pattern_.size());
            Index q = v / period_sum_;
            Index n = q * len;
            while (b(n + 1) <= v) ++n;
            while (n > 0 && b(n) > v) --n;
            return n;
        }
    }
    throw std::logic_error("unreachable");
}

bool GapSequence::is_partial_sum_value(const Index& v) const {
    if (v < 1) return false;
    Index n = index_at_or_below(v);
    return n >= 1 && b(n) == v;
}

bool GapSequence::bounded() const { return rule_ != Rule::Linear; }

std::optional<Index> GapSequence::max_term() const {
    switch (rule_) {
        case Rule::Constant: return Index(d_);
        case Rule::QuarticMarked: return Index(2);
        case Rule::Periodic: return Index(*std::max_element(pattern_.begin(), pattern_.end()));
        case Rule::Linear: return std::nullopt;
    }
    throw std::logic_error("unreachable");
}

Index GapSequence::marked_count(const Index& m) const {
    if (m < 1) return 0;
    switch (rule_) {
        case Rule::Constant: return d_ >= 2 ? m : Index(0);
        case Rule::Linear: return m >= 2 ? m - 1 : Index(0);
        case Rule::QuarticMarked: return iroot4(m);
        case Rule::Periodic: {
            auto len = static_cast<std::int64_t>(pattern_.size());
            std::int64_t per_block = 0;
            for (std::int64_t v : pattern_) per_block += (v >= 2);
            Index q = m / len, r = m % len;
            Index cnt = q * per_block;
            for (std::int64_t i = 0; i < r; ++i) cnt += (pattern_[static_cast<std::size_t>(i)] >= 2);
            return cnt;
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<Index> GapSequence::first_index_with_next_term_exceeding(const Index& threshold,
                                                                       const Index& after) const {
    switch (rule_) {
        case Rule::Linear:
            // a_{n+1} = n+1 > threshold  <=>  n >= threshold.
            return std::max(Index(after + 1), threshold < 1 ? Index(after + 1) : threshold);
        case Rule::Constant:
            return d_ > threshold ? std::optional<Index>(after + 1) : std::nullopt;
        case Rule::QuarticMarked: {
            if (threshold < 1) return after + 1;
            if (threshold >= 2) return std::nullopt;
            // need a_{n+1} = 2, i.e. n+1 a fourth power >= after+2
            Index k = iroot4(after + 1) + 1;
            return k * k * k * k - 1;
        }
        case Rule::Periodic: {
            Index best = *max_term();
            if (best <= threshold) return std::nullopt;
            Index n = after + 1;
            while (a(n + 1) <= threshold) ++n;  // at most one period of steps
            return n;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace greedylab
