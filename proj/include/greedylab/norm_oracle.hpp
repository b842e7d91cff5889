#pragma once

#include "greedylab/types.hpp"

#include <memory>
#include <string>

namespace greedylab {

// Named, immutable evaluator mapping a finitely supported vector to a nonnegative
// real. p_convexity is the exponent of the p-triangle inequality the evaluator
// declares: ||x+y||^p <= ||x||^p + ||y||^p.
class NormOracle {
public:
    virtual ~NormOracle() = default;

    virtual double operator()(const SparseVector& x) const = 0;

    const std::string& name() const { return name_; }
    double p_convexity() const { return p_convexity_; }

protected:
    NormOracle(std::string name, double p_convexity)
        : name_(std::move(name)), p_convexity_(p_convexity) {
        if (!(p_convexity > 0.0 && p_convexity <= 1.0))
            throw std::invalid_argument("p_convexity must lie in (0,1]");
    }

private:
    std::string name_;
    double p_convexity_;
};

using NormPtr = std::shared_ptr<const NormOracle>;

}  // namespace greedylab
