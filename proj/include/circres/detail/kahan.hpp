#pragma once

#include <cmath>

namespace circres::detail {

/// Neumaier-compensated running sum.
template <typename Real>
class CompensatedSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(Real x) {
        add(x);
        return *this;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

}  // namespace circres::detail
