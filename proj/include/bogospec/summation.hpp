#pragma once

#include <cmath>

#ifdef __FAST_MATH__
#error "compensated summation requires IEEE semantics; do not build with -ffast-math"
#endif

namespace bogospec {

// Neumaier's variant of Kahan summation. The result depends only on the
// order in which terms are added, so callers fix that order.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    // Merge a partial sum; partials must be merged in a fixed order.
    CompensatedSum& operator+=(const CompensatedSum& other) noexcept
    {
        add(other.sum_);
        add(other.comp_);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace bogospec
