#pragma once

#include <compare>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace admlab {

/// Nonnegative extended real: a finite value in [0, inf) or the distinguished
/// element +inf. Infinity is a state of the object, not a large float, so
/// comparisons and sums are decided case by case.
class RiskValue {
public:
    constexpr RiskValue() noexcept = default;

    /// Throws std::domain_error for negative, NaN or non-finite input.
    static RiskValue finite(double v) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::domain_error("RiskValue::finite: value must be finite and >= 0");
        }
        RiskValue r;
        r.value_ = v;
        return r;
    }

    static constexpr RiskValue infinity() noexcept {
        RiskValue r;
        r.infinite_ = true;
        return r;
    }

    /// Maps +inf to infinity(); otherwise as finite().
    static RiskValue from_double(double v) {
        if (v == std::numeric_limits<double>::infinity()) return infinity();
        return finite(v);
    }

    constexpr bool is_finite() const noexcept { return !infinite_; }
    constexpr bool is_infinite() const noexcept { return infinite_; }

    /// Finite payload; +inf as a double when infinite (for display only).
    constexpr double value() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr RiskValue operator+(RiskValue a, RiskValue b) noexcept {
        if (a.infinite_ || b.infinite_) return infinity();
        RiskValue r;
        r.value_ = a.value_ + b.value_;
        return r;
    }

    RiskValue& operator+=(RiskValue other) noexcept { return *this = *this + other; }

    /// Scaling by a nonnegative weight, with 0 * inf = 0.
    friend RiskValue scale(double weight, RiskValue r) {
        if (!(weight >= 0.0)) throw std::domain_error("scale: weight must be >= 0");
        if (weight == 0.0) return RiskValue{};
        if (r.infinite_) return infinity();
        return finite(weight * r.value_);
    }

    friend constexpr bool operator==(RiskValue a, RiskValue b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend constexpr std::strong_ordering operator<=>(RiskValue a, RiskValue b) noexcept {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, RiskValue r) {
        if (r.infinite_) return os << "inf";
        return os << r.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

}  // namespace admlab
