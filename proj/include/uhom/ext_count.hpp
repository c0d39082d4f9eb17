#ifndef UHOM_EXT_COUNT_HPP
#define UHOM_EXT_COUNT_HPP

#include <compare>
#include <cstdint>
#include <string>

#include "uhom/error.hpp"

namespace uhom {

/**
 * A count in {0, 1, 2, ...} ∪ {omega}. Addition saturates at omega,
 * comparisons are total with every natural below omega.
 */
class ExtCount {
public:
    constexpr ExtCount() : value_(0), omega_(false) {}
    constexpr ExtCount(std::uint64_t v) : value_(v), omega_(false) {}

    static constexpr ExtCount omega() {
        ExtCount c;
        c.omega_ = true;
        return c;
    }

    constexpr bool is_omega() const { return omega_; }
    constexpr bool is_finite() const { return !omega_; }
    constexpr bool is_zero() const { return !omega_ && value_ == 0; }

    // Only valid for finite counts.
    std::uint64_t finite() const {
        if (omega_) throw_internal("ExtCount::finite() on omega");
        return value_;
    }

    friend constexpr bool operator==(const ExtCount& a, const ExtCount& b) {
        if (a.omega_ != b.omega_) return false;
        return a.omega_ || a.value_ == b.value_;
    }

    friend constexpr std::strong_ordering operator<=>(const ExtCount& a, const ExtCount& b) {
        if (a.omega_ && b.omega_) return std::strong_ordering::equal;
        if (a.omega_) return std::strong_ordering::greater;
        if (b.omega_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    friend constexpr ExtCount operator+(const ExtCount& a, const ExtCount& b) {
        if (a.omega_ || b.omega_) return omega();
        return ExtCount(a.value_ + b.value_);
    }

    // omega * 0 = 0
    friend constexpr ExtCount operator*(const ExtCount& a, const ExtCount& b) {
        if (a.is_zero() || b.is_zero()) return ExtCount(0);
        if (a.omega_ || b.omega_) return omega();
        return ExtCount(a.value_ * b.value_);
    }

    ExtCount& operator+=(const ExtCount& o) { return *this = *this + o; }

    std::string str() const { return omega_ ? "omega" : std::to_string(value_); }

private:
    std::uint64_t value_;
    bool omega_;
};

} // namespace uhom

#endif
