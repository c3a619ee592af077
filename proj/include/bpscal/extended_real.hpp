#pragma once

#include <cmath>
#include <ostream>

#include "error.hpp"

namespace bpscal {

/// A real number or +infinity. Infinity is a separate state, never a sentinel double.
class ExtendedReal {
public:
    static ExtendedReal finite(double v) {
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "ExtendedReal::finite needs a finite value");
        return ExtendedReal(v, false);
    }
    static ExtendedReal plus_infinity() { return ExtendedReal(0.0, true); }

    bool is_finite() const noexcept { return !inf_; }
    bool is_plus_infinity() const noexcept { return inf_; }

    double value() const {
        if (inf_) throw Error(ErrorKind::NoFiniteValue, "value() on +infinity");
        return v_;
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
        if (x.inf_) return os << "+inf";
        return os << x.v_;
    }

private:
    ExtendedReal(double v, bool inf) : v_(v), inf_(inf) {}
    double v_;
    bool inf_;
};

} // namespace bpscal
