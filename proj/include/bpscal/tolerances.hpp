#pragma once

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace bpscal {

/// Numerical thresholds shared by every module.
///
/// eps_mem    relative slack of cone-membership tests
/// eps_strict minimal margin accepted as strict positivity
/// eps_opt    relative window for scalar minimizers
/// eps_root   absolute bracket width of bisection roots
struct Tolerances {
    double eps_mem = 1e-9;
    double eps_strict = 1e-9;
    double eps_opt = 1e-9;
    double eps_root = 1e-10;

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
        require(ok(eps_mem) && ok(eps_strict) && ok(eps_opt) && ok(eps_root), ErrorKind::InvalidArgument,
                "tolerances must be finite and positive");
        require(eps_root <= eps_mem, ErrorKind::InvalidArgument, "eps_root must not exceed eps_mem");
    }
};

/// Tolerance scale used in membership tests: max(1, a, b).
inline double tol_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

} // namespace bpscal
