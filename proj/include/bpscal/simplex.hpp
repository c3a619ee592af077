#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"

namespace bpscal {

enum class Sense { LessEq, GreaterEq, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;

    bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule.
///
/// Variables are nonnegative unless marked free. The objective is maximized.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_vars) : n_(num_vars), free_(num_vars, false), c_(num_vars, 0.0) {}

    std::size_t num_vars() const noexcept { return n_; }
    std::size_t num_rows() const noexcept { return rows_.size(); }

    void set_free(std::size_t j) { free_.at(j) = true; }

    void set_objective(std::vector<double> c) {
        require(c.size() == n_, ErrorKind::DimensionMismatch, "objective length");
        c_ = std::move(c);
    }

    void add_row(std::vector<double> coef, Sense sense, double rhs) {
        require(coef.size() == n_, ErrorKind::DimensionMismatch, "constraint length");
        for (double v : coef) require(std::isfinite(v), ErrorKind::NonFinite, "constraint coefficient");
        require(std::isfinite(rhs), ErrorKind::NonFinite, "constraint rhs");
        rows_.push_back(Row{std::move(coef), sense, rhs});
    }

    LpResult solve(double tol = 1e-9, std::size_t max_pivots = 200000) const;

private:
    struct Row {
        std::vector<double> coef;
        Sense sense;
        double rhs;
    };

    std::size_t n_;
    std::vector<bool> free_;
    std::vector<double> c_;
    std::vector<Row> rows_;
};

namespace detail {

struct Tableau {
    std::size_t m = 0, cols = 0; // cols excludes the rhs column
    std::vector<double> a;       // m x (cols + 1), row-major
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return a[i * (cols + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * (cols + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols); }

    void pivot(std::size_t r, std::size_t c, std::vector<double>& d, double& z) {
        const double p = at(r, c);
        double* row = &a[r * (cols + 1)];
        for (std::size_t j = 0; j <= cols; ++j) row[j] /= p;
        row[c] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            double* ri = &a[i * (cols + 1)];
            for (std::size_t j = 0; j <= cols; ++j) ri[j] -= f * row[j];
            ri[c] = 0.0;
        }
        double f = d[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < cols; ++j) d[j] -= f * row[j];
            d[c] = 0.0;
            z += f * row[cols];
        }
        basis[r] = c;
    }
};

// Maximizes with reduced profits d over allowed columns; returns false if unbounded.
inline bool run_simplex(Tableau& t, std::vector<double>& d, double& z, const std::vector<bool>& allowed, double tol,
                        std::size_t& pivots, std::size_t max_pivots) {
    for (;;) {
        std::size_t enter = t.cols;
        for (std::size_t j = 0; j < t.cols; ++j)
            if (allowed[j] && d[j] > tol) {
                enter = j;
                break;
            }
        if (enter == t.cols) return true;

        std::size_t leave = t.m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.m; ++i) {
            double aij = t.at(i, enter);
            if (aij <= tol) continue;
            double ratio = t.at(i, t.cols) / aij;
            if (leave == t.m || ratio < best - 1e-12) {
                best = ratio;
                leave = i;
            } else if (ratio <= best + 1e-12 && t.basis[i] < t.basis[leave]) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        if (leave == t.m) return false;
        if (++pivots > max_pivots) throw Error(ErrorKind::LpFailure, "simplex pivot limit exceeded");
        t.pivot(leave, enter, d, z);
    }
}

} // namespace detail

inline LpResult LinearProgram::solve(double tol, std::size_t max_pivots) const {
    // Column layout: structural (free variables split), slacks, artificials.
    std::vector<std::size_t> pos_col(n_), neg_col(n_, SIZE_MAX);
    std::size_t ncol = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        pos_col[j] = ncol++;
        if (free_[j]) neg_col[j] = ncol++;
    }
    const std::size_t nstruct = ncol;
    const std::size_t m = rows_.size();

    std::vector<int> sign(m, 1);
    std::vector<Sense> sense(m);
    std::vector<double> scale(m, 1.0);
    std::size_t nslack = 0, nart = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Row& r = rows_[i];
        double mx = 0.0;
        for (double v : r.coef) mx = std::max(mx, std::abs(v));
        scale[i] = mx > 0.0 ? 1.0 / mx : 1.0;
        Sense s = r.sense;
        if (r.rhs < 0.0) {
            sign[i] = -1;
            if (s == Sense::LessEq) s = Sense::GreaterEq;
            else if (s == Sense::GreaterEq) s = Sense::LessEq;
        }
        sense[i] = s;
        if (s != Sense::Equal) ++nslack;
        if (s != Sense::LessEq) ++nart;
    }

    detail::Tableau t;
    t.m = m;
    t.cols = nstruct + nslack + nart;
    t.a.assign(m * (t.cols + 1), 0.0);
    t.basis.assign(m, 0);
    std::vector<bool> is_art(t.cols, false);

    std::size_t slack = nstruct, art = nstruct + nslack;
    for (std::size_t i = 0; i < m; ++i) {
        const Row& r = rows_[i];
        const double f = sign[i] * scale[i];
        for (std::size_t j = 0; j < n_; ++j) {
            t.at(i, pos_col[j]) = f * r.coef[j];
            if (free_[j]) t.at(i, neg_col[j]) = -f * r.coef[j];
        }
        t.rhs(i) = f * r.rhs;
        if (sense[i] == Sense::LessEq) {
            t.at(i, slack) = 1.0;
            t.basis[i] = slack++;
        } else {
            if (sense[i] == Sense::GreaterEq) t.at(i, slack++) = -1.0;
            t.at(i, art) = 1.0;
            is_art[art] = true;
            t.basis[i] = art++;
        }
    }

    std::size_t pivots = 0;
    std::vector<bool> allowed(t.cols, true);

    // Phase 1: maximize -sum(artificials).
    if (nart > 0) {
        std::vector<double> d(t.cols, 0.0);
        double z = 0.0;
        for (std::size_t j = 0; j < t.cols; ++j) d[j] = is_art[j] ? -1.0 : 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (is_art[t.basis[i]]) {
                for (std::size_t j = 0; j < t.cols; ++j) d[j] += t.at(i, j);
                z -= t.rhs(i);
            }
        for (std::size_t i = 0; i < m; ++i) d[t.basis[i]] = 0.0;
        detail::run_simplex(t, d, z, allowed, tol, pivots, max_pivots);
        double rhs_scale = 1.0;
        for (std::size_t i = 0; i < m; ++i) rhs_scale = std::max(rhs_scale, std::abs(t.rhs(i)));
        if (z < -tol * rhs_scale) return LpResult{LpStatus::Infeasible, {}, 0.0};

        // Drive remaining artificials out of the basis; drop redundant rows.
        std::vector<double> dummy(t.cols, 0.0);
        double dz = 0.0;
        for (std::size_t i = 0; i < t.m;) {
            if (!is_art[t.basis[i]]) {
                ++i;
                continue;
            }
            std::size_t c = t.cols;
            double best = tol;
            for (std::size_t j = 0; j < t.cols; ++j)
                if (!is_art[j] && std::abs(t.at(i, j)) > best) {
                    best = std::abs(t.at(i, j));
                    c = j;
                }
            if (c < t.cols) {
                t.pivot(i, c, dummy, dz);
                ++i;
            } else {
                const std::size_t w = t.cols + 1;
                t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i * w),
                          t.a.begin() + static_cast<std::ptrdiff_t>((i + 1) * w));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
                --t.m;
            }
        }
        for (std::size_t j = 0; j < t.cols; ++j)
            if (is_art[j]) allowed[j] = false;
    }

    // Phase 2.
    std::vector<double> cost(t.cols, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        cost[pos_col[j]] = c_[j];
        if (free_[j]) cost[neg_col[j]] = -c_[j];
    }
    std::vector<double> d = cost;
    double z = 0.0;
    for (std::size_t i = 0; i < t.m; ++i) {
        double cb = cost[t.basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < t.cols; ++j) d[j] -= cb * t.at(i, j);
        z += cb * t.rhs(i);
    }
    for (std::size_t i = 0; i < t.m; ++i) d[t.basis[i]] = 0.0;
    for (std::size_t j = 0; j < t.cols; ++j)
        if (!allowed[j]) d[j] = 0.0;
    if (!detail::run_simplex(t, d, z, allowed, tol, pivots, max_pivots))
        return LpResult{LpStatus::Unbounded, {}, 0.0};

    std::vector<double> col(t.cols, 0.0);
    for (std::size_t i = 0; i < t.m; ++i) col[t.basis[i]] = std::max(0.0, t.rhs(i));
    LpResult res{LpStatus::Optimal, std::vector<double>(n_, 0.0), 0.0};
    for (std::size_t j = 0; j < n_; ++j) {
        res.x[j] = col[pos_col[j]] - (free_[j] ? col[neg_col[j]] : 0.0);
        res.objective += c_[j] * res.x[j];
    }
    return res;
}

} // namespace bpscal
