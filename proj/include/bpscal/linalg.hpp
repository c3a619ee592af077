#pragma once

#include <Eigen/Dense>
#include <vector>

#include "point.hpp"

namespace bpscal::linalg {

inline Eigen::MatrixXd rows_to_matrix(const std::vector<Point>& rows, std::size_t n) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_dim(rows[i], n, "matrix row");
        for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

inline std::size_t rank(const std::vector<Point>& rows, std::size_t n, double tol = 1e-10) {
    if (rows.empty() || n == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows_to_matrix(rows, n));
    const auto& s = svd.singularValues();
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

/// Orthonormal basis of {y : <r,y> = 0 for every row r}.
inline std::vector<Point> null_space(const std::vector<Point>& rows, std::size_t n, double tol = 1e-10) {
    std::vector<Point> basis;
    if (rows.empty()) {
        for (std::size_t i = 0; i < n; ++i) basis.push_back(Point::unit(n, i));
        return basis;
    }
    Eigen::MatrixXd a = rows_to_matrix(rows, n);
    if (a.rows() < static_cast<Eigen::Index>(n)) {
        Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        padded.topRows(a.rows()) = a;
        a = padded;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
    const Eigen::MatrixXd& v = svd.matrixV();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
        double sj = j < s.size() ? s(j) : 0.0;
        if (sj > cut) continue;
        Point p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = v(static_cast<Eigen::Index>(i), j);
        basis.push_back(p);
    }
    return basis;
}

/// Euclidean distance from y to the subspace spanned by an orthonormal basis.
inline double distance_to_span(const Point& y, const std::vector<Point>& orthonormal) {
    Point r = y;
    for (const Point& b : orthonormal) r -= b * dot(b, y);
    return norm2(r);
}

} // namespace bpscal::linalg
