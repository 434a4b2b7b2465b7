#pragma once

// Independent brute-force reference implementations used only by tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

// Convex hull membership in the plane by facet enumeration: z is outside
// iff some segment (i,j) has every sample point on one closed side and z
// strictly on the other.
inline bool hull_contains_2d(const Eigen::Vector2d& z, const Eigen::MatrixXd& pts,
                             double tol = 1e-9) {
    const int m = static_cast<int>(pts.rows());
    if (m == 1) return (z - pts.row(0).transpose()).norm() <= tol;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const Eigen::Vector2d a = pts.row(i), b = pts.row(j);
            const Eigen::Vector2d e = b - a;
            const Eigen::Vector2d n(-e.y(), e.x());
            if (n.norm() == 0) continue;
            bool all_below = true;
            for (int t = 0; t < m && all_below; ++t)
                all_below = n.dot(Eigen::Vector2d(pts.row(t)) - a) <= tol;
            if (all_below && n.dot(z - a) > tol) return false;
        }
    }
    // No separating facet; degenerate (collinear) clouds need the projection
    // interval check as well.
    Eigen::MatrixXd centered = pts.rowwise() - pts.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    if (svd.singularValues()(1) <= tol * std::max(1.0, svd.singularValues()(0))) {
        const Eigen::Vector2d dir = svd.matrixV().col(0);
        const Eigen::Vector2d base = pts.row(0);
        // Off-line component must vanish.
        const Eigen::Vector2d off = (z - base) - dir * dir.dot(z - base);
        if (off.norm() > tol * std::max(1.0, z.norm())) return false;
        double lo = 1e300, hi = -1e300;
        for (int t = 0; t < m; ++t) {
            const double p = dir.dot(Eigen::Vector2d(pts.row(t)) - base);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        const double p = dir.dot(z - base);
        return p >= lo - tol && p <= hi + tol;
    }
    return true;
}

// Halfspace depth in the plane by candidate-line enumeration, O(m^2).
// The minimum closed-halfplane count is attained at directions where no
// point lies on the boundary line, so mid-gap angles between the point
// directions suffice.
inline double tukey_depth_2d_bruteforce(const Eigen::Vector2d& z,
                                        const Eigen::MatrixXd& pts) {
    const int m = static_cast<int>(pts.rows());
    int coincident = 0;
    std::vector<Eigen::Vector2d> v;
    for (int i = 0; i < m; ++i) {
        Eigen::Vector2d d = Eigen::Vector2d(pts.row(i)) - z;
        if (d.norm() == 0)
            ++coincident;
        else
            v.push_back(d);
    }
    if (v.empty()) return 1.0;
    std::vector<double> ang;
    for (const auto& d : v) {
        double a = std::fmod(std::atan2(d.y(), d.x()), std::numbers::pi);
        if (a < 0) a += std::numbers::pi;
        ang.push_back(a);
    }
    std::sort(ang.begin(), ang.end());
    ang.erase(std::unique(ang.begin(), ang.end()), ang.end());
    std::vector<double> cand;
    const int q = static_cast<int>(ang.size());
    for (int i = 0; i < q; ++i) {
        const double next = (i + 1 < q) ? ang[i + 1] : ang[0] + std::numbers::pi;
        cand.push_back(0.5 * (ang[i] + next));
    }
    int best = static_cast<int>(v.size());
    for (double a : cand) {
        // Normal perpendicular to the mid-gap direction: count flips happen
        // exactly when the normal is orthogonal to a point direction.
        const Eigen::Vector2d u(-std::sin(a), std::cos(a));
        int pos = 0;
        for (const auto& d : v) pos += u.dot(d) > 0;
        best = std::min({best, pos, static_cast<int>(v.size()) - pos});
    }
    return static_cast<double>(coincident + best) / m;
}

// Exhaustive minimum covariance determinant over all h-subsets.
inline double mcd_min_determinant(const Eigen::MatrixXd& pts, int h) {
    const int m = static_cast<int>(pts.rows());
    std::vector<int> idx(h);
    for (int i = 0; i < h; ++i) idx[i] = i;
    double best = 1e300;
    while (true) {
        Eigen::MatrixXd sub(h, pts.cols());
        for (int i = 0; i < h; ++i) sub.row(i) = pts.row(idx[i]);
        Eigen::MatrixXd centered = sub.rowwise() - sub.colwise().mean();
        const Eigen::MatrixXd cov = centered.transpose() * centered / (h - 1);
        const double det = cov.determinant();
        if (det > 0) best = std::min(best, det);
        int i = h - 1;
        while (i >= 0 && idx[i] == m - h + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < h; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

// Best origin-line error count by dense candidate enumeration: for every
// candidate normal direction (mid-gap between point angles, both signs),
// count misclassified points under the rule sign(n.x) -> class 1/2 with
// zero mapped to class 1.
inline int best_origin_line_errors(const std::vector<std::array<double, 2>>& pts,
                                   const std::vector<int>& labels) {
    std::vector<double> ang;
    for (const auto& p : pts) {
        if (p[0] == 0 && p[1] == 0) continue;
        double a = std::fmod(std::atan2(p[1], p[0]), std::numbers::pi);
        if (a < 0) a += std::numbers::pi;
        ang.push_back(a);
    }
    if (ang.empty()) {
        int err = 0;
        for (int lab : labels) err += lab != 1;
        return err;
    }
    std::sort(ang.begin(), ang.end());
    ang.erase(std::unique(ang.begin(), ang.end()), ang.end());
    std::vector<double> cand;  // mid-gap (generic) normals only
    const int q = static_cast<int>(ang.size());
    for (int i = 0; i < q; ++i) {
        const double next = (i + 1 < q) ? ang[i + 1] : ang[0] + std::numbers::pi;
        cand.push_back(0.5 * (ang[i] + next));
    }
    int best = static_cast<int>(pts.size());
    for (double a : cand) {
        for (int sign = -1; sign <= 1; sign += 2) {
            const double nx = -sign * std::sin(a), ny = sign * std::cos(a);
            int err = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double v = nx * pts[i][0] + ny * pts[i][1];
                const int pred = v > 0 ? 1 : (v < 0 ? 2 : 1);
                err += pred != labels[i];
            }
            best = std::min(best, err);
        }
    }
    return best;
}

// Hard-margin dual by active-set enumeration (small n only): maximize
// 1'l - l'D l / 2 subject to l >= 0, y'l = 0, via the KKT equality system
// on every support subset.
struct QpOracle {
    bool separable = false;
    double objective = 0.0;
};

inline QpOracle qp_bruteforce(const Eigen::MatrixXd& D, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(y.size());
    QpOracle best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> act;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) act.push_back(i);
        const int a = static_cast<int>(act.size());
        Eigen::MatrixXd K(a + 1, a + 1);
        Eigen::VectorXd rhs(a + 1);
        for (int i = 0; i < a; ++i) {
            for (int j = 0; j < a; ++j) K(i, j) = D(act[i], act[j]);
            K(i, a) = y(act[i]);
            K(a, i) = y(act[i]);
            rhs(i) = 1.0;
        }
        K(a, a) = 0.0;
        rhs(a) = 0.0;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        bool ok = true;
        for (int i = 0; i < a && ok; ++i) ok = sol(i) >= -1e-9;
        if (!ok) continue;
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < a; ++i) lambda(act[i]) = std::max(0.0, sol(i));
        const double b = sol(a);
        // Inactive coordinates must not have positive gradient.
        const Eigen::VectorXd grad =
            Eigen::VectorXd::Ones(n) - D * lambda - b * y;
        for (int i = 0; i < n && ok; ++i)
            if (lambda(i) <= 0) ok = grad(i) <= 1e-7;
        if (!ok) continue;
        const double w = lambda.sum() - 0.5 * lambda.dot(D * lambda);
        if (!best.separable || w > best.objective) {
            best.separable = true;
            best.objective = w;
        }
    }
    return best;
}

}  // namespace oracle
