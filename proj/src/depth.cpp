#include "dda/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dda {

DirectionSet generate_directions(int d, int k, std::uint64_t seed) {
    if (d < 1 || k < 1)
        throw std::invalid_argument("generate_directions: d and k must be >= 1");
    std::mt19937_64 rng(mix_seed(seed, 0x64697273));  // "dirs"
    std::normal_distribution<double> gauss(0.0, 1.0);
    DirectionSet ds;
    ds.seed = seed;
    ds.dirs.resize(k, d);
    for (int i = 0; i < k; ++i) {
        double norm = 0.0;
        do {
            for (int j = 0; j < d; ++j) ds.dirs(i, j) = gauss(rng);
            norm = ds.dirs.row(i).norm();
        } while (norm == 0.0);
        ds.dirs.row(i) /= norm;
    }
    return ds;
}

namespace {

// Median of a sorted range; midpoint of the two central order statistics
// for even length.
double sorted_median(std::span<const double> v) {
    const std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

// Lower median: for even length, the lower of the two central values.
double lower_median(std::vector<double>& v) {
    const std::size_t m = v.size();
    const std::size_t pos = (m - 1) / 2;
    std::nth_element(v.begin(), v.begin() + pos, v.end());
    return v[pos];
}

}  // namespace

ProjectedClass build_projected_class(const Eigen::MatrixXd& pts,
                                     const DirectionSet& ds) {
    const int m = static_cast<int>(pts.rows());
    const int k = ds.k();
    if (pts.cols() != ds.dim())
        throw std::invalid_argument("build_projected_class: dimension mismatch");
    ProjectedClass pc;
    pc.sorted = pts * ds.dirs.transpose();  // m x k
    pc.median.resize(k);
    pc.mad.resize(k);
    std::vector<double> dev(m);
    for (int j = 0; j < k; ++j) {
        double* col = pc.sorted.col(j).data();
        std::sort(col, col + m);
        pc.median(j) = sorted_median({col, static_cast<std::size_t>(m)});
        for (int i = 0; i < m; ++i) dev[i] = std::abs(col[i] - pc.median(j));
        pc.mad(j) = lower_median(dev);
    }
    return pc;
}

double mahalanobis_depth(const Eigen::VectorXd& z, const LocationScatter& est) {
    const Eigen::VectorXd diff = z - est.center;
    const double q = diff.dot(est.scatter.ldlt().solve(diff));
    return 1.0 / (1.0 + q);
}

double spatial_depth(const Eigen::VectorXd& z, const Eigen::MatrixXd& pts,
                     const LocationScatter& est) {
    if (pts.rows() == 0)
        throw std::invalid_argument("spatial_depth: empty class");
    const Eigen::MatrixXd w = whitening_root(est.scatter);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(z.size());
    for (int i = 0; i < pts.rows(); ++i) {
        Eigen::VectorXd y = w * (z - pts.row(i).transpose());
        const double norm = y.norm();
        if (norm > 0) acc += y / norm;  // v(0) = 0
    }
    return 1.0 - (acc / static_cast<double>(pts.rows())).norm();
}

namespace {

double projection_outlyingness(double t, double median, double mad) {
    const double num = std::abs(t - median);
    if (mad == 0.0)
        return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / mad;
}

}  // namespace

double projection_depth_random(const Eigen::VectorXd& z, const DirectionSet& ds,
                               const ProjectedClass& proj) {
    const Eigen::VectorXd t = ds.dirs * z;
    double out = 0.0;
    for (int j = 0; j < ds.k(); ++j)
        out = std::max(out, projection_outlyingness(t(j), proj.median(j), proj.mad(j)));
    return 1.0 / (1.0 + out);
}

double univariate_tukey_depth(double t, std::span<const double> sorted_sample) {
    const auto m = sorted_sample.size();
    if (m == 0) throw std::invalid_argument("univariate_tukey_depth: empty sample");
    const auto le = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), t) -
                    sorted_sample.begin();
    const auto ge = sorted_sample.end() -
                    std::lower_bound(sorted_sample.begin(), sorted_sample.end(), t);
    return static_cast<double>(std::min<std::ptrdiff_t>(le, ge)) /
           static_cast<double>(m);
}

double random_tukey_depth(const Eigen::VectorXd& z, const DirectionSet& ds,
                          const ProjectedClass& proj) {
    const Eigen::VectorXd t = ds.dirs * z;
    const int m = proj.size();
    double depth = 1.0;
    for (int j = 0; j < ds.k(); ++j) {
        const double* col = proj.sorted.col(j).data();
        depth = std::min(depth, univariate_tukey_depth(
                                    t(j), {col, static_cast<std::size_t>(m)}));
        if (depth == 0.0) break;
    }
    return depth;
}

Eigen::VectorXd random_tukey_depth_batch(const Eigen::MatrixXd& queries,
                                         const DirectionSet& ds,
                                         const ProjectedClass& proj) {
    const Eigen::MatrixXd t = queries * ds.dirs.transpose();  // nq x k
    const int m = proj.size();
    const int nq = static_cast<int>(queries.rows());
    Eigen::VectorXd depths = Eigen::VectorXd::Ones(nq);
    // Directions in the outer loop keep each sorted column cache-resident
    // across all queries.
    for (int j = 0; j < ds.k(); ++j) {
        const std::span<const double> col{proj.sorted.col(j).data(),
                                          static_cast<std::size_t>(m)};
        for (int i = 0; i < nq; ++i) {
            if (depths(i) == 0.0) continue;
            depths(i) = std::min(depths(i), univariate_tukey_depth(t(i, j), col));
        }
    }
    return depths;
}

Eigen::VectorXd projection_depth_random_batch(const Eigen::MatrixXd& queries,
                                              const DirectionSet& ds,
                                              const ProjectedClass& proj) {
    const Eigen::MatrixXd t = queries * ds.dirs.transpose();
    Eigen::VectorXd depths(queries.rows());
    for (int i = 0; i < queries.rows(); ++i) {
        double out = 0.0;
        for (int j = 0; j < ds.k(); ++j)
            out = std::max(out, projection_outlyingness(t(i, j), proj.median(j),
                                                        proj.mad(j)));
        depths(i) = 1.0 / (1.0 + out);
    }
    return depths;
}

double exact_tukey_depth_2d(const Eigen::VectorXd& z,
                            const Eigen::MatrixXd& pts) {
    if (pts.cols() != 2 || z.size() != 2)
        throw std::invalid_argument("exact_tukey_depth_2d: d must be 2");
    const int m = static_cast<int>(pts.rows());
    if (m == 0) throw std::invalid_argument("exact_tukey_depth_2d: empty sample");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> theta;
    theta.reserve(m);
    int coincident = 0;
    for (int i = 0; i < m; ++i) {
        const double vx = pts(i, 0) - z(0);
        const double vy = pts(i, 1) - z(1);
        if (vx == 0.0 && vy == 0.0) {
            ++coincident;
            continue;
        }
        double a = std::atan2(vy, vx);
        if (a < 0) a += two_pi;
        theta.push_back(a);
    }
    const int mprime = static_cast<int>(theta.size());
    if (mprime == 0) return 1.0;  // every closed halfplane contains all points

    std::sort(theta.begin(), theta.end());
    // Doubled array for wraparound window counts.
    std::vector<double> dbl(theta);
    dbl.reserve(2 * mprime);
    for (double a : theta) dbl.push_back(a + two_pi);

    // Minimum closed-halfplane count equals m' minus the maximum number of
    // direction angles in an open half-circle; anchors just past each point.
    int max_open = 0;
    for (int j = 0; j < mprime; ++j) {
        const double a = theta[j];
        const auto lo = std::upper_bound(dbl.begin(), dbl.end(), a + std::numbers::pi);
        const auto hi = std::lower_bound(dbl.begin(), dbl.end(), a + two_pi);
        const int window = static_cast<int>(hi - lo);
        const int mult = static_cast<int>(
            std::upper_bound(theta.begin(), theta.end(), a) -
            std::lower_bound(theta.begin(), theta.end(), a));
        max_open = std::max(max_open, window + mult);
    }
    return static_cast<double>(coincident + mprime - max_open) / m;
}

}  // namespace dda
