#include "dda/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace dda {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace {

constexpr double kSpdTol = 1e-12;

void check_spd(const Eigen::MatrixXd& scatter, const char* who) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() <= kSpdTol * scale)
        throw std::runtime_error(std::string(who) + ": singular covariance");
}

Eigen::VectorXd subset_mean(const Eigen::MatrixXd& pts,
                            const std::vector<int>& idx) {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(pts.cols());
    for (int i : idx) mu += pts.row(i).transpose();
    return mu / static_cast<double>(idx.size());
}

Eigen::MatrixXd subset_cov(const Eigen::MatrixXd& pts,
                           const std::vector<int>& idx,
                           const Eigen::VectorXd& mu) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(pts.cols(), pts.cols());
    for (int i : idx) {
        const Eigen::VectorXd diff = pts.row(i).transpose() - mu;
        cov += diff * diff.transpose();
    }
    return cov / static_cast<double>(idx.size() - 1);
}

}  // namespace

LocationScatter moment_estimates(const Eigen::MatrixXd& pts) {
    const int m = static_cast<int>(pts.rows());
    const int d = static_cast<int>(pts.cols());
    if (m < d + 1)
        throw std::runtime_error("moment_estimates: singular covariance (m <= d)");
    LocationScatter est;
    est.center = pts.colwise().mean();
    Eigen::MatrixXd centered = pts.rowwise() - est.center.transpose();
    est.scatter = centered.transpose() * centered / (m - 1);
    est.kind = EstimatorKind::Moment;
    check_spd(est.scatter, "moment_estimates");
    return est;
}

LocationScatter mcd_estimates(const Eigen::MatrixXd& pts, double h_fraction,
                              int starts, std::uint64_t seed, McdTrace* trace,
                              bool reweight) {
    const int m = static_cast<int>(pts.rows());
    const int d = static_cast<int>(pts.cols());
    const int h = static_cast<int>(std::ceil(h_fraction * m));
    if (h < d + 1)
        throw std::runtime_error("mcd_estimates: h < d+1");
    if (h > m) throw std::runtime_error("mcd_estimates: h > m");

    std::mt19937_64 rng(mix_seed(seed, 0x6d6364));  // "mcd"
    std::uniform_int_distribution<int> pick(0, m - 1);

    auto select_h = [&](const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov,
                        std::vector<int>& out) -> bool {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
        std::vector<std::pair<double, int>> dist(m);
        for (int i = 0; i < m; ++i) {
            const Eigen::VectorXd diff = pts.row(i).transpose() - mu;
            dist[i] = {diff.dot(ldlt.solve(diff)), i};
        }
        std::sort(dist.begin(), dist.end());
        out.resize(h);
        for (int i = 0; i < h; ++i) out[i] = dist[i].second;
        std::sort(out.begin(), out.end());
        return true;
    };

    double best_det = std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    Eigen::VectorXd best_mu;
    Eigen::MatrixXd best_cov;
    bool found = false;

    for (int s = 0; s < starts; ++s) {
        // Random (d+1)-subset without replacement.
        std::vector<int> sub;
        while (static_cast<int>(sub.size()) < d + 1) {
            int c = pick(rng);
            if (std::find(sub.begin(), sub.end(), c) == sub.end())
                sub.push_back(c);
        }
        Eigen::VectorXd mu = subset_mean(pts, sub);
        Eigen::MatrixXd cov = subset_cov(pts, sub, mu);
        // Grow degenerate starts until the covariance has full rank.
        while (cov.determinant() <= 0 && static_cast<int>(sub.size()) < m) {
            int c = pick(rng);
            if (std::find(sub.begin(), sub.end(), c) != sub.end()) continue;
            sub.push_back(c);
            mu = subset_mean(pts, sub);
            cov = subset_cov(pts, sub, mu);
        }

        std::vector<int> subset;
        if (!select_h(mu, cov, subset)) continue;

        std::vector<double> det_path;
        double det = std::numeric_limits<double>::infinity();
        bool degenerate = false;
        for (int step = 0; step < 200; ++step) {
            mu = subset_mean(pts, subset);
            cov = subset_cov(pts, subset, mu);
            const double det_new = cov.determinant();
            if (!(det_new > 0)) {
                degenerate = true;
                break;
            }
            det_path.push_back(det_new);
            if (std::isfinite(det) && det - det_new < 1e-12 * std::max(1.0, det))
                break;
            det = det_new;
            std::vector<int> next;
            if (!select_h(mu, cov, next)) {
                degenerate = true;
                break;
            }
            if (next == subset) {
                subset = std::move(next);
                break;
            }
            subset = std::move(next);
        }
        if (degenerate || det_path.empty()) continue;
        if (trace) trace->determinant_paths.push_back(det_path);

        const double final_det = det_path.back();
        if (final_det < best_det) {  // strict: ties keep the lowest start index
            best_det = final_det;
            best_subset = subset;
            best_mu = subset_mean(pts, subset);
            best_cov = subset_cov(pts, subset, best_mu);
            found = true;
        }
    }
    if (!found)
        throw std::runtime_error("mcd_estimates: all candidate subsets degenerate");

    if (trace) {
        trace->best_raw_determinant = best_det;
        trace->best_subset = best_subset;
    }

    // Fisher consistency at the normal model.
    const double alpha = static_cast<double>(h) / m;
    double factor = 1.0;
    if (alpha < 1.0) {
        boost::math::chi_squared chi_d(d), chi_d2(d + 2);
        const double q = boost::math::quantile(chi_d, alpha);
        factor = alpha / boost::math::cdf(chi_d2, q);
    }

    LocationScatter est;
    est.center = best_mu;
    est.scatter = factor * best_cov;
    est.kind = EstimatorKind::Mcd;
    est.h_fraction = h_fraction;

    if (reweight) {
        boost::math::chi_squared chi_d(d);
        const double cutoff = boost::math::quantile(chi_d, 0.975);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(est.scatter);
        std::vector<int> keep;
        for (int i = 0; i < m; ++i) {
            const Eigen::VectorXd diff = pts.row(i).transpose() - est.center;
            if (diff.dot(ldlt.solve(diff)) <= cutoff) keep.push_back(i);
        }
        if (static_cast<int>(keep.size()) >= d + 1) {
            const Eigen::VectorXd mu = subset_mean(pts, keep);
            const Eigen::MatrixXd cov = subset_cov(pts, keep, mu);
            if (cov.determinant() > 0) {
                est.center = mu;
                est.scatter = cov;
            }
        }
    }

    check_spd(est.scatter, "mcd_estimates");
    return est;
}

Eigen::MatrixXd whitening_root(const Eigen::MatrixXd& scatter) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("whitening_root: eigendecomposition failed");
    const Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() <= 0)
        throw std::runtime_error("whitening_root: non-positive eigenvalue");
    return es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

}  // namespace dda
