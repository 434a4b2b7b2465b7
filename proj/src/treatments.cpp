#include "dda/treatments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dda/depth.hpp"

namespace dda {

LDAModel lda_train(const Dataset& ds) {
    const Eigen::MatrixXd c1 = ds.class_points(1);
    const Eigen::MatrixXd c2 = ds.class_points(2);
    const int d = ds.dim();
    LDAModel m;
    m.mean1 = c1.colwise().mean();
    m.mean2 = c2.colwise().mean();
    m.prior1 = static_cast<double>(ds.n1) / ds.n();
    m.prior2 = static_cast<double>(ds.n2) / ds.n();

    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd a = c1.rowwise() - m.mean1.transpose();
    Eigen::MatrixXd b = c2.rowwise() - m.mean2.transpose();
    pooled = (a.transpose() * a + b.transpose() * b) / (ds.n() - 2);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(pooled);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 0)
        throw std::runtime_error("lda_train: singular pooled covariance");
    m.weights = ldlt.solve(m.mean1 - m.mean2);
    m.threshold = 0.5 * m.weights.dot(m.mean1 + m.mean2) -
                  std::log(m.prior1 / m.prior2);
    return m;
}

int lda_classify(const LDAModel& m, const Eigen::VectorXd& z) {
    return m.weights.dot(z) >= m.threshold ? 1 : 2;
}

QDAModel qda_train(const Dataset& ds) {
    QDAModel m;
    for (int lab : {1, 2}) {
        const Eigen::MatrixXd pts = ds.class_points(lab);
        LocationScatter est;
        try {
            est = moment_estimates(pts);
        } catch (const std::exception&) {
            throw std::runtime_error("qda_train: singular covariance in class " +
                                     std::to_string(lab));
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(est.scatter);
        const double logdet = ldlt.vectorD().array().log().sum();
        const Eigen::MatrixXd inv =
            ldlt.solve(Eigen::MatrixXd::Identity(ds.dim(), ds.dim()));
        if (lab == 1) {
            m.mean1 = est.center;
            m.inv1 = inv;
            m.logdet1 = logdet;
            m.logprior1 = std::log(static_cast<double>(ds.n1) / ds.n());
        } else {
            m.mean2 = est.center;
            m.inv2 = inv;
            m.logdet2 = logdet;
            m.logprior2 = std::log(static_cast<double>(ds.n2) / ds.n());
        }
    }
    return m;
}

int qda_classify(const QDAModel& m, const Eigen::VectorXd& z) {
    const Eigen::VectorXd d1 = z - m.mean1;
    const Eigen::VectorXd d2 = z - m.mean2;
    const double s1 = -0.5 * m.logdet1 - 0.5 * d1.dot(m.inv1 * d1) + m.logprior1;
    const double s2 = -0.5 * m.logdet2 - 0.5 * d2.dot(m.inv2 * d2) + m.logprior2;
    return s1 >= s2 ? 1 : 2;
}

namespace {

// Deterministic per-query tie break, independent of call order.
int random_tie(const KNNModel& m, const Eigen::VectorXd& z) {
    std::uint64_t h = m.seed;
    for (int j = 0; j < z.size(); ++j) {
        std::uint64_t bits;
        const double v = z(j);
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h = mix_seed(h, bits);
    }
    return (h & 1) ? 1 : 2;
}

int vote(const std::vector<int>& labels, const std::vector<int>& order, int k,
         int* tie_out) {
    int v1 = 0;
    for (int i = 0; i < k; ++i) v1 += labels[order[i]] == 1;
    const int v2 = k - v1;
    if (tie_out) *tie_out = v1 == v2;
    return v1 > v2 ? 1 : (v2 > v1 ? 2 : 0);
}

std::vector<int> knn_k_order(int kmax) {
    std::vector<int> order;
    for (int k = 1; k <= kmax; k += 2) order.push_back(k);
    for (int k = 2; k <= kmax; k += 2) order.push_back(k);
    return order;
}

}  // namespace

KNNModel knn_train(const Dataset& ds, KnnMetric metric, std::uint64_t seed,
                   std::optional<int> fixed_k) {
    const int n = ds.n();
    if (n < 3) throw std::invalid_argument("knn_train: need n >= 3");
    KNNModel m;
    m.metric = metric;
    m.seed = seed;
    m.labels = ds.labels;
    if (metric == KnnMetric::MahalanobisPooled) {
        LocationScatter pooled;
        try {
            pooled = moment_estimates(ds.points);
        } catch (const std::exception&) {
            throw std::runtime_error("knn_train: singular pooled covariance");
        }
        m.whitening = whitening_root(pooled.scatter);
    } else {
        m.whitening = Eigen::MatrixXd::Identity(ds.dim(), ds.dim());
    }
    m.points = ds.points * m.whitening.transpose();

    if (fixed_k) {
        if (*fixed_k < 1 || *fixed_k > n - 1)
            throw std::invalid_argument("knn_train: k out of range");
        m.k = *fixed_k;
        return m;
    }

    const int kmax =
        std::min(n - 1, static_cast<int>(std::floor(10.0 * std::sqrt(n))));
    const auto k_candidates = knn_k_order(kmax);

    // LOO error for each k in a single pass over neighbor orderings.
    std::vector<int> errors(kmax + 1, 0);
    std::mt19937_64 tie_rng(mix_seed(seed, 0x6b6e6e));  // "knn"
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> dist;
        dist.reserve(n - 1);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            dist.emplace_back((m.points.row(j) - m.points.row(i)).squaredNorm(), j);
        }
        std::sort(dist.begin(), dist.end());
        int v1 = 0;
        for (int k = 1; k <= kmax; ++k) {
            v1 += ds.labels[dist[k - 1].second] == 1;
            const int v2 = k - v1;
            int pred;
            if (v1 == v2)
                pred = (tie_rng() & 1) ? 1 : 2;
            else
                pred = v1 > v2 ? 1 : 2;
            errors[k] += pred != ds.labels[i];
        }
    }
    int best_k = k_candidates.front();
    for (int k : k_candidates)
        if (errors[k] < errors[best_k]) best_k = k;
    m.k = best_k;
    return m;
}

int knn_classify(const KNNModel& m, const Eigen::VectorXd& z) {
    const Eigen::VectorXd q = m.whitening * z;
    const int n = static_cast<int>(m.points.rows());
    std::vector<std::pair<double, int>> dist(n);
    for (int j = 0; j < n; ++j)
        dist[j] = {(m.points.row(j).transpose() - q).squaredNorm(), j};
    std::sort(dist.begin(), dist.end());
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = dist[j].second;
    int tie = 0;
    const int pred = vote(m.labels, order, m.k, &tie);
    if (tie) return random_tie(m, z);
    return pred;
}

int max_mahalanobis_classify(const Eigen::VectorXd& z,
                             const LocationScatter& est1,
                             const LocationScatter& est2, double prior1,
                             double prior2) {
    const double s1 = prior1 * mahalanobis_depth(z, est1);
    const double s2 = prior2 * mahalanobis_depth(z, est2);
    return s1 >= s2 ? 1 : 2;
}

QpResult qp_hard_margin(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                        double kkt_tol) {
    const int l = static_cast<int>(y.size());
    if (gram.rows() != l || gram.cols() != l)
        throw std::invalid_argument("qp_hard_margin: size mismatch");

    constexpr double tau = 1e-12;
    constexpr double lambda_cap = 1e8;
    constexpr double objective_cap = 1e10;
    const long max_iter = std::max<long>(200000, 2000L * l);

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(l);
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(l, -1.0);  // D*lambda - 1

    QpResult res;
    auto objective = [&]() {
        // W = sum(lambda) - 1/2 lambda'D lambda = (sum(lambda) - lambda'G)/2
        return 0.5 * (lambda.sum() - lambda.dot(grad));
    };

    for (long iter = 0; iter < max_iter; ++iter) {
        // Maximal violating pair.
        int i = -1, j = -1;
        double up = -std::numeric_limits<double>::infinity();
        double low = std::numeric_limits<double>::infinity();
        for (int t = 0; t < l; ++t) {
            const double v = -y(t) * grad(t);
            if ((y(t) > 0 || lambda(t) > 0) && v > up) {
                up = v;
                i = t;
            }
            if ((y(t) < 0 || lambda(t) > 0) && v < low) {
                low = v;
                j = t;
            }
        }
        if (i < 0 || j < 0 || up - low < kkt_tol) {
            res.status = QpStatus::Separable;
            break;
        }

        const double old_i = lambda(i), old_j = lambda(j);
        if (y(i) != y(j)) {
            double quad = gram(i, i) + gram(j, j) + 2 * gram(i, j);
            if (quad <= 0) quad = tau;
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = lambda(i) - lambda(j);
            lambda(i) += delta;
            lambda(j) += delta;
            if (diff > 0 && lambda(j) < 0) {
                lambda(j) = 0;
                lambda(i) = diff;
            } else if (diff <= 0 && lambda(i) < 0) {
                lambda(i) = 0;
                lambda(j) = -diff;
            }
        } else {
            double quad = gram(i, i) + gram(j, j) - 2 * gram(i, j);
            if (quad <= 0) quad = tau;
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = lambda(i) + lambda(j);
            lambda(i) -= delta;
            lambda(j) += delta;
            if (lambda(i) < 0) {
                lambda(i) = 0;
                lambda(j) = sum;
            } else if (lambda(j) < 0) {
                lambda(j) = 0;
                lambda(i) = sum;
            }
        }
        grad += gram.col(i) * (lambda(i) - old_i) + gram.col(j) * (lambda(j) - old_j);

        if ((iter & 0xff) == 0xff) {
            if (lambda.maxCoeff() > lambda_cap || objective() > objective_cap) {
                res.status = QpStatus::Infeasible;
                res.lambda = lambda;
                return res;
            }
        }
    }

    if (res.status != QpStatus::Separable) {
        res.status = QpStatus::MaxIterations;
        res.lambda = lambda;
        return res;
    }

    res.lambda = lambda;
    res.objective = objective();
    if (res.objective <= 0) {
        res.status = QpStatus::Infeasible;
        return res;
    }
    res.margin = std::sqrt(2.0 / res.objective);
    double bias_sum = 0.0;
    for (int t = 0; t < l; ++t) {
        if (lambda(t) > 0) {
            ++res.sv_count;
            bias_sum += -y(t) * grad(t);  // y_t - y_t (D lambda)_t
        }
    }
    if (res.sv_count > 0) res.bias = bias_sum / res.sv_count;
    return res;
}

std::vector<double> default_gamma_grid() {
    std::vector<double> grid;
    for (int i = -24; i <= 24; ++i) grid.push_back(std::pow(10.0, i * 0.25));
    return grid;
}

namespace {

Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& pts, double gamma) {
    const int l = static_cast<int>(pts.rows());
    Eigen::MatrixXd k(l, l);
    for (int i = 0; i < l; ++i) {
        k(i, i) = 1.0;
        for (int j = i + 1; j < l; ++j) {
            const double d2 = (pts.row(i) - pts.row(j)).squaredNorm();
            k(i, j) = k(j, i) = std::exp(-gamma * d2);
        }
    }
    return k;
}

}  // namespace

SVMsModel svms_train(const Dataset& ds,
                     const std::function<int(const Eigen::VectorXd&)>& dda_rule,
                     const std::vector<double>& gamma_grid) {
    // Removal step: keep only points the rule classifies correctly.
    std::vector<int> kept;
    for (int i = 0; i < ds.n(); ++i)
        if (dda_rule(ds.points.row(i).transpose()) == ds.labels[i])
            kept.push_back(i);

    // Deduplicate identical coordinate rows (ties carry the same rule label).
    std::vector<int> unique_rows;
    for (int i : kept) {
        bool dup = false;
        for (int j : unique_rows)
            if (ds.points.row(i) == ds.points.row(j)) {
                dup = true;
                break;
            }
        if (!dup) unique_rows.push_back(i);
    }

    const int l = static_cast<int>(unique_rows.size());
    SVMsModel m;
    m.points.resize(l, ds.dim());
    m.y.resize(l);
    int c1 = 0, c2 = 0;
    for (int r = 0; r < l; ++r) {
        m.points.row(r) = ds.points.row(unique_rows[r]);
        const int lab = ds.labels[unique_rows[r]];
        m.y(r) = lab == 1 ? 1.0 : -1.0;
        (lab == 1 ? c1 : c2)++;
    }
    if (c1 == 0 || c2 == 0)
        throw std::runtime_error("svms_train: removal step emptied a class");

    for (double gamma : gamma_grid) {
        const Eigen::MatrixXd kmat = gaussian_kernel(m.points, gamma);
        const Eigen::MatrixXd gram =
            kmat.array() * (m.y * m.y.transpose()).array();
        const QpResult qp = qp_hard_margin(gram, m.y);
        if (qp.status != QpStatus::Separable || qp.sv_count == 0 ||
            !(qp.margin > 0))
            continue;
        // Errorless separation on the retained points.
        const Eigen::VectorXd decision =
            kmat * (qp.lambda.array() * m.y.array()).matrix() +
            Eigen::VectorXd::Constant(l, qp.bias);
        bool all_correct = true;
        for (int r = 0; r < l; ++r)
            if (m.y(r) * decision(r) <= 0) {
                all_correct = false;
                break;
            }
        if (!all_correct) continue;
        m.gamma = gamma;
        m.lambda = qp.lambda;
        m.bias = qp.bias;
        m.margin = qp.margin;
        m.objective = qp.objective;
        m.sv_count = qp.sv_count;
        return m;
    }
    throw std::runtime_error("svms_train: no gamma in the grid separates the classes");
}

double svms_decision(const SVMsModel& m, const Eigen::VectorXd& z) {
    double s = m.bias;
    for (int i = 0; i < m.points.rows(); ++i) {
        if (m.lambda(i) == 0) continue;
        const double d2 = (m.points.row(i).transpose() - z).squaredNorm();
        s += m.lambda(i) * m.y(i) * std::exp(-m.gamma * d2);
    }
    return s;
}

int svms_classify(const SVMsModel& m, const Eigen::VectorXd& z) {
    return svms_decision(m, z) < 0 ? 2 : 1;
}

int Treatment::classify(const Eigen::VectorXd& z) const {
    switch (kind) {
        case TreatmentKind::Lda:
            return lda_classify(std::get<LDAModel>(model), z);
        case TreatmentKind::Knn:
            return knn_classify(std::get<KNNModel>(model), z);
        case TreatmentKind::MahMoment:
        case TreatmentKind::MahMcd: {
            const auto& m = std::get<MaxMahModel>(model);
            return max_mahalanobis_classify(z, m.est1, m.est2, m.prior1, m.prior2);
        }
        case TreatmentKind::Svms:
            return svms_classify(std::get<SVMsModel>(model), z);
    }
    throw std::logic_error("Treatment::classify: bad kind");
}

Treatment train_treatment(
    const Dataset& ds, const TreatmentConfig& cfg,
    const std::function<int(const Eigen::VectorXd&)>& dda_rule,
    std::uint64_t seed) {
    Treatment t;
    t.kind = cfg.kind;
    switch (cfg.kind) {
        case TreatmentKind::Lda:
            t.model = lda_train(ds);
            break;
        case TreatmentKind::Knn:
            t.model = knn_train(ds, KnnMetric::MahalanobisPooled, seed);
            break;
        case TreatmentKind::MahMoment: {
            MaxMahModel m;
            m.est1 = moment_estimates(ds.class_points(1));
            m.est2 = moment_estimates(ds.class_points(2));
            m.prior1 = static_cast<double>(ds.n1) / ds.n();
            m.prior2 = static_cast<double>(ds.n2) / ds.n();
            t.model = std::move(m);
            break;
        }
        case TreatmentKind::MahMcd: {
            MaxMahModel m;
            m.est1 = mcd_estimates(ds.class_points(1), cfg.mcd_fraction, 500,
                                   mix_seed(seed, 1));
            m.est2 = mcd_estimates(ds.class_points(2), cfg.mcd_fraction, 500,
                                   mix_seed(seed, 2));
            m.prior1 = static_cast<double>(ds.n1) / ds.n();
            m.prior2 = static_cast<double>(ds.n2) / ds.n();
            t.model = std::move(m);
            break;
        }
        case TreatmentKind::Svms:
            if (!dda_rule)
                throw std::invalid_argument("train_treatment: SVM-s needs a trained rule");
            t.model = svms_train(ds, dda_rule, cfg.gamma_grid);
            break;
    }
    return t;
}

}  // namespace dda
