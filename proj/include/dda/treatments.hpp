#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dda/dataset.hpp"
#include "dda/estimators.hpp"

namespace dda {

struct LDAModel {
    Eigen::VectorXd weights;  // pooled-covariance discriminant direction
    double threshold = 0.0;   // classify 1 iff weights.z >= threshold
    Eigen::VectorXd mean1, mean2;
    double prior1 = 0.5, prior2 = 0.5;
};

LDAModel lda_train(const Dataset& ds);
int lda_classify(const LDAModel& m, const Eigen::VectorXd& z);

struct QDAModel {
    Eigen::VectorXd mean1, mean2;
    Eigen::MatrixXd inv1, inv2;
    double logdet1 = 0.0, logdet2 = 0.0;
    double logprior1 = 0.0, logprior2 = 0.0;
};

QDAModel qda_train(const Dataset& ds);
int qda_classify(const QDAModel& m, const Eigen::VectorXd& z);

enum class KnnMetric { Euclidean, MahalanobisPooled };

struct KNNModel {
    Eigen::MatrixXd points;  // whitened for the Mahalanobis metric
    std::vector<int> labels;
    int k = 1;
    KnnMetric metric = KnnMetric::Euclidean;
    Eigen::MatrixXd whitening;  // identity for Euclidean
    std::uint64_t seed = 0;
};

/// k selected by leave-one-out cross-validation over 1..min(n-1,
/// floor(10*sqrt(n))), odd values first in the tie order. fixed_k skips
/// the selection.
KNNModel knn_train(const Dataset& ds, KnnMetric metric, std::uint64_t seed,
                   std::optional<int> fixed_k = std::nullopt);
int knn_classify(const KNNModel& m, const Eigen::VectorXd& z);

int max_mahalanobis_classify(const Eigen::VectorXd& z,
                             const LocationScatter& est1,
                             const LocationScatter& est2, double prior1,
                             double prior2);

enum class QpStatus { Separable, Infeasible, MaxIterations };

struct QpResult {
    QpStatus status = QpStatus::MaxIterations;
    Eigen::VectorXd lambda;
    double objective = 0.0;  // W(lambda)
    double margin = 0.0;     // rho0 = sqrt(2 / W)
    int sv_count = 0;
    double bias = 0.0;
};

/// Hard-margin dual by pairwise coordinate ascent (SMO without box
/// bounds): maximize lambda'1 - 1/2 lambda'D lambda subject to lambda >= 0,
/// lambda'y = 0. Divergence past the growth cap reports Infeasible.
QpResult qp_hard_margin(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                        double kkt_tol = 1e-6);

struct SVMsModel {
    Eigen::MatrixXd points;   // retained after the removal step, deduplicated
    Eigen::VectorXd y;        // +1 for class 1, -1 for class 2
    double gamma = 1.0;
    Eigen::VectorXd lambda;
    double bias = 0.0;
    double margin = 0.0;
    double objective = 0.0;
    int sv_count = 0;
};

/// Default logarithmic gamma grid, lg(gamma) from -6 to 6 in steps of 0.25.
std::vector<double> default_gamma_grid();

/// Removal step (drop points the supplied rule misclassifies), then the
/// smallest gamma in the grid achieving errorless separation.
SVMsModel svms_train(const Dataset& ds,
                     const std::function<int(const Eigen::VectorXd&)>& dda_rule,
                     const std::vector<double>& gamma_grid = default_gamma_grid());
int svms_classify(const SVMsModel& m, const Eigen::VectorXd& z);
double svms_decision(const SVMsModel& m, const Eigen::VectorXd& z);

enum class TreatmentKind { Lda, Knn, MahMoment, MahMcd, Svms };

struct MaxMahModel {
    LocationScatter est1, est2;
    double prior1 = 0.5, prior2 = 0.5;
};

struct TreatmentConfig {
    TreatmentKind kind = TreatmentKind::Lda;
    double mcd_fraction = 0.75;
    std::vector<double> gamma_grid = default_gamma_grid();
};

struct Treatment {
    TreatmentKind kind = TreatmentKind::Lda;
    std::variant<LDAModel, KNNModel, MaxMahModel, SVMsModel> model;

    int classify(const Eigen::VectorXd& z) const;
};

Treatment train_treatment(
    const Dataset& ds, const TreatmentConfig& cfg,
    const std::function<int(const Eigen::VectorXd&)>& dda_rule,
    std::uint64_t seed);

}  // namespace dda
