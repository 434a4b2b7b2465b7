#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dda/alpha.hpp"
#include "dda/dataset.hpp"
#include "dda/depth.hpp"
#include "dda/treatments.hpp"

namespace dda {

enum class Route { Insider, OneZero, Outsider };

std::string to_string(Route r);

struct Classified {
    int label = 1;
    Route route = Route::Insider;
};

struct TrainOptions {
    std::vector<int> degrees = {1, 2, 3};
    int degree_folds = 50;
    AlphaOptions alpha;
    /// Classification-phase variant: apply the SVM-s rule to every query
    /// instead of only to outsiders.
    bool svms_for_all = false;
};

/// Trained DD-alpha pipeline: depth state per class, alpha separator, and
/// (for the Tukey depth) an outsider treatment.
struct DDAlphaModel {
    DepthConfig cfg;
    TrainOptions opts;
    // Training data, kept for serialization and the depth state rebuild.
    Eigen::MatrixXd class1, class2;
    double prior1 = 0.5, prior2 = 0.5;
    // Depth state (populated according to cfg.notion).
    std::array<LocationScatter, 2> estimates;
    DirectionSet dirs;
    std::array<ProjectedClass, 2> projected;
    AlphaModel alpha;
    std::optional<Treatment> treatment;
    int chosen_degree = 1;
    double outsider_share_training = 0.0;  // zero-depth-pair share of training points
};

DDAlphaModel ddalpha_train(const Dataset& ds, const DepthConfig& cfg,
                           const std::optional<TreatmentConfig>& treatment_cfg,
                           std::uint64_t seed, const TrainOptions& opts = {});

std::pair<double, double> depth_transform(const DDAlphaModel& model,
                                          const Eigen::VectorXd& z);

Classified ddalpha_classify(const DDAlphaModel& model, const Eigen::VectorXd& z);

}  // namespace dda
