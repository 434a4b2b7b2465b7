#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "dda/estimators.hpp"

namespace dda {

enum class DepthNotion { Mahalanobis, Spatial, Projection, Tukey };

/// Seed-reproducible set of unit vectors on the (d-1)-sphere. Generating
/// k' > k directions from the same seed reproduces the first k rows.
struct DirectionSet {
    Eigen::MatrixXd dirs;  // k x d, unit rows
    std::uint64_t seed = 0;

    int k() const { return static_cast<int>(dirs.rows()); }
    int dim() const { return static_cast<int>(dirs.cols()); }
};

DirectionSet generate_directions(int d, int k, std::uint64_t seed);

/// One training class projected onto every direction, each projection list
/// sorted once; medians and MADs are precomputed per direction.
struct ProjectedClass {
    Eigen::MatrixXd sorted;  // m x k, column j = sorted projections on dir j
    Eigen::VectorXd median;  // per direction
    Eigen::VectorXd mad;     // per direction (lower-median rule)

    int size() const { return static_cast<int>(sorted.rows()); }
};

ProjectedClass build_projected_class(const Eigen::MatrixXd& pts,
                                     const DirectionSet& ds);

struct DepthConfig {
    DepthNotion notion = DepthNotion::Mahalanobis;
    EstimatorKind estimator = EstimatorKind::Moment;
    double mcd_fraction = 0.75;
    int directions = 10000;
    std::uint64_t seed = 0;
};

double mahalanobis_depth(const Eigen::VectorXd& z, const LocationScatter& est);

double spatial_depth(const Eigen::VectorXd& z, const Eigen::MatrixXd& pts,
                     const LocationScatter& est);

double projection_depth_random(const Eigen::VectorXd& z, const DirectionSet& ds,
                               const ProjectedClass& proj);

/// min(#{x <= t}, #{x >= t}) / m on a sorted sample, by binary search.
double univariate_tukey_depth(double t, std::span<const double> sorted_sample);

double random_tukey_depth(const Eigen::VectorXd& z, const DirectionSet& ds,
                          const ProjectedClass& proj);

/// Depths of many query points at once; projects queries with one matrix
/// product and reuses the stored sorted projections.
Eigen::VectorXd random_tukey_depth_batch(const Eigen::MatrixXd& queries,
                                         const DirectionSet& ds,
                                         const ProjectedClass& proj);
Eigen::VectorXd projection_depth_random_batch(const Eigen::MatrixXd& queries,
                                              const DirectionSet& ds,
                                              const ProjectedClass& proj);

/// Exact halfspace depth in the plane by the rotating-line sweep,
/// O(m log m).
double exact_tukey_depth_2d(const Eigen::VectorXd& z,
                            const Eigen::MatrixXd& pts);

}  // namespace dda
