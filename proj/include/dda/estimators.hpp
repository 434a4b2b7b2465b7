#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace dda {

enum class EstimatorKind { Moment, Mcd };

/// Location/scatter pair; the scatter is symmetric positive-definite by
/// construction (construction throws otherwise).
struct LocationScatter {
    Eigen::VectorXd center;
    Eigen::MatrixXd scatter;
    EstimatorKind kind = EstimatorKind::Moment;
    double h_fraction = 1.0;  // meaningful for MCD only
};

/// Sample mean and covariance (divisor m-1). Throws on rank deficiency.
LocationScatter moment_estimates(const Eigen::MatrixXd& pts);

/// Diagnostics recorded by mcd_estimates, used by tests.
struct McdTrace {
    /// One determinant path per start that survived the degeneracy check.
    std::vector<std::vector<double>> determinant_paths;
    /// Raw (pre consistency factor) determinant of the winning h-subset.
    double best_raw_determinant = 0.0;
    std::vector<int> best_subset;
};

/// FAST-MCD style estimator: random (d+1)-subsets refined by C-steps,
/// best h-subset by smallest covariance determinant. The returned scatter
/// carries the normal-model consistency factor. With reweight=true a
/// one-step reweighting at the chi-square 0.975 cutoff is applied.
LocationScatter mcd_estimates(const Eigen::MatrixXd& pts,
                              double h_fraction = 0.75, int starts = 500,
                              std::uint64_t seed = 0, McdTrace* trace = nullptr,
                              bool reweight = false);

/// Symmetric positive-definite W with W * scatter * W = I.
Eigen::MatrixXd whitening_root(const Eigen::MatrixXd& scatter);

/// Deterministic 64-bit seed mixing (splitmix64 over the concatenation).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dda
