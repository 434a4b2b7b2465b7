#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace dda {

/// Monomial basis of the polynomially extended depth plane: exponent pairs
/// (a,b) with 1 <= a+b <= degree, graded-lexicographic, constant excluded.
/// For degree 2 the basis is d1, d2, d1^2, d1*d2, d2^2 (r = 5).
struct FeatureBasis {
    int degree = 1;
    std::vector<std::pair<int, int>> monomials;

    static FeatureBasis make(int degree);
    int size() const { return static_cast<int>(monomials.size()); }
};

/// Monomial values of one depth pair in basis order.
Eigen::VectorXd extend(double d1, double d2, const FeatureBasis& basis);

struct BestAngle {
    double angle = 0.0;    // in [0, pi)
    double emr = 1.0;      // fraction of misclassified points
    int orientation = 1;   // +1: class 1 on the positive side of the normal
};

/// Best origin-line separator of labeled points in a plane: sweep of the
/// critical angles, O(m log m). Returns the mid-gap angle of the first
/// optimal interval. Points at the exact origin are predicted class 1
/// (the zero tie rule) for every candidate.
BestAngle best_angle(const std::vector<std::array<double, 2>>& points,
                     const std::vector<int>& labels);

struct AlphaModel {
    FeatureBasis basis;
    std::vector<int> selected;  // monomial indices, selection order
    Eigen::VectorXd weights;    // r-vector; classify by sign(w . phi)
    double training_emr = 1.0;
    int steps = 0;
};

struct AlphaOptions {
    /// Step-1 pair rule: false (default) admits pairs whose joint variable
    /// set covers both depths; true requires every member to involve both.
    bool per_member_pair_rule = false;
};

/// Stepwise plane-by-plane separation of the extended depth plot. Points at
/// the exact origin are excluded from EMR counting.
AlphaModel alpha_train(const Eigen::MatrixX2d& dpairs,
                       const std::vector<int>& labels,
                       const FeatureBasis& basis,
                       const AlphaOptions& opts = {});

int alpha_classify(const AlphaModel& model, double d1, double d2);

/// Polynomial degree by stratified k-fold cross-validation; ties resolve to
/// the smallest degree. Fewer points than folds falls back to leave-one-out.
int select_degree(const Eigen::MatrixX2d& dpairs, const std::vector<int>& labels,
                  const std::vector<int>& degrees, int folds, std::uint64_t seed,
                  const AlphaOptions& opts = {});

}  // namespace dda
