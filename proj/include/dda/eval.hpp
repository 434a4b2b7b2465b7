#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dda/dataset.hpp"
#include "dda/ddalpha.hpp"

namespace dda {

/// One trained classifier for a leave-one-out fold. feature_count is the
/// number of alpha-selected features, or -1 for non-DD-alpha classifiers.
struct FoldClassifier {
    std::function<Classified(const Eigen::VectorXd&)> classify;
    int feature_count = -1;
};

using ClassifierFactory =
    std::function<FoldClassifier(const Dataset& trainset, std::uint64_t seed)>;

struct LooResult {
    double aer_percent = 0.0;
    std::vector<int> predictions;
    std::vector<Route> routes;
    std::vector<int> feature_counts;  // per fold; -1 when not applicable
};

/// Leave-one-out cross-validation; fold seeds derive deterministically from
/// (seed, fold index), so parallel and serial runs agree.
LooResult loo_cv(const ClassifierFactory& factory, const Dataset& ds,
                 std::uint64_t seed, int jobs = 1);

struct AERTable {
    std::vector<std::string> tasks;
    std::vector<std::string> classifiers;
    Eigen::MatrixXd aer;  // tasks x classifiers, percentages
};

struct IndicatorRow {
    std::string name;
    double ace = 0.0;
    double arce_trd = 0.0;
    double arce_bst = 0.0;
    double count_ge_trd = 0.0;
    double count_ge_bst = 0.0;
};

std::vector<IndicatorRow> aggregate(const AERTable& tbl,
                                    const std::vector<std::string>& traditional);

struct FeatureCountStats {
    double pct2 = 0.0;
    double pct3 = 0.0;
    double pct4plus = 0.0;
};

FeatureCountStats feature_count_stats(const std::vector<int>& counts);

/// Per measure, affine map to [0,1] with 1 = best (error-like measures are
/// inverted). Columns: ACE, ARCE_trd, ARCE_bst, #>=trd, #>=bst.
Eigen::MatrixXd standardize_measures(const std::vector<IndicatorRow>& rows);

}  // namespace dda
