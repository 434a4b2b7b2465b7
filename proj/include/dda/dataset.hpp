#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace dda {

/// A labeled binary classification task. Labels are always 1 or 2,
/// remapped from the source file by first appearance.
struct Dataset {
    std::string name;
    Eigen::MatrixXd points;   // n x d
    std::vector<int> labels;  // values in {1, 2}
    int n1 = 0;
    int n2 = 0;

    int n() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }

    /// Rows belonging to one class, in original order.
    Eigen::MatrixXd class_points(int label) const;

    /// Validating constructor; throws on empty classes, non-finite values
    /// or mismatched sizes.
    static Dataset make(std::string name, Eigen::MatrixXd points,
                        std::vector<int> labels);
};

struct DatasetStats {
    int n_total = 0;
    double log_class_ratio = 0.0;  // ln(n1/n2)
    int dim = 0;
    double samples_per_dim = 0.0;
    int tied_count = 0;
    double outlier_fraction = 0.0;
    double outsider_proneness = 0.0;
};

/// Parse a CSV stream (UTF-8, comma separated, one header row) into a
/// Dataset. The label column is selected by name; an empty name means the
/// last column. Exactly two distinct label values are required.
Dataset load_csv(std::istream& in, const std::string& label_column = "",
                 const std::string& name = "");
Dataset load_csv_file(const std::string& path,
                      const std::string& label_column = "");

/// n minus the number of pairwise-distinct attribute rows (labels ignored,
/// exact floating-point equality).
int count_ties(const Dataset& ds);

/// Flags each point whose squared Mahalanobis distance to its class's
/// moment center exceeds the chi-square quantile with d degrees of freedom.
/// With pooled=true a single whole-sample region is used instead.
std::vector<bool> detect_outliers(const Dataset& ds, double quantile = 0.975,
                                  bool pooled = false);
double outlier_fraction(const Dataset& ds, double quantile = 0.975,
                        bool pooled = false);

/// True iff z is a convex combination of the rows of pts (phase-1 simplex
/// feasibility, residual tolerance tol). Boundary points count as inside.
bool point_in_convex_hull(const Eigen::VectorXd& z, const Eigen::MatrixXd& pts,
                          double tol = 1e-9);

/// Fraction of points that, when left out, lie in neither class's convex
/// hull.
double outsider_proneness(const Dataset& ds);

/// All difficulty statistics in one pass.
DatasetStats dataset_stats(const Dataset& ds);

}  // namespace dda
