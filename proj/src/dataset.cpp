#include "dda/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "dda/estimators.hpp"

namespace dda {

Eigen::MatrixXd Dataset::class_points(int label) const {
    const int count = (label == 1) ? n1 : n2;
    Eigen::MatrixXd out(count, dim());
    int r = 0;
    for (int i = 0; i < n(); ++i)
        if (labels[i] == label) out.row(r++) = points.row(i);
    return out;
}

Dataset Dataset::make(std::string name, Eigen::MatrixXd points,
                      std::vector<int> labels) {
    Dataset ds;
    ds.name = std::move(name);
    ds.points = std::move(points);
    ds.labels = std::move(labels);
    if (ds.points.rows() != static_cast<Eigen::Index>(ds.labels.size()))
        throw std::invalid_argument("dataset: points/labels size mismatch");
    if (ds.points.cols() < 1) throw std::invalid_argument("dataset: d must be >= 1");
    if (!ds.points.allFinite())
        throw std::invalid_argument("dataset: non-finite attribute value");
    for (int lab : ds.labels) {
        if (lab == 1)
            ++ds.n1;
        else if (lab == 2)
            ++ds.n2;
        else
            throw std::invalid_argument("dataset: label outside {1,2}");
    }
    if (ds.n1 == 0 || ds.n2 == 0)
        throw std::invalid_argument("dataset: both classes must be nonempty");
    return ds;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dataset load_csv(std::istream& in, const std::string& label_column,
                 const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file");
    auto header = split_csv_line(line);
    for (auto& h : header) h = trim(h);
    int label_idx = static_cast<int>(header.size()) - 1;
    if (!label_column.empty()) {
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it == header.end())
            throw std::runtime_error("load_csv: label column '" + label_column +
                                     "' not found");
        label_idx = static_cast<int>(it - header.begin());
    }
    const int ncol = static_cast<int>(header.size());
    const int d = ncol - 1;
    if (d < 1) throw std::runtime_error("load_csv: no attribute columns");

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != ncol)
            throw std::runtime_error("load_csv: line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(ncol) +
                                     " cells");
        std::vector<double> row;
        row.reserve(d);
        for (int c = 0; c < ncol; ++c) {
            if (c == label_idx) {
                raw_labels.push_back(trim(cells[c]));
                continue;
            }
            const std::string cell = trim(cells[c]);
            std::size_t pos = 0;
            double v = 0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != cell.size() || cell.empty())
                throw std::runtime_error("load_csv: line " +
                                         std::to_string(lineno) +
                                         ": non-numeric cell '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("load_csv: no data rows");

    // Remap labels to {1,2} by first appearance.
    std::vector<std::string> seen;
    std::vector<int> labels;
    labels.reserve(raw_labels.size());
    for (const auto& rl : raw_labels) {
        auto it = std::find(seen.begin(), seen.end(), rl);
        if (it == seen.end()) {
            seen.push_back(rl);
            it = std::prev(seen.end());
        }
        labels.push_back(static_cast<int>(it - seen.begin()) + 1);
    }
    if (seen.size() != 2)
        throw std::runtime_error("load_csv: not a binary task (" +
                                 std::to_string(seen.size()) +
                                 " distinct labels)");

    Eigen::MatrixXd pts(rows.size(), d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < d; ++j) pts(i, j) = rows[i][j];
    return Dataset::make(name, std::move(pts), std::move(labels));
}

Dataset load_csv_file(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string name = path;
    if (auto p = name.find_last_of('/'); p != std::string::npos)
        name = name.substr(p + 1);
    if (auto p = name.rfind(".csv"); p != std::string::npos) name = name.substr(0, p);
    return load_csv(in, label_column, name);
}

int count_ties(const Dataset& ds) {
    std::vector<int> order(ds.n());
    for (int i = 0; i < ds.n(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (int j = 0; j < ds.dim(); ++j) {
            if (ds.points(a, j) != ds.points(b, j))
                return ds.points(a, j) < ds.points(b, j);
        }
        return false;
    });
    int distinct = ds.n() == 0 ? 0 : 1;
    for (int i = 1; i < ds.n(); ++i)
        if (ds.points.row(order[i]) != ds.points.row(order[i - 1])) ++distinct;
    return ds.n() - distinct;
}

std::vector<bool> detect_outliers(const Dataset& ds, double quantile,
                                  bool pooled) {
    boost::math::chi_squared chi(ds.dim());
    const double cutoff = boost::math::quantile(chi, quantile);
    std::vector<bool> flags(ds.n(), false);

    auto flag_group = [&](const Eigen::MatrixXd& pts,
                          const std::vector<int>& idx, const char* which) {
        LocationScatter est;
        try {
            est = moment_estimates(pts);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("detect_outliers: singular covariance in ") + which);
        }
        const Eigen::MatrixXd inv = est.scatter.inverse();
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const Eigen::VectorXd diff = pts.row(r).transpose() - est.center;
            const double d2 = diff.dot(inv * diff);
            if (d2 > cutoff) flags[idx[r]] = true;
        }
    };

    if (pooled) {
        std::vector<int> all(ds.n());
        for (int i = 0; i < ds.n(); ++i) all[i] = i;
        flag_group(ds.points, all, "pooled sample");
    } else {
        for (int lab : {1, 2}) {
            std::vector<int> idx;
            for (int i = 0; i < ds.n(); ++i)
                if (ds.labels[i] == lab) idx.push_back(i);
            Eigen::MatrixXd pts(idx.size(), ds.dim());
            for (std::size_t r = 0; r < idx.size(); ++r)
                pts.row(r) = ds.points.row(idx[r]);
            flag_group(pts, idx, lab == 1 ? "class 1" : "class 2");
        }
    }
    return flags;
}

double outlier_fraction(const Dataset& ds, double quantile, bool pooled) {
    auto flags = detect_outliers(ds, quantile, pooled);
    int c = 0;
    for (bool f : flags) c += f;
    return static_cast<double>(c) / ds.n();
}

// Phase-1 simplex: find lambda >= 0 with sum lambda = 1 and
// sum lambda_i * pts_i = z. Coordinates are shifted by z first so the
// right-hand side is (0,...,0,1).
bool point_in_convex_hull(const Eigen::VectorXd& z, const Eigen::MatrixXd& pts,
                          double tol) {
    const int m = static_cast<int>(pts.rows());
    const int d = static_cast<int>(pts.cols());
    if (m < 1) throw std::invalid_argument("point_in_convex_hull: empty pts");
    if (z.size() != d)
        throw std::invalid_argument("point_in_convex_hull: dimension mismatch");

    const int rows = d + 1;
    const int nvar = m + rows;  // lambdas + artificials
    // Tableau: rows x (nvar + 1), last column is rhs.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows, nvar + 1);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < d; ++i) T(i, j) = pts(j, i) - z(i);
        T(d, j) = 1.0;
    }
    T(d, nvar) = 1.0;
    // Flip rows with negative rhs (all-zero except the last, so a no-op for
    // the shifted system; kept for safety against signed zeros).
    for (int i = 0; i < rows; ++i)
        if (T(i, nvar) < 0) T.row(i) = -T.row(i);
    for (int i = 0; i < rows; ++i) T(i, m + i) = 1.0;

    std::vector<int> basis(rows);
    for (int i = 0; i < rows; ++i) basis[i] = m + i;

    // Reduced costs for minimizing the sum of artificials.
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(nvar + 1);
    for (int i = 0; i < rows; ++i) cost -= T.row(i).transpose();

    const double piv_tol = 1e-12;
    const int max_iter = 50 * (m + rows);
    for (int iter = 0; iter < max_iter; ++iter) {
        // Bland's rule: smallest-index entering variable.
        int enter = -1;
        for (int j = 0; j < nvar; ++j) {
            if (cost(j) < -piv_tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = 0;
        for (int i = 0; i < rows; ++i) {
            if (T(i, enter) > piv_tol) {
                const double ratio = T(i, nvar) / T(i, enter);
                if (leave < 0 || ratio < best_ratio - piv_tol ||
                    (ratio < best_ratio + piv_tol && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) break;  // unbounded; cannot happen for phase 1
        T.row(leave) /= T(leave, enter);
        for (int i = 0; i < rows; ++i)
            if (i != leave && std::abs(T(i, enter)) > 0)
                T.row(i) -= T(i, enter) * T.row(leave);
        cost -= cost(enter) * T.row(leave).transpose();
        basis[leave] = enter;
    }

    double artificial_sum = 0;
    for (int i = 0; i < rows; ++i)
        if (basis[i] >= m) artificial_sum += std::abs(T(i, nvar));
    return artificial_sum <= tol;
}

double outsider_proneness(const Dataset& ds) {
    const Eigen::MatrixXd c1 = ds.class_points(1);
    const Eigen::MatrixXd c2 = ds.class_points(2);
    int outsiders = 0;
    int i1 = 0, i2 = 0;
    for (int i = 0; i < ds.n(); ++i) {
        const Eigen::VectorXd z = ds.points.row(i).transpose();
        bool inside = false;
        if (ds.labels[i] == 1) {
            Eigen::MatrixXd rest(c1.rows() - 1, ds.dim());
            if (rest.rows() > 0) {
                rest.topRows(i1) = c1.topRows(i1);
                rest.bottomRows(c1.rows() - 1 - i1) = c1.bottomRows(c1.rows() - 1 - i1);
                inside = point_in_convex_hull(z, rest);
            }
            if (!inside) inside = point_in_convex_hull(z, c2);
            ++i1;
        } else {
            Eigen::MatrixXd rest(c2.rows() - 1, ds.dim());
            if (rest.rows() > 0) {
                rest.topRows(i2) = c2.topRows(i2);
                rest.bottomRows(c2.rows() - 1 - i2) = c2.bottomRows(c2.rows() - 1 - i2);
                inside = point_in_convex_hull(z, rest);
            }
            if (!inside) inside = point_in_convex_hull(z, c1);
            ++i2;
        }
        if (!inside) ++outsiders;
    }
    return static_cast<double>(outsiders) / ds.n();
}

DatasetStats dataset_stats(const Dataset& ds) {
    DatasetStats s;
    s.n_total = ds.n();
    s.log_class_ratio = std::log(static_cast<double>(ds.n1) / ds.n2);
    s.dim = ds.dim();
    s.samples_per_dim = static_cast<double>(ds.n()) / ds.dim();
    s.tied_count = count_ties(ds);
    s.outlier_fraction = outlier_fraction(ds);
    s.outsider_proneness = outsider_proneness(ds);
    return s;
}

}  // namespace dda
