#include "dda/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace dda {

LooResult loo_cv(const ClassifierFactory& factory, const Dataset& ds,
                 std::uint64_t seed, int jobs) {
    const int n = ds.n();
    if (n < 2) throw std::invalid_argument("loo_cv: need n >= 2");

    LooResult res;
    res.predictions.assign(n, 0);
    res.routes.assign(n, Route::Insider);
    res.feature_counts.assign(n, -1);
    std::vector<std::string> failures(n);

    auto run_fold = [&](int i) {
        Eigen::MatrixXd pts(n - 1, ds.dim());
        std::vector<int> labels(n - 1);
        int r = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            pts.row(r) = ds.points.row(j);
            labels[r] = ds.labels[j];
            ++r;
        }
        try {
            const Dataset trainset =
                Dataset::make(ds.name, std::move(pts), std::move(labels));
            const FoldClassifier clf = factory(trainset, mix_seed(seed, i));
            const Classified out = clf.classify(ds.points.row(i).transpose());
            res.predictions[i] = out.label;
            res.routes[i] = out.route;
            res.feature_counts[i] = clf.feature_count;
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) run_fold(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int i = next++; i < n; i = next++) run_fold(i);
            });
        for (auto& t : pool) t.join();
    }

    for (int i = 0; i < n; ++i)
        if (!failures[i].empty())
            throw std::runtime_error("loo_cv: fold " + std::to_string(i) +
                                     " failed: " + failures[i]);

    int errors = 0;
    for (int i = 0; i < n; ++i) errors += res.predictions[i] != ds.labels[i];
    res.aer_percent = 100.0 * errors / n;
    return res;
}

std::vector<IndicatorRow> aggregate(const AERTable& tbl,
                                    const std::vector<std::string>& traditional) {
    const int n_tasks = static_cast<int>(tbl.tasks.size());
    const int n_clf = static_cast<int>(tbl.classifiers.size());
    std::vector<int> trd_cols;
    for (const auto& name : traditional) {
        auto it = std::find(tbl.classifiers.begin(), tbl.classifiers.end(), name);
        if (it == tbl.classifiers.end())
            throw std::invalid_argument("aggregate: unknown traditional classifier " + name);
        trd_cols.push_back(static_cast<int>(it - tbl.classifiers.begin()));
    }
    if (trd_cols.empty())
        throw std::invalid_argument("aggregate: empty traditional set");

    Eigen::VectorXd aer_trd(n_tasks), aer_bst(n_tasks);
    for (int t = 0; t < n_tasks; ++t) {
        double trd = std::numeric_limits<double>::infinity();
        for (int c : trd_cols) trd = std::min(trd, tbl.aer(t, c));
        aer_trd(t) = trd;
        aer_bst(t) = tbl.aer.row(t).minCoeff();
    }

    std::vector<IndicatorRow> rows;
    for (int c = 0; c < n_clf; ++c) {
        IndicatorRow row;
        row.name = tbl.classifiers[c];
        row.ace = tbl.aer.col(c).mean();
        double sum_trd = 0, sum_bst = 0;
        int used_trd = 0, used_bst = 0, ge_trd = 0, ge_bst = 0;
        for (int t = 0; t < n_tasks; ++t) {
            const double aer = tbl.aer(t, c) / 100.0;
            const double ref_trd = aer_trd(t) / 100.0;
            const double ref_bst = aer_bst(t) / 100.0;
            if (ref_trd < 1.0) {
                sum_trd += ((1 - aer) - (1 - ref_trd)) / (1 - ref_trd);
                ++used_trd;
            } else {
                std::fprintf(stderr,
                             "aggregate: task %s has degenerate reference AER, "
                             "excluded from ARCE\n",
                             tbl.tasks[t].c_str());
            }
            if (ref_bst < 1.0) {
                sum_bst += ((1 - aer) - (1 - ref_bst)) / (1 - ref_bst);
                ++used_bst;
            }
            ge_trd += tbl.aer(t, c) <= aer_trd(t);
            ge_bst += tbl.aer(t, c) <= aer_bst(t);
        }
        row.arce_trd = used_trd ? sum_trd / used_trd : 0.0;
        row.arce_bst = used_bst ? sum_bst / used_bst : 0.0;
        row.count_ge_trd = static_cast<double>(ge_trd) / n_tasks;
        row.count_ge_bst = static_cast<double>(ge_bst) / n_tasks;
        rows.push_back(std::move(row));
    }
    return rows;
}

FeatureCountStats feature_count_stats(const std::vector<int>& counts) {
    int c2 = 0, c3 = 0, c4 = 0, total = 0;
    for (int c : counts) {
        if (c < 0) continue;
        ++total;
        if (c <= 2)
            ++c2;
        else if (c == 3)
            ++c3;
        else
            ++c4;
    }
    if (total == 0)
        throw std::invalid_argument("feature_count_stats: no recorded counts");
    FeatureCountStats s;
    s.pct2 = 100.0 * c2 / total;
    s.pct3 = 100.0 * c3 / total;
    s.pct4plus = 100.0 * c4 / total;
    return s;
}

Eigen::MatrixXd standardize_measures(const std::vector<IndicatorRow>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2)
        throw std::invalid_argument("standardize_measures: need >= 2 classifiers");
    Eigen::MatrixXd raw(n, 5);
    for (int i = 0; i < n; ++i)
        raw.row(i) << rows[i].ace, rows[i].arce_trd, rows[i].arce_bst,
            rows[i].count_ge_trd, rows[i].count_ge_bst;
    // ACE is error-like (smaller is better); the rest are edges/counts.
    const bool invert[5] = {true, false, false, false, false};
    Eigen::MatrixXd out(n, 5);
    for (int j = 0; j < 5; ++j) {
        const double lo = raw.col(j).minCoeff(), hi = raw.col(j).maxCoeff();
        if (hi == lo) {
            out.col(j).setOnes();
            continue;
        }
        for (int i = 0; i < n; ++i) {
            const double v = (raw(i, j) - lo) / (hi - lo);
            out(i, j) = invert[j] ? 1.0 - v : v;
        }
    }
    return out;
}

}  // namespace dda
