#include "dda/alpha.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dda/estimators.hpp"

namespace dda {

FeatureBasis FeatureBasis::make(int degree) {
    if (degree < 1) throw std::invalid_argument("FeatureBasis: degree must be >= 1");
    FeatureBasis b;
    b.degree = degree;
    for (int g = 1; g <= degree; ++g)
        for (int a = g; a >= 0; --a) b.monomials.emplace_back(a, g - a);
    return b;
}

Eigen::VectorXd extend(double d1, double d2, const FeatureBasis& basis) {
    Eigen::VectorXd phi(basis.size());
    for (int i = 0; i < basis.size(); ++i) {
        const auto [a, b] = basis.monomials[i];
        phi(i) = std::pow(d1, a) * std::pow(d2, b);
    }
    return phi;
}

BestAngle best_angle(const std::vector<std::array<double, 2>>& points,
                     const std::vector<int>& labels) {
    const int m = static_cast<int>(points.size());
    if (m < 1) throw std::invalid_argument("best_angle: empty input");
    if (labels.size() != points.size())
        throw std::invalid_argument("best_angle: size mismatch");

    constexpr double pi = std::numbers::pi;
    struct P {
        double phi;     // angle mod pi
        bool upper;     // original angle in [pi, 2pi)
        int label;
    };
    std::vector<P> pts;
    pts.reserve(m);
    int origin_errors = 0;  // origin points are always predicted class 1
    for (int i = 0; i < m; ++i) {
        const double x = points[i][0], y = points[i][1];
        if (x == 0.0 && y == 0.0) {
            origin_errors += labels[i] == 2;
            continue;
        }
        double theta = std::atan2(y, x);
        if (theta < 0) theta += 2 * pi;
        const bool upper = theta >= pi;
        pts.push_back({upper ? theta - pi : theta, upper, labels[i]});
    }
    const int m_act = static_cast<int>(pts.size());
    if (m_act == 0) return {0.0, static_cast<double>(origin_errors) / m, 1};

    std::sort(pts.begin(), pts.end(),
              [](const P& a, const P& b) { return a.phi < b.phi; });

    // Distinct critical angles and the index ranges sharing them.
    std::vector<std::pair<int, int>> groups;  // [begin, end) into pts
    for (int i = 0; i < m_act;) {
        int j = i;
        while (j < m_act && pts[j].phi == pts[i].phi) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    const int g_count = static_cast<int>(groups.size());

    auto gap_candidate = [&](int g) {
        if (g + 1 < g_count)
            return 0.5 * (pts[groups[g].first].phi + pts[groups[g + 1].first].phi);
        double c = 0.5 * (pts[groups[g_count - 1].first].phi +
                          pts[groups[0].first].phi + pi);
        return c;
    };

    // e_plus: errors of orientation +1 (class 1 expected on the positive
    // side of the normal) among non-origin points, at the current candidate.
    const double a0 = gap_candidate(0);
    const double s0 = std::sin(a0), c0 = std::cos(a0);
    int e_plus = 0;
    std::vector<char> err_plus(m_act);
    for (int i = 0; i < m_act; ++i) {
        const double theta = pts[i].upper ? pts[i].phi + pi : pts[i].phi;
        const double proj = -s0 * std::cos(theta) + c0 * std::sin(theta);
        const bool positive = proj > 0;
        err_plus[i] = (pts[i].label == 1) ? !positive : positive;
        e_plus += err_plus[i];
    }

    BestAngle best;
    best.emr = 2.0;
    auto consider = [&](double angle) {
        // Reducing the angle by pi negates the normal, so the orientation
        // flips with it.
        int flip = 1;
        if (angle >= pi) {
            angle -= pi;
            flip = -1;
        }
        const double emr_plus =
            static_cast<double>(e_plus + origin_errors) / m;
        const double emr_minus =
            static_cast<double>((m_act - e_plus) + origin_errors) / m;
        if (emr_plus < best.emr) best = {angle, emr_plus, flip};
        if (emr_minus < best.emr) best = {angle, emr_minus, -flip};
    };

    consider(a0);
    for (int g = 1; g < g_count; ++g) {
        // The sweep crosses the critical angle of group g: those points flip.
        for (int i = groups[g].first; i < groups[g].second; ++i) {
            err_plus[i] = !err_plus[i];
            e_plus += err_plus[i] ? 1 : -1;
        }
        consider(gap_candidate(g));
    }
    return best;
}

namespace {

bool pair_qualifies(const FeatureBasis& basis, int i, int j, bool per_member) {
    const auto [a1, b1] = basis.monomials[i];
    const auto [a2, b2] = basis.monomials[j];
    if (per_member) return a1 > 0 && b1 > 0 && a2 > 0 && b2 > 0;
    return (a1 > 0 || a2 > 0) && (b1 > 0 || b2 > 0);
}

}  // namespace

AlphaModel alpha_train(const Eigen::MatrixX2d& dpairs,
                       const std::vector<int>& labels,
                       const FeatureBasis& basis, const AlphaOptions& opts) {
    const int n = static_cast<int>(dpairs.rows());
    if (labels.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("alpha_train: size mismatch");

    std::vector<int> active;
    for (int i = 0; i < n; ++i)
        if (dpairs(i, 0) != 0.0 || dpairs(i, 1) != 0.0) active.push_back(i);
    if (active.empty())
        throw std::runtime_error("alpha_train: all points at the origin of the depth plot");

    const int na = static_cast<int>(active.size());
    const int r = basis.size();
    Eigen::MatrixXd phi(na, r);
    std::vector<int> lab(na);
    for (int i = 0; i < na; ++i) {
        phi.row(i) = extend(dpairs(active[i], 0), dpairs(active[i], 1), basis);
        lab[i] = labels[active[i]];
    }

    auto plane_best = [&](const Eigen::VectorXd& u,
                          const Eigen::VectorXd& v) -> BestAngle {
        std::vector<std::array<double, 2>> pl(na);
        for (int i = 0; i < na; ++i) pl[i] = {u(i), v(i)};
        return best_angle(pl, lab);
    };

    // Step 1: best pair of monomials jointly covering both depths.
    int best_i = -1, best_j = -1;
    BestAngle best;
    best.emr = 2.0;
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            if (!pair_qualifies(basis, i, j, opts.per_member_pair_rule)) continue;
            const BestAngle ba = plane_best(phi.col(i), phi.col(j));
            if (ba.emr < best.emr) {
                best = ba;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i < 0)
        throw std::runtime_error("alpha_train: no admissible monomial pair");

    AlphaModel model;
    model.basis = basis;
    model.steps = 1;
    model.selected = {best_i, best_j};
    Eigen::VectorXd w = Eigen::VectorXd::Zero(r);
    const double o1 = best.orientation;
    w(best_i) = o1 * -std::sin(best.angle);
    w(best_j) = o1 * std::cos(best.angle);
    Eigen::VectorXd f = phi * w;
    double emr = best.emr;

    std::vector<int> remaining;
    for (int i = 0; i < r; ++i)
        if (i != best_i && i != best_j) remaining.push_back(i);

    while (!remaining.empty()) {
        int pick = -1;
        BestAngle step;
        step.emr = 2.0;
        for (int j : remaining) {
            const BestAngle ba = plane_best(f, phi.col(j));
            if (ba.emr < step.emr) {
                step = ba;
                pick = j;
            }
        }
        if (pick < 0 || step.emr >= emr) break;
        const double o = step.orientation;
        w = o * -std::sin(step.angle) * w;
        w(pick) += o * std::cos(step.angle);
        f = o * -std::sin(step.angle) * f;
        f += o * std::cos(step.angle) * phi.col(pick);
        model.selected.push_back(pick);
        remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
        emr = step.emr;
        ++model.steps;
    }

    model.weights = w;
    model.training_emr = emr;
    return model;
}

int alpha_classify(const AlphaModel& model, double d1, double d2) {
    const double v = model.weights.dot(extend(d1, d2, model.basis));
    return v < 0 ? 2 : 1;  // exact zero resolves to class 1
}

int select_degree(const Eigen::MatrixX2d& dpairs, const std::vector<int>& labels,
                  const std::vector<int>& degrees, int folds, std::uint64_t seed,
                  const AlphaOptions& opts) {
    const int n = static_cast<int>(dpairs.rows());
    if (degrees.empty()) throw std::invalid_argument("select_degree: no degrees");
    if (folds > n) {
        std::fprintf(stderr,
                     "select_degree: %d folds exceed %d points, using leave-one-out\n",
                     folds, n);
        folds = n;
    }
    if (folds < 2) folds = std::min(2, n);

    // Stratified fold assignment from a seeded shuffle.
    std::vector<int> fold_of(n, 0);
    std::mt19937_64 rng(mix_seed(seed, 0x666f6c64));  // "fold"
    for (int lab : {1, 2}) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (labels[i] == lab) idx.push_back(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t p = 0; p < idx.size(); ++p)
            fold_of[idx[p]] = static_cast<int>(p) % folds;
    }

    int best_degree = degrees.front();
    int best_errors = -1;
    for (int degree : degrees) {
        const FeatureBasis basis = FeatureBasis::make(degree);
        int errors = 0;
        for (int f = 0; f < folds; ++f) {
            std::vector<int> train_rows, test_rows;
            for (int i = 0; i < n; ++i)
                (fold_of[i] == f ? test_rows : train_rows).push_back(i);
            if (test_rows.empty()) continue;
            Eigen::MatrixX2d tp(train_rows.size(), 2);
            std::vector<int> tl(train_rows.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) {
                tp.row(i) = dpairs.row(train_rows[i]);
                tl[i] = labels[train_rows[i]];
            }
            bool trained = false;
            AlphaModel model;
            try {
                model = alpha_train(tp, tl, basis, opts);
                trained = true;
            } catch (const std::exception&) {
            }
            for (int i : test_rows) {
                const int pred =
                    trained ? alpha_classify(model, dpairs(i, 0), dpairs(i, 1)) : 1;
                errors += pred != labels[i];
            }
        }
        if (best_errors < 0 || errors < best_errors) {
            best_errors = errors;
            best_degree = degree;
        }
    }
    return best_degree;
}

}  // namespace dda
