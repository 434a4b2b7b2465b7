#include "dda/ddalpha.hpp"

#include <cstdio>
#include <stdexcept>

namespace dda {

std::string to_string(Route r) {
    switch (r) {
        case Route::Insider: return "insider";
        case Route::OneZero: return "one-zero";
        case Route::Outsider: return "outsider";
    }
    return "?";
}

std::pair<double, double> depth_transform(const DDAlphaModel& model,
                                          const Eigen::VectorXd& z) {
    switch (model.cfg.notion) {
        case DepthNotion::Mahalanobis:
            return {mahalanobis_depth(z, model.estimates[0]),
                    mahalanobis_depth(z, model.estimates[1])};
        case DepthNotion::Spatial:
            return {spatial_depth(z, model.class1, model.estimates[0]),
                    spatial_depth(z, model.class2, model.estimates[1])};
        case DepthNotion::Projection:
            return {projection_depth_random(z, model.dirs, model.projected[0]),
                    projection_depth_random(z, model.dirs, model.projected[1])};
        case DepthNotion::Tukey:
            return {random_tukey_depth(z, model.dirs, model.projected[0]),
                    random_tukey_depth(z, model.dirs, model.projected[1])};
    }
    throw std::logic_error("depth_transform: bad notion");
}

DDAlphaModel ddalpha_train(const Dataset& ds, const DepthConfig& cfg,
                           const std::optional<TreatmentConfig>& treatment_cfg,
                           std::uint64_t seed, const TrainOptions& opts) {
    DDAlphaModel model;
    model.cfg = cfg;
    model.cfg.seed = seed;
    model.opts = opts;
    model.class1 = ds.class_points(1);
    model.class2 = ds.class_points(2);
    model.prior1 = static_cast<double>(ds.n1) / ds.n();
    model.prior2 = static_cast<double>(ds.n2) / ds.n();

    const bool needs_treatment = cfg.notion == DepthNotion::Tukey;
    if (needs_treatment && !treatment_cfg)
        throw std::runtime_error(
            "ddalpha_train: the Tukey depth vanishes outside the class hulls; "
            "configure an outsider treatment");
    if (!needs_treatment && treatment_cfg)
        std::fprintf(stderr,
                     "ddalpha_train: depth never vanishes, ignoring the "
                     "configured treatment\n");

    Eigen::MatrixX2d dpairs(ds.n(), 2);
    switch (cfg.notion) {
        case DepthNotion::Mahalanobis:
        case DepthNotion::Spatial: {
            for (int c = 0; c < 2; ++c) {
                const Eigen::MatrixXd& pts = c == 0 ? model.class1 : model.class2;
                model.estimates[c] =
                    cfg.estimator == EstimatorKind::Moment
                        ? moment_estimates(pts)
                        : mcd_estimates(pts, cfg.mcd_fraction, 500,
                                        mix_seed(seed, 10 + c));
            }
            for (int i = 0; i < ds.n(); ++i) {
                const auto [d1, d2] =
                    depth_transform(model, ds.points.row(i).transpose());
                dpairs(i, 0) = d1;
                dpairs(i, 1) = d2;
            }
            break;
        }
        case DepthNotion::Projection:
        case DepthNotion::Tukey: {
            model.dirs = generate_directions(ds.dim(), cfg.directions, seed);
            model.projected[0] = build_projected_class(model.class1, model.dirs);
            model.projected[1] = build_projected_class(model.class2, model.dirs);
            const bool tukey = cfg.notion == DepthNotion::Tukey;
            for (int c = 0; c < 2; ++c) {
                const Eigen::VectorXd col =
                    tukey ? random_tukey_depth_batch(ds.points, model.dirs,
                                                     model.projected[c])
                          : projection_depth_random_batch(ds.points, model.dirs,
                                                          model.projected[c]);
                dpairs.col(c) = col;
            }
            break;
        }
    }

    int zero_pairs = 0;
    for (int i = 0; i < ds.n(); ++i)
        zero_pairs += dpairs(i, 0) == 0.0 && dpairs(i, 1) == 0.0;
    model.outsider_share_training = static_cast<double>(zero_pairs) / ds.n();

    try {
        model.chosen_degree =
            select_degree(dpairs, ds.labels, opts.degrees, opts.degree_folds,
                          mix_seed(seed, 20), opts.alpha);
        model.alpha = alpha_train(dpairs, ds.labels,
                                  FeatureBasis::make(model.chosen_degree),
                                  opts.alpha);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(
            std::string(e.what()) +
            " (increase the direction count or use a non-vanishing depth)");
    }

    if (needs_treatment) {
        // The depth rule without a treatment, used for the SVM-s removal step.
        auto dda_rule = [&model](const Eigen::VectorXd& z) {
            const auto [d1, d2] = depth_transform(model, z);
            if (d1 == 0.0 && d2 > 0.0) return 2;
            if (d2 == 0.0 && d1 > 0.0) return 1;
            return alpha_classify(model.alpha, d1, d2);
        };
        model.treatment =
            train_treatment(ds, *treatment_cfg, dda_rule, mix_seed(seed, 30));
    }
    return model;
}

Classified ddalpha_classify(const DDAlphaModel& model, const Eigen::VectorXd& z) {
    if (model.opts.svms_for_all && model.treatment &&
        model.treatment->kind == TreatmentKind::Svms)
        return {model.treatment->classify(z), Route::Outsider};

    const auto [d1, d2] = depth_transform(model, z);
    if (d1 == 0.0 && d2 == 0.0) {
        if (!model.treatment)
            throw std::runtime_error("ddalpha_classify: outsider without treatment");
        return {model.treatment->classify(z), Route::Outsider};
    }
    if (d1 == 0.0) return {2, Route::OneZero};
    if (d2 == 0.0) return {1, Route::OneZero};
    return {alpha_classify(model.alpha, d1, d2), Route::Insider};
}

}  // namespace dda
