#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dda/dataset.hpp"
#include "dda/ddalpha.hpp"
#include "dda/eval.hpp"
#include "dda/serialize.hpp"
#include "dda/treatments.hpp"

namespace {

using dda::json;

struct DepthFlags {
    std::string depth = "mahalanobis";
    std::string estimator = "moment";
    double mcd_fraction = 0.75;
    int directions = 10000;
    std::string treatment;
    std::vector<int> degrees = {1, 2, 3};
    std::uint64_t seed = 0;
};

void add_depth_flags(CLI::App* cmd, DepthFlags& f) {
    cmd->add_option("--depth", f.depth, "Depth notion")
        ->check(CLI::IsMember({"mahalanobis", "spatial", "projection", "tukey"}));
    cmd->add_option("--estimator", f.estimator, "Location/scatter estimator")
        ->check(CLI::IsMember({"moment", "mcd"}));
    cmd->add_option("--mcd-fraction", f.mcd_fraction, "MCD subset fraction")
        ->check(CLI::Range(0.5, 1.0));
    cmd->add_option("--directions", f.directions,
                    "Random directions for projection/Tukey depths")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--treatment", f.treatment, "Outsider treatment")
        ->check(CLI::IsMember({"lda", "knn", "mah-moment", "mah-mcd", "svms"}));
    cmd->add_option("--degrees", f.degrees, "Polynomial degree grid")
        ->delimiter(',');
    cmd->add_option("--seed", f.seed, "Random seed");
}

dda::DepthNotion parse_notion(const std::string& s) {
    if (s == "mahalanobis") return dda::DepthNotion::Mahalanobis;
    if (s == "spatial") return dda::DepthNotion::Spatial;
    if (s == "projection") return dda::DepthNotion::Projection;
    return dda::DepthNotion::Tukey;
}

dda::TreatmentKind parse_treatment(const std::string& s) {
    if (s == "lda") return dda::TreatmentKind::Lda;
    if (s == "knn") return dda::TreatmentKind::Knn;
    if (s == "mah-moment") return dda::TreatmentKind::MahMoment;
    if (s == "mah-mcd") return dda::TreatmentKind::MahMcd;
    return dda::TreatmentKind::Svms;
}

dda::DepthConfig depth_config(const DepthFlags& f) {
    dda::DepthConfig cfg;
    cfg.notion = parse_notion(f.depth);
    cfg.estimator =
        f.estimator == "mcd" ? dda::EstimatorKind::Mcd : dda::EstimatorKind::Moment;
    cfg.mcd_fraction = f.mcd_fraction;
    cfg.directions = f.directions;
    cfg.seed = f.seed;
    return cfg;
}

std::optional<dda::TreatmentConfig> treatment_config(const DepthFlags& f) {
    if (f.treatment.empty()) return std::nullopt;
    dda::TreatmentConfig cfg;
    cfg.kind = parse_treatment(f.treatment);
    cfg.mcd_fraction = f.mcd_fraction;
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

// ---------------------------------------------------------------- train

int cmd_train(const std::string& data_path, const std::string& label,
              const std::string& output, const DepthFlags& flags) {
    const dda::Dataset ds = dda::load_csv_file(data_path, label);
    dda::TrainOptions opts;
    opts.degrees = flags.degrees;
    const dda::DDAlphaModel model = dda::ddalpha_train(
        ds, depth_config(flags), treatment_config(flags), flags.seed, opts);
    dda::save_model(model, output);
    std::printf("training_emr %.6f\n", model.alpha.training_emr);
    std::printf("chosen_degree %d\n", model.chosen_degree);
    std::printf("selected_features");
    for (int idx : model.alpha.selected) {
        const auto& [a, b] = model.alpha.basis.monomials[idx];
        std::printf(" d1^%d*d2^%d", a, b);
    }
    std::printf("\n");
    std::printf("outsider_share_training %.6f\n", model.outsider_share_training);
    return 0;
}

// ------------------------------------------------------------- classify

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

int cmd_classify(const std::string& model_path, const std::string& data_path,
                 const std::string& label, const std::string& output) {
    const dda::DDAlphaModel model = dda::load_model(model_path);
    const int d = static_cast<int>(model.class1.cols());

    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + data_path);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("empty file: " + data_path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::vector<std::string> cols = split_csv_line(header);

    // Feature columns: all except the label column. Without an explicit
    // label, a width of d+1 implies the last column holds labels.
    int label_col = -1;
    if (!label.empty()) {
        for (int i = 0; i < static_cast<int>(cols.size()); ++i)
            if (cols[i] == label) label_col = i;
        if (label_col < 0)
            throw std::runtime_error("label column not found: " + label);
    } else if (static_cast<int>(cols.size()) == d + 1) {
        label_col = static_cast<int>(cols.size()) - 1;
    }
    const int n_features =
        static_cast<int>(cols.size()) - (label_col >= 0 ? 1 : 0);
    if (n_features != d)
        throw std::runtime_error("model expects " + std::to_string(d) +
                                 " features, file has " +
                                 std::to_string(n_features));

    std::ostringstream out;
    out << header << ",predicted,route\n";
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != cols.size())
            throw std::runtime_error("row width mismatch: " + line);
        Eigen::VectorXd z(d);
        int f = 0;
        for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
            if (i == label_col) continue;
            z(f++) = std::stod(cells[i]);
        }
        const dda::Classified c = dda::ddalpha_classify(model, z);
        out << line << ',' << c.label << ',' << dda::to_string(c.route) << '\n';
    }
    write_text(output, out.str());
    return 0;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const std::string& data_path, const std::string& label,
              const std::string& format, const std::string& output) {
    const dda::Dataset ds = dda::load_csv_file(data_path, label);
    const dda::DatasetStats s = dda::dataset_stats(ds);
    std::ostringstream out;
    if (format == "json") {
        json j{{"n_total", s.n_total},
               {"log_class_ratio", s.log_class_ratio},
               {"dim", s.dim},
               {"samples_per_dim", s.samples_per_dim},
               {"tied_count", s.tied_count},
               {"outlier_fraction", s.outlier_fraction},
               {"outsider_proneness", s.outsider_proneness}};
        out << j.dump(2) << '\n';
    } else {
        char buf[128];
        out << "n_total " << s.n_total << '\n';
        std::snprintf(buf, sizeof buf, "log_class_ratio %.2f\n", s.log_class_ratio);
        out << buf;
        out << "dim " << s.dim << '\n';
        std::snprintf(buf, sizeof buf, "samples_per_dim %.2f\n", s.samples_per_dim);
        out << buf;
        out << "tied_count " << s.tied_count << '\n';
        std::snprintf(buf, sizeof buf, "outlier_fraction %.4f\n", s.outlier_fraction);
        out << buf;
        std::snprintf(buf, sizeof buf, "outsider_proneness %.4f\n",
                      s.outsider_proneness);
        out << buf;
    }
    write_text(output, out.str());
    return 0;
}

// ------------------------------------------------------------ benchmark

struct ClassifierSpec {
    std::string name;
    std::string type;  // lda | qda | knn | max-mahalanobis | ddalpha
    bool traditional = false;
    std::string metric = "mahalanobis";  // knn
    json raw;
};

dda::ClassifierFactory make_factory(const ClassifierSpec& spec,
                                    const dda::Dataset& full,
                                    std::uint64_t task_seed) {
    auto wrap = [](std::function<int(const Eigen::VectorXd&)> fn) {
        return [fn = std::move(fn)](const Eigen::VectorXd& z) {
            return dda::Classified{fn(z), dda::Route::Insider};
        };
    };

    if (spec.type == "lda") {
        return [wrap](const dda::Dataset& tr, std::uint64_t) {
            auto m = dda::lda_train(tr);
            return dda::FoldClassifier{
                wrap([m](const Eigen::VectorXd& z) { return lda_classify(m, z); }),
                -1};
        };
    }
    if (spec.type == "qda") {
        return [wrap](const dda::Dataset& tr, std::uint64_t) {
            auto m = dda::qda_train(tr);
            return dda::FoldClassifier{
                wrap([m](const Eigen::VectorXd& z) { return qda_classify(m, z); }),
                -1};
        };
    }
    if (spec.type == "knn") {
        const dda::KnnMetric metric = spec.metric == "euclidean"
                                          ? dda::KnnMetric::Euclidean
                                          : dda::KnnMetric::MahalanobisPooled;
        // k is selected once per task on the full sample; each fold then
        // retrains the model with that k fixed.
        const dda::KNNModel ref = dda::knn_train(full, metric, task_seed);
        const int k = ref.k;
        return [wrap, metric, k](const dda::Dataset& tr, std::uint64_t seed) {
            auto m = dda::knn_train(tr, metric, seed, k);
            return dda::FoldClassifier{
                wrap([m](const Eigen::VectorXd& z) { return knn_classify(m, z); }),
                -1};
        };
    }
    if (spec.type == "max-mahalanobis") {
        return [wrap](const dda::Dataset& tr, std::uint64_t) {
            auto e1 = dda::moment_estimates(tr.class_points(1));
            auto e2 = dda::moment_estimates(tr.class_points(2));
            const double p1 = static_cast<double>(tr.n1) / tr.n();
            const double p2 = static_cast<double>(tr.n2) / tr.n();
            return dda::FoldClassifier{
                wrap([=](const Eigen::VectorXd& z) {
                    return dda::max_mahalanobis_classify(z, e1, e2, p1, p2);
                }),
                -1};
        };
    }
    if (spec.type == "ddalpha") {
        DepthFlags f;
        f.depth = spec.raw.value("depth", "mahalanobis");
        f.estimator = spec.raw.value("estimator", "moment");
        f.mcd_fraction = spec.raw.value("mcd_fraction", 0.75);
        f.directions = spec.raw.value("directions", 1000);
        f.treatment = spec.raw.value("treatment", "");
        f.degrees = spec.raw.value("degrees", std::vector<int>{1, 2, 3});
        const dda::DepthConfig cfg = depth_config(f);
        const auto tcfg = treatment_config(f);
        dda::TrainOptions opts;
        opts.degrees = f.degrees;
        opts.svms_for_all = spec.raw.value("svms_for_all", false);
        // degree_mode per-task picks the degree once on the full sample and
        // fixes it inside every fold; per-fold (default) re-runs the CV.
        if (spec.raw.value("degree_mode", "per-fold") == "per-task") {
            const dda::DDAlphaModel ref =
                dda::ddalpha_train(full, cfg, tcfg, task_seed, opts);
            opts.degrees = {ref.chosen_degree};
        }
        return [cfg, tcfg, opts](const dda::Dataset& tr, std::uint64_t seed) {
            auto m = std::make_shared<dda::DDAlphaModel>(
                dda::ddalpha_train(tr, cfg, tcfg, seed, opts));
            return dda::FoldClassifier{
                [m](const Eigen::VectorXd& z) { return ddalpha_classify(*m, z); },
                static_cast<int>(m->alpha.selected.size())};
        };
    }
    throw std::runtime_error("unknown classifier type: " + spec.type);
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string aligned_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) w[j] = header[j].size();
    for (const auto& r : rows)
        for (std::size_t j = 0; j < r.size(); ++j)
            w[j] = std::max(w[j], r[j].size());
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out << "  ";
            if (j == 0)
                out << r[j] << std::string(w[j] - r[j].size(), ' ');
            else
                out << std::string(w[j] - r[j].size(), ' ') << r[j];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out.str();
}

int cmd_benchmark(const std::string& manifest_path, const std::string& output,
                  const std::string& format, std::uint64_t seed, int jobs) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + manifest_path);
    json manifest;
    in >> manifest;

    std::vector<ClassifierSpec> specs;
    for (const json& c : manifest.at("classifiers")) {
        ClassifierSpec s;
        s.name = c.at("name").get<std::string>();
        s.type = c.at("type").get<std::string>();
        s.traditional = c.value(
            "traditional", s.type == "lda" || s.type == "qda" || s.type == "knn");
        s.metric = c.value("metric", "mahalanobis");
        s.raw = c;
        specs.push_back(std::move(s));
    }
    if (specs.empty()) throw std::runtime_error("manifest lists no classifiers");

    dda::AERTable tbl;
    for (const auto& s : specs) tbl.classifiers.push_back(s.name);
    json task_reports = json::array();
    std::vector<std::string> failures;
    std::vector<Eigen::RowVectorXd> aer_rows;
    std::ostringstream feature_text;

    int task_index = 0;
    for (const json& t : manifest.at("tasks")) {
        const std::string tname = t.at("name").get<std::string>();
        const std::string path = t.at("path").get<std::string>();
        const std::string label = t.value("label", "");
        const std::uint64_t task_seed = dda::mix_seed(seed, task_index++);
        try {
            dda::Dataset ds = dda::load_csv_file(path, label);
            ds.name = tname;
            const dda::DatasetStats stats = dda::dataset_stats(ds);
            Eigen::RowVectorXd row(static_cast<int>(specs.size()));
            json clf_reports = json::object();
            for (std::size_t c = 0; c < specs.size(); ++c) {
                const dda::ClassifierFactory factory =
                    make_factory(specs[c], ds, task_seed);
                const dda::LooResult res = dda::loo_cv(factory, ds, task_seed, jobs);
                row(static_cast<int>(c)) = res.aer_percent;
                json rep{{"aer", res.aer_percent}};
                if (specs[c].type == "ddalpha") {
                    const dda::FeatureCountStats fc =
                        dda::feature_count_stats(res.feature_counts);
                    rep["feature_counts"] = {{"pct2", fc.pct2},
                                             {"pct3", fc.pct3},
                                             {"pct4plus", fc.pct4plus}};
                    feature_text << tname << "  " << specs[c].name << "  "
                                 << fmt2(fc.pct2) << " / " << fmt2(fc.pct3)
                                 << " / " << fmt2(fc.pct4plus) << '\n';
                    int outs = 0;
                    for (auto r : res.routes) outs += r == dda::Route::Outsider;
                    rep["outsider_share"] =
                        static_cast<double>(outs) / std::max(1, ds.n());
                }
                clf_reports[specs[c].name] = std::move(rep);
            }
            aer_rows.push_back(row);
            tbl.tasks.push_back(tname);
            task_reports.push_back(
                {{"task", tname},
                 {"stats",
                  {{"n_total", stats.n_total},
                   {"log_class_ratio", stats.log_class_ratio},
                   {"dim", stats.dim},
                   {"samples_per_dim", stats.samples_per_dim},
                   {"tied_count", stats.tied_count},
                   {"outlier_fraction", stats.outlier_fraction},
                   {"outsider_proneness", stats.outsider_proneness}}},
                 {"classifiers", std::move(clf_reports)}});
        } catch (const std::exception& e) {
            failures.push_back(tname + ": " + e.what());
            std::fprintf(stderr, "benchmark: task %s failed: %s\n", tname.c_str(),
                         e.what());
        }
    }
    if (tbl.tasks.empty()) throw std::runtime_error("all tasks failed");
    tbl.aer.resize(static_cast<int>(aer_rows.size()),
                   static_cast<int>(specs.size()));
    for (std::size_t i = 0; i < aer_rows.size(); ++i)
        tbl.aer.row(static_cast<int>(i)) = aer_rows[i];

    std::vector<std::string> traditional;
    for (const auto& s : specs)
        if (s.traditional) traditional.push_back(s.name);
    json indicators = json::array();
    json standardized = json::array();
    std::string indicator_text;
    if (!traditional.empty() && tbl.tasks.size() >= 1) {
        const std::vector<dda::IndicatorRow> rows = aggregate(tbl, traditional);
        std::vector<std::vector<std::string>> trows;
        for (const auto& r : rows) {
            indicators.push_back({{"name", r.name},
                                  {"ace", r.ace},
                                  {"arce_trd", r.arce_trd},
                                  {"arce_bst", r.arce_bst},
                                  {"count_ge_trd", r.count_ge_trd},
                                  {"count_ge_bst", r.count_ge_bst}});
            trows.push_back({r.name, fmt2(r.ace), fmt2(100 * r.arce_trd),
                             fmt2(100 * r.arce_bst), fmt2(r.count_ge_trd),
                             fmt2(r.count_ge_bst)});
        }
        indicator_text = aligned_table(
            {"classifier", "ACE", "ARCE_trd%", "ARCE_bst%", "#<=trd", "#<=bst"},
            trows);
        if (rows.size() >= 2) {
            const Eigen::MatrixXd std_m = dda::standardize_measures(rows);
            for (int i = 0; i < std_m.rows(); ++i) {
                json r = json::array();
                for (int j = 0; j < std_m.cols(); ++j) r.push_back(std_m(i, j));
                standardized.push_back(std::move(r));
            }
        }
    }

    json out;
    out["seed"] = seed;
    out["aer_table"] = {{"tasks", tbl.tasks}, {"classifiers", tbl.classifiers}};
    json aer = json::array();
    for (int i = 0; i < tbl.aer.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < tbl.aer.cols(); ++j) r.push_back(tbl.aer(i, j));
        aer.push_back(std::move(r));
    }
    out["aer_table"]["aer"] = std::move(aer);
    out["indicators"] = std::move(indicators);
    out["standardized"] = std::move(standardized);
    out["tasks"] = std::move(task_reports);
    out["failures"] = failures;

    std::ostringstream text;
    {
        std::vector<std::string> header{"task"};
        for (const auto& c : tbl.classifiers) header.push_back(c);
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < tbl.aer.rows(); ++i) {
            std::vector<std::string> r{tbl.tasks[i]};
            for (int j = 0; j < tbl.aer.cols(); ++j) r.push_back(fmt2(tbl.aer(i, j)));
            rows.push_back(std::move(r));
        }
        text << "Average error rates (%)\n" << aligned_table(header, rows) << '\n';
    }
    if (!indicator_text.empty())
        text << "Indicators\n" << indicator_text << '\n';
    if (!feature_text.str().empty())
        text << "Feature counts (% of folds selecting 2 / 3 / >=4)\n"
             << feature_text.str();

    write_text(output, format == "json" ? out.dump(2) + "\n" : text.str());
    return failures.empty() ? 0 : 1;
}

// -------------------------------------------------------------- contour

int cmd_contour(const std::string& data_path, const std::string& label,
                const DepthFlags& flags, int grid, const std::string& output) {
    const dda::Dataset ds = dda::load_csv_file(data_path, label);
    if (ds.dim() != 2)
        throw std::runtime_error("contour requires 2-D data, got d=" +
                                 std::to_string(ds.dim()));
    dda::TrainOptions opts;
    opts.degrees = flags.degrees;
    const dda::DDAlphaModel model = dda::ddalpha_train(
        ds, depth_config(flags), treatment_config(flags), flags.seed, opts);

    const Eigen::VectorXd lo = ds.points.colwise().minCoeff();
    const Eigen::VectorXd hi = ds.points.colwise().maxCoeff();
    const Eigen::VectorXd pad = 0.1 * (hi - lo);
    std::ostringstream out;
    out << "x,y,depth1,depth2,predicted\n";
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            Eigen::VectorXd z(2);
            z(0) = lo(0) - pad(0) + (hi(0) - lo(0) + 2 * pad(0)) * i / (grid - 1);
            z(1) = lo(1) - pad(1) + (hi(1) - lo(1) + 2 * pad(1)) * j / (grid - 1);
            const auto [d1, d2] = depth_transform(model, z);
            int pred;
            try {
                pred = ddalpha_classify(model, z).label;
            } catch (const std::exception&) {
                pred = 0;  // outsider without treatment
            }
            out << z(0) << ',' << z(1) << ',' << d1 << ',' << d2 << ',' << pred
                << '\n';
        }
    }
    write_text(output, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-based supervised classification toolkit"};
    app.require_subcommand(1);

    DepthFlags train_flags, contour_flags;
    std::string data, label, output, model_path, manifest, format = "text";
    std::uint64_t bench_seed = 0;
    int jobs = 1, grid = 64;

    CLI::App* train = app.add_subcommand("train", "Train a model");
    train->add_option("--data", data, "Training CSV")->required();
    train->add_option("--label", label, "Label column name (default: last)");
    train->add_option("--output,-o", output, "Model file")->required();
    add_depth_flags(train, train_flags);

    CLI::App* classify = app.add_subcommand("classify", "Classify a CSV");
    classify->add_option("--model", model_path, "Model file")->required();
    classify->add_option("--data", data, "Input CSV")->required();
    classify->add_option("--label", label, "Label column to pass through");
    classify->add_option("--output,-o", output, "Output CSV (default stdout)");

    CLI::App* stats = app.add_subcommand("stats", "Dataset difficulty report");
    stats->add_option("--data", data, "Input CSV")->required();
    stats->add_option("--label", label, "Label column name (default: last)");
    stats->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    stats->add_option("--output,-o", output, "Output path (default stdout)");

    CLI::App* bench = app.add_subcommand("benchmark", "Run a task manifest");
    bench->add_option("--manifest", manifest, "Manifest JSON")->required();
    bench->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    bench->add_option("--output,-o", output, "Output path (default stdout)");
    bench->add_option("--seed", bench_seed, "Random seed");
    bench->add_option("--jobs", jobs, "Parallel fold workers")
        ->check(CLI::PositiveNumber);

    CLI::App* contour = app.add_subcommand("contour", "2-D depth grid CSV");
    contour->add_option("--data", data, "Training CSV")->required();
    contour->add_option("--label", label, "Label column name (default: last)");
    contour->add_option("--grid", grid, "Grid resolution per axis")
        ->check(CLI::Range(2, 4096));
    contour->add_option("--output,-o", output, "Output CSV (default stdout)");
    add_depth_flags(contour, contour_flags);

    CLI11_PARSE(app, argc, argv);
    try {
        if (train->parsed())
            return cmd_train(data, label, output, train_flags);
        if (classify->parsed())
            return cmd_classify(model_path, data, label, output);
        if (stats->parsed()) return cmd_stats(data, label, format, output);
        if (bench->parsed())
            return cmd_benchmark(manifest, output, format, bench_seed, jobs);
        if (contour->parsed())
            return cmd_contour(data, label, contour_flags, grid, output);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
