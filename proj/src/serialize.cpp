#include "dda/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace dda {
namespace {

json mat_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd mat_from_json(const json& j, int expect_cols = -1) {
    const int rows = static_cast<int>(j.size());
    int cols = expect_cols;
    if (rows > 0) cols = static_cast<int>(j.at(0).size());
    if (cols < 0) throw std::runtime_error("matrix with unknown column count");
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (static_cast<int>(row.size()) != cols)
            throw std::runtime_error("ragged matrix in model file");
        for (int c = 0; c < cols; ++c) m(i, c) = row.at(c).get<double>();
    }
    return m;
}

json vec_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Eigen::VectorXd vec_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

const char* notion_name(DepthNotion n) {
    switch (n) {
        case DepthNotion::Mahalanobis: return "mahalanobis";
        case DepthNotion::Spatial: return "spatial";
        case DepthNotion::Projection: return "projection";
        case DepthNotion::Tukey: return "tukey";
    }
    return "?";
}

DepthNotion notion_from(const std::string& s) {
    if (s == "mahalanobis") return DepthNotion::Mahalanobis;
    if (s == "spatial") return DepthNotion::Spatial;
    if (s == "projection") return DepthNotion::Projection;
    if (s == "tukey") return DepthNotion::Tukey;
    throw std::runtime_error("unknown depth notion: " + s);
}

const char* treatment_name(TreatmentKind k) {
    switch (k) {
        case TreatmentKind::Lda: return "lda";
        case TreatmentKind::Knn: return "knn";
        case TreatmentKind::MahMoment: return "mah-moment";
        case TreatmentKind::MahMcd: return "mah-mcd";
        case TreatmentKind::Svms: return "svms";
    }
    return "?";
}

TreatmentKind treatment_from(const std::string& s) {
    if (s == "lda") return TreatmentKind::Lda;
    if (s == "knn") return TreatmentKind::Knn;
    if (s == "mah-moment") return TreatmentKind::MahMoment;
    if (s == "mah-mcd") return TreatmentKind::MahMcd;
    if (s == "svms") return TreatmentKind::Svms;
    throw std::runtime_error("unknown treatment: " + s);
}

json estimate_to_json(const LocationScatter& e) {
    return {{"center", vec_to_json(e.center)},
            {"scatter", mat_to_json(e.scatter)},
            {"kind", e.kind == EstimatorKind::Moment ? "moment" : "mcd"},
            {"h_fraction", e.h_fraction}};
}

LocationScatter estimate_from_json(const json& j) {
    LocationScatter e;
    e.center = vec_from_json(j.at("center"));
    e.scatter = mat_from_json(j.at("scatter"),
                              static_cast<int>(e.center.size()));
    e.kind = j.at("kind").get<std::string>() == "mcd" ? EstimatorKind::Mcd
                                                      : EstimatorKind::Moment;
    e.h_fraction = j.at("h_fraction").get<double>();
    return e;
}

json treatment_to_json(const Treatment& t) {
    json j{{"kind", treatment_name(t.kind)}};
    switch (t.kind) {
        case TreatmentKind::Lda: {
            const auto& m = std::get<LDAModel>(t.model);
            j["weights"] = vec_to_json(m.weights);
            j["threshold"] = m.threshold;
            j["mean1"] = vec_to_json(m.mean1);
            j["mean2"] = vec_to_json(m.mean2);
            j["prior1"] = m.prior1;
            j["prior2"] = m.prior2;
            break;
        }
        case TreatmentKind::Knn: {
            const auto& m = std::get<KNNModel>(t.model);
            j["points"] = mat_to_json(m.points);
            j["labels"] = m.labels;
            j["k"] = m.k;
            j["metric"] =
                m.metric == KnnMetric::Euclidean ? "euclidean" : "mahalanobis";
            j["whitening"] = mat_to_json(m.whitening);
            j["seed"] = m.seed;
            break;
        }
        case TreatmentKind::MahMoment:
        case TreatmentKind::MahMcd: {
            const auto& m = std::get<MaxMahModel>(t.model);
            j["est1"] = estimate_to_json(m.est1);
            j["est2"] = estimate_to_json(m.est2);
            j["prior1"] = m.prior1;
            j["prior2"] = m.prior2;
            break;
        }
        case TreatmentKind::Svms: {
            const auto& m = std::get<SVMsModel>(t.model);
            j["points"] = mat_to_json(m.points);
            j["y"] = vec_to_json(m.y);
            j["gamma"] = m.gamma;
            j["lambda"] = vec_to_json(m.lambda);
            j["bias"] = m.bias;
            j["margin"] = m.margin;
            j["objective"] = m.objective;
            j["sv_count"] = m.sv_count;
            break;
        }
    }
    return j;
}

Treatment treatment_from_json(const json& j) {
    Treatment t;
    t.kind = treatment_from(j.at("kind").get<std::string>());
    switch (t.kind) {
        case TreatmentKind::Lda: {
            LDAModel m;
            m.weights = vec_from_json(j.at("weights"));
            m.threshold = j.at("threshold").get<double>();
            m.mean1 = vec_from_json(j.at("mean1"));
            m.mean2 = vec_from_json(j.at("mean2"));
            m.prior1 = j.at("prior1").get<double>();
            m.prior2 = j.at("prior2").get<double>();
            t.model = std::move(m);
            break;
        }
        case TreatmentKind::Knn: {
            KNNModel m;
            m.points = mat_from_json(j.at("points"));
            m.labels = j.at("labels").get<std::vector<int>>();
            m.k = j.at("k").get<int>();
            m.metric = j.at("metric").get<std::string>() == "euclidean"
                           ? KnnMetric::Euclidean
                           : KnnMetric::MahalanobisPooled;
            m.whitening = mat_from_json(j.at("whitening"));
            m.seed = j.at("seed").get<std::uint64_t>();
            t.model = std::move(m);
            break;
        }
        case TreatmentKind::MahMoment:
        case TreatmentKind::MahMcd: {
            MaxMahModel m;
            m.est1 = estimate_from_json(j.at("est1"));
            m.est2 = estimate_from_json(j.at("est2"));
            m.prior1 = j.at("prior1").get<double>();
            m.prior2 = j.at("prior2").get<double>();
            t.model = std::move(m);
            break;
        }
        case TreatmentKind::Svms: {
            SVMsModel m;
            m.points = mat_from_json(j.at("points"));
            m.y = vec_from_json(j.at("y"));
            m.gamma = j.at("gamma").get<double>();
            m.lambda = vec_from_json(j.at("lambda"));
            m.bias = j.at("bias").get<double>();
            m.margin = j.at("margin").get<double>();
            m.objective = j.at("objective").get<double>();
            m.sv_count = j.at("sv_count").get<int>();
            t.model = std::move(m);
            break;
        }
    }
    return t;
}

}  // namespace

json alpha_to_json(const AlphaModel& m) {
    json monos = json::array();
    for (const auto& [a, b] : m.basis.monomials)
        monos.push_back(json::array({a, b}));
    return {{"degree", m.basis.degree},
            {"monomials", std::move(monos)},
            {"selected", m.selected},
            {"weights", vec_to_json(m.weights)},
            {"training_emr", m.training_emr},
            {"steps", m.steps}};
}

AlphaModel alpha_from_json(const json& j) {
    AlphaModel m;
    m.basis.degree = j.at("degree").get<int>();
    for (const auto& pair : j.at("monomials"))
        m.basis.monomials.emplace_back(pair.at(0).get<int>(),
                                       pair.at(1).get<int>());
    m.selected = j.at("selected").get<std::vector<int>>();
    m.weights = vec_from_json(j.at("weights"));
    if (m.weights.size() != m.basis.size())
        throw std::runtime_error("separator weight count mismatch");
    m.training_emr = j.at("training_emr").get<double>();
    m.steps = j.at("steps").get<int>();
    return m;
}

json model_to_json(const DDAlphaModel& m) {
    json j;
    j["format"] = "ddalpha-model";
    j["version"] = 1;
    j["depth"] = {{"notion", notion_name(m.cfg.notion)},
                  {"estimator",
                   m.cfg.estimator == EstimatorKind::Moment ? "moment" : "mcd"},
                  {"mcd_fraction", m.cfg.mcd_fraction},
                  {"directions", m.cfg.directions},
                  {"seed", m.cfg.seed}};
    j["options"] = {{"degrees", m.opts.degrees},
                    {"degree_folds", m.opts.degree_folds},
                    {"per_member_pair_rule", m.opts.alpha.per_member_pair_rule},
                    {"svms_for_all", m.opts.svms_for_all}};
    j["class1"] = mat_to_json(m.class1);
    j["class2"] = mat_to_json(m.class2);
    j["prior1"] = m.prior1;
    j["prior2"] = m.prior2;
    j["separator"] = alpha_to_json(m.alpha);
    j["chosen_degree"] = m.chosen_degree;
    j["outsider_share_training"] = m.outsider_share_training;
    if (m.cfg.notion == DepthNotion::Mahalanobis ||
        m.cfg.notion == DepthNotion::Spatial) {
        j["estimates"] = json::array(
            {estimate_to_json(m.estimates[0]), estimate_to_json(m.estimates[1])});
    }
    if (m.treatment) j["treatment"] = treatment_to_json(*m.treatment);
    return j;
}

DDAlphaModel model_from_json(const json& j) {
    if (j.value("format", "") != "ddalpha-model")
        throw std::runtime_error("not a model file");
    DDAlphaModel m;
    const json& d = j.at("depth");
    m.cfg.notion = notion_from(d.at("notion").get<std::string>());
    m.cfg.estimator = d.at("estimator").get<std::string>() == "mcd"
                          ? EstimatorKind::Mcd
                          : EstimatorKind::Moment;
    m.cfg.mcd_fraction = d.at("mcd_fraction").get<double>();
    m.cfg.directions = d.at("directions").get<int>();
    m.cfg.seed = d.at("seed").get<std::uint64_t>();
    const json& o = j.at("options");
    m.opts.degrees = o.at("degrees").get<std::vector<int>>();
    m.opts.degree_folds = o.at("degree_folds").get<int>();
    m.opts.alpha.per_member_pair_rule = o.at("per_member_pair_rule").get<bool>();
    m.opts.svms_for_all = o.at("svms_for_all").get<bool>();
    m.class1 = mat_from_json(j.at("class1"));
    m.class2 = mat_from_json(j.at("class2"), static_cast<int>(m.class1.cols()));
    m.prior1 = j.at("prior1").get<double>();
    m.prior2 = j.at("prior2").get<double>();
    m.alpha = alpha_from_json(j.at("separator"));
    m.chosen_degree = j.at("chosen_degree").get<int>();
    m.outsider_share_training = j.at("outsider_share_training").get<double>();
    switch (m.cfg.notion) {
        case DepthNotion::Mahalanobis:
        case DepthNotion::Spatial:
            m.estimates[0] = estimate_from_json(j.at("estimates").at(0));
            m.estimates[1] = estimate_from_json(j.at("estimates").at(1));
            break;
        case DepthNotion::Projection:
        case DepthNotion::Tukey:
            m.dirs = generate_directions(static_cast<int>(m.class1.cols()),
                                         m.cfg.directions, m.cfg.seed);
            m.projected[0] = build_projected_class(m.class1, m.dirs);
            m.projected[1] = build_projected_class(m.class2, m.dirs);
            break;
    }
    if (j.contains("treatment")) m.treatment = treatment_from_json(j.at("treatment"));
    return m;
}

void save_model(const DDAlphaModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << model_to_json(m).dump(2) << '\n';
}

DDAlphaModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j;
    in >> j;
    return model_from_json(j);
}

}  // namespace dda
