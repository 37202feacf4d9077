#include "hdsaug/pls.hpp"

#include "hdsaug/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kDegenerateTol = 1e-12;

void check_fit_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_components) {
    if (X.rows() != y.size()) throw ValidationError("pls_fit: X rows and y length differ");
    if (X.rows() < 2) throw ValidationError("pls_fit: need at least 2 training rows");
    const int max_components = static_cast<int>(std::min(X.cols(), X.rows() - 1));
    if (n_components < 1 || n_components > max_components)
        throw ValidationError("pls_fit: n_components " + std::to_string(n_components) +
                              " outside [1, " + std::to_string(max_components) + "]");
    if (!X.allFinite() || !y.allFinite()) throw ValidationError("pls_fit: non-finite input");
}

} // namespace

PlsModel pls_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_components) {
    check_fit_inputs(X, y, n_components);
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();

    PlsModel model;
    model.x_mean = X.colwise().mean();
    model.y_mean = y.mean();

    Eigen::MatrixXd Xd = X.rowwise() - model.x_mean.transpose();
    Eigen::VectorXd yd = y.array() - model.y_mean;

    Eigen::MatrixXd W(d, n_components);
    Eigen::MatrixXd P(d, n_components);
    Eigen::MatrixXd T(n, n_components);
    Eigen::VectorXd q(n_components);

    int extracted = 0;
    for (int a = 0; a < n_components; ++a) {
        Eigen::VectorXd w = Xd.transpose() * yd;
        const double w_norm = w.norm();
        if (w_norm < kDegenerateTol) {
            model.degenerate = true;
            break;
        }
        w /= w_norm;
        Eigen::VectorXd t = Xd * w;
        const double tt = t.squaredNorm();
        if (tt < kDegenerateTol * kDegenerateTol) {
            model.degenerate = true;
            break;
        }
        const Eigen::VectorXd p = Xd.transpose() * t / tt;
        const double q_a = yd.dot(t) / tt;

        Xd.noalias() -= t * p.transpose();
        yd.noalias() -= q_a * t;

        W.col(a) = w;
        P.col(a) = p;
        T.col(a) = t;
        q(a) = q_a;
        ++extracted;
    }

    model.n_components = extracted;
    if (extracted == 0) {
        // constant response: predict y_mean
        model.weights.resize(d, 0);
        model.x_loadings.resize(d, 0);
        model.scores.resize(n, 0);
        model.y_loadings.resize(0);
        model.coefficients = Eigen::VectorXd::Zero(d);
        return model;
    }

    model.weights = W.leftCols(extracted);
    model.x_loadings = P.leftCols(extracted);
    model.scores = T.leftCols(extracted);
    model.y_loadings = q.head(extracted);

    // beta = W (P'W)^{-1} q
    const Eigen::MatrixXd R = model.x_loadings.transpose() * model.weights;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
    if (!lu.isInvertible()) throw NumericError("pls_fit: singular P'W system");
    model.coefficients = model.weights * lu.solve(model.y_loadings);
    if (!model.coefficients.allFinite()) throw NumericError("pls_fit: non-finite coefficients");
    return model;
}

double pls_predict(const PlsModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.x_mean.size())
        throw ValidationError("pls_predict: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                              std::to_string(model.x_mean.size()) + ")");
    return model.y_mean + (x - model.x_mean).dot(model.coefficients);
}

Eigen::VectorXd pls_predict_rows(const PlsModel& model, const Eigen::MatrixXd& rows) {
    if (rows.cols() != model.x_mean.size()) throw ValidationError("pls_predict_rows: dimension mismatch");
    return ((rows.rowwise() - model.x_mean.transpose()) * model.coefficients).array() + model.y_mean;
}

ComponentSelection select_components(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int range_min,
                                     int range_max) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    ComponentSelection sel;
    sel.range_min = std::max(1, range_min);
    sel.range_max = std::min<int>({range_max, static_cast<int>(d), static_cast<int>(n) - 2});
    if (sel.range_min > sel.range_max)
        throw NumericError("select_components: empty feasible range [" + std::to_string(sel.range_min) +
                           ", " + std::to_string(sel.range_max) + "]");

    Eigen::MatrixXd X_inner(n - 1, d);
    Eigen::VectorXd y_inner(n - 1);

    double best = std::numeric_limits<double>::infinity();
    for (int a = sel.range_min; a <= sel.range_max; ++a) {
        double sse = 0.0;
        for (Eigen::Index held = 0; held < n; ++held) {
            Eigen::Index r = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i == held) continue;
                X_inner.row(r) = X.row(i);
                y_inner(r) = y(i);
                ++r;
            }
            const PlsModel m = pls_fit(X_inner, y_inner, a);
            const double err = pls_predict(m, X.row(held).transpose()) - y(held);
            sse += err * err;
        }
        const double mse = sse / static_cast<double>(n);
        sel.inner_scores[a] = mse;
        if (mse < best) { // strict: ties keep the smaller count
            best = mse;
            sel.chosen = a;
        }
    }
    return sel;
}

namespace {

ordered_json vector_to_json(const Eigen::VectorXd& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) arr.push_back(vector_to_json(m.row(i).transpose()));
    return arr;
}

Eigen::VectorXd vector_from_json(const ordered_json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
    return v;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& arr, Eigen::Index cols_hint) {
    const Eigen::Index rows = static_cast<Eigen::Index>(arr.size());
    Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(arr[0].size()) : cols_hint;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        m.row(i) = vector_from_json(arr[static_cast<std::size_t>(i)]).transpose();
    return m;
}

} // namespace

void save_pls_model(const PlsModel& model, const std::string& path) {
    ordered_json j;
    j["format_version"] = 1;
    j["n_components"] = model.n_components;
    j["degenerate"] = model.degenerate;
    j["y_mean"] = model.y_mean;
    j["x_mean"] = vector_to_json(model.x_mean);
    j["coefficients"] = vector_to_json(model.coefficients);
    j["y_loadings"] = vector_to_json(model.y_loadings);
    j["weights"] = matrix_to_json(model.weights);
    j["x_loadings"] = matrix_to_json(model.x_loadings);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

PlsModel load_pls_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model file: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (j.value("format_version", 0) != 1)
        throw ParseError(path + ": unsupported model format version");
    PlsModel model;
    model.n_components = j.at("n_components").get<int>();
    model.degenerate = j.at("degenerate").get<bool>();
    model.y_mean = j.at("y_mean").get<double>();
    model.x_mean = vector_from_json(j.at("x_mean"));
    model.coefficients = vector_from_json(j.at("coefficients"));
    model.y_loadings = vector_from_json(j.at("y_loadings"));
    model.weights = matrix_from_json(j.at("weights"), model.x_mean.size());
    model.x_loadings = matrix_from_json(j.at("x_loadings"), model.x_mean.size());
    return model;
}

} // namespace hdsaug
