#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

PlsRef nipals_pls1(const Matrix& X, const std::vector<double>& y, int n_components) {
    const std::size_t n = X.size();
    if (n == 0 || y.size() != n) throw std::invalid_argument("nipals_pls1: bad shapes");
    const std::size_t d = X[0].size();

    PlsRef model;
    model.x_mean.assign(d, 0.0);
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) model.x_mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) model.x_mean[j] /= static_cast<double>(n);
    for (double v : y) model.y_mean += v;
    model.y_mean /= static_cast<double>(n);

    Matrix Xd(n, std::vector<double>(d));
    std::vector<double> yd(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) Xd[i][j] = X[i][j] - model.x_mean[j];
        yd[i] = y[i] - model.y_mean;
    }

    for (int a = 0; a < n_components; ++a) {
        // w = X'y, normalized
        std::vector<double> w(d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) w[j] += Xd[i][j] * yd[i];
        const double w_norm = std::sqrt(dot(w, w));
        if (w_norm < 1e-12) break;
        for (auto& v : w) v /= w_norm;

        std::vector<double> t(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) t[i] = dot(Xd[i], w);
        const double tt = dot(t, t);
        if (tt < 1e-24) break;

        std::vector<double> p(d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) p[j] += Xd[i][j] * t[i];
        for (auto& v : p) v /= tt;

        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) q += yd[i] * t[i];
        q /= tt;

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) Xd[i][j] -= t[i] * p[j];
            yd[i] -= q * t[i];
        }

        model.weights.push_back(std::move(w));
        model.x_loadings.push_back(std::move(p));
        model.y_loadings.push_back(q);
    }
    return model;
}

double pls_predict(const PlsRef& model, const std::vector<double>& x) {
    // Sequential route: deflate the query through the loadings and
    // accumulate q_a * t_a. No coefficient vector involved.
    std::vector<double> residual(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) residual[j] = x[j] - model.x_mean[j];

    double prediction = model.y_mean;
    for (std::size_t a = 0; a < model.weights.size(); ++a) {
        const double t = dot(residual, model.weights[a]);
        prediction += model.y_loadings[a] * t;
        for (std::size_t j = 0; j < residual.size(); ++j)
            residual[j] -= t * model.x_loadings[a][j];
    }
    return prediction;
}

namespace {

// Gaussian elimination with partial pivoting; solves A x = b in place.
std::vector<double> solve_dense(Matrix A, std::vector<double> b) {
    const std::size_t m = A.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) < 1e-14) throw std::runtime_error("solve_dense: singular system");
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m, 0.0);
    for (std::size_t r = m; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < m; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

OlsRef normal_equations(const Matrix& X, const std::vector<double>& y, double lambda) {
    const std::size_t n = X.size();
    const std::size_t d = X[0].size();

    std::vector<double> x_mean(d, 0.0);
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) x_mean[j] += X[i][j];
        y_mean += y[i];
    }
    for (auto& v : x_mean) v /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    Matrix G(d, std::vector<double>(d, 0.0));
    std::vector<double> rhs(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            const double xa = X[i][a] - x_mean[a];
            rhs[a] += xa * (y[i] - y_mean);
            for (std::size_t b = 0; b < d; ++b) G[a][b] += xa * (X[i][b] - x_mean[b]);
        }
    }
    for (std::size_t a = 0; a < d; ++a) G[a][a] += lambda;

    OlsRef model;
    model.beta = solve_dense(std::move(G), std::move(rhs));
    model.intercept = y_mean;
    for (std::size_t j = 0; j < d; ++j) model.intercept -= x_mean[j] * model.beta[j];
    return model;
}

} // namespace

OlsRef ols_fit(const Matrix& X, const std::vector<double>& y) { return normal_equations(X, y, 0.0); }

OlsRef ridge_fit(const Matrix& X, const std::vector<double>& y, double lambda) {
    return normal_equations(X, y, lambda);
}

double ols_predict(const OlsRef& model, const std::vector<double>& x) {
    double s = model.intercept;
    for (std::size_t j = 0; j < x.size(); ++j) s += model.beta[j] * x[j];
    return s;
}

std::set<std::pair<std::string, std::string>> brute_force_select(
    const std::vector<SelectionCandidate>& candidates, const std::map<int, int>& needed,
    int k_per_patient) {
    std::set<std::pair<std::string, std::string>> chosen;

    for (const auto& [score, quota] : needed) {
        if (quota <= 0) continue;
        std::vector<const SelectionCandidate*> in_class;
        for (const auto& c : candidates)
            if (c.hds_score == score) in_class.push_back(&c);

        std::vector<const SelectionCandidate*> best, current;
        std::size_t best_count = 0;
        double best_sum = 0.0;
        std::map<std::string, int> per_patient;

        // Exhaustive search: maximize cardinality (capped at the quota),
        // then total similarity, under the per-patient cap.
        std::function<void(std::size_t, double)> dfs = [&](std::size_t idx, double sum) {
            if (current.size() > best_count ||
                (current.size() == best_count && sum > best_sum)) {
                best = current;
                best_count = current.size();
                best_sum = sum;
            }
            if (idx == in_class.size() || current.size() == static_cast<std::size_t>(quota)) return;
            // skip
            dfs(idx + 1, sum);
            // take, if the patient cap allows
            const auto* c = in_class[idx];
            if (per_patient[c->patient_id] < k_per_patient) {
                ++per_patient[c->patient_id];
                current.push_back(c);
                dfs(idx + 1, sum + c->similarity);
                current.pop_back();
                --per_patient[c->patient_id];
            }
        };
        dfs(0, 0.0);
        for (const auto* c : best) chosen.insert({c->patient_id, c->style_name});
    }
    return chosen;
}

} // namespace oracle
