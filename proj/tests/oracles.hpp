#pragma once

// Independent reference implementations used only by tests. Plain nested
// vectors and hand-rolled solves, no Eigen: these stay decoupled from the
// library code paths they check.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

struct PlsRef {
    std::vector<double> x_mean;
    double y_mean = 0.0;
    std::vector<std::vector<double>> weights;    // per component
    std::vector<std::vector<double>> x_loadings; // per component
    std::vector<double> y_loadings;
};

// Textbook PLS1: unit-norm weight from the X'y covariance, scores, loadings,
// deflation. Keeps per-component quantities; prediction runs the sequential
// deflation route and never assembles regression coefficients.
PlsRef nipals_pls1(const Matrix& X, const std::vector<double>& y, int n_components);

double pls_predict(const PlsRef& model, const std::vector<double>& x);

// Ordinary least squares with intercept via normal equations and Gaussian
// elimination with partial pivoting.
struct OlsRef {
    std::vector<double> beta;
    double intercept = 0.0;
};

OlsRef ols_fit(const Matrix& X, const std::vector<double>& y);
double ols_predict(const OlsRef& model, const std::vector<double>& x);

// Ridge on centered data: (Xc'Xc + lambda I) beta = Xc'yc.
OlsRef ridge_fit(const Matrix& X, const std::vector<double>& y, double lambda);

// One candidate sample for the selection oracle.
struct SelectionCandidate {
    std::string patient_id;
    std::string style_name;
    int hds_score = 0;
    double similarity = 0.0;
};

// Exhaustive maximizer: per deficit class, over all subsets respecting the
// per-patient cap, first maximize cardinality (up to needed), then total
// similarity. Returns chosen (patient_id, style_name) pairs.
std::set<std::pair<std::string, std::string>> brute_force_select(
    const std::vector<SelectionCandidate>& candidates, const std::map<int, int>& needed,
    int k_per_patient);

} // namespace oracle
