#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>

namespace hdsaug {

// PLS1 model fitted by NIPALS. Prediction is affine:
// y_hat = y_mean + (x - x_mean) . coefficients.
struct PlsModel {
    int n_components = 0;        // components actually extracted
    Eigen::MatrixXd weights;     // d x A
    Eigen::MatrixXd x_loadings;  // d x A
    Eigen::VectorXd y_loadings;  // A
    Eigen::VectorXd coefficients; // d
    Eigen::VectorXd x_mean;      // d
    double y_mean = 0.0;
    Eigen::MatrixXd scores;      // n x A, training scores (audit / diagnostics)
    bool degenerate = false;     // extraction stopped early on vanishing covariance
};

// Fits PLS1 with up to n_components latent components. Deterministic, no
// randomness. Throws ValidationError on shape violations and NumericError on
// a singular P'W system.
PlsModel pls_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_components);

double pls_predict(const PlsModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd pls_predict_rows(const PlsModel& model, const Eigen::MatrixXd& rows);

struct ComponentSelection {
    int chosen = 0;
    int range_min = 0;
    int range_max = 0;
    std::map<int, double> inner_scores; // component count -> inner-LOOCV MSE
};

// Inner leave-one-out sweep over the candidate component counts, scored by
// mean squared error; ties go to the smaller count. The range is clipped to
// [1, min(d, n-2)]; an empty feasible range is an error.
ComponentSelection select_components(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int range_min,
                                     int range_max);

void save_pls_model(const PlsModel& model, const std::string& path);
PlsModel load_pls_model(const std::string& path);

} // namespace hdsaug
