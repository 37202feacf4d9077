#pragma once

#include <Eigen/Dense>

namespace hdsaug {

// Ridge regression on the top principal-component scores, composed back to
// input space. Kept as the comparison baseline for the PLS path.
struct RidgeModel {
    Eigen::VectorXd coefficients; // input space, d
    double intercept = 0.0;
    double lambda = 0.0;
    Eigen::MatrixXd pca_components; // d x n_pcs, descending eigenvalue order
    Eigen::VectorXd x_mean;
    double y_mean = 0.0;
};

// Centers X, projects onto the top n_pcs principal axes (sign fixed so each
// axis's largest-magnitude coordinate is positive), solves the ridge system
// on the scores and composes input-space coefficients. lambda = 0 with a
// full-rank projection reduces to ordinary least squares.
RidgeModel pca_ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_pcs, double lambda);

double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& x);

} // namespace hdsaug
