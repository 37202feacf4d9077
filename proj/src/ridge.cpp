#include "hdsaug/ridge.hpp"

#include "hdsaug/errors.hpp"

#include <algorithm>

namespace hdsaug {

RidgeModel pca_ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_pcs, double lambda) {
    if (X.rows() != y.size()) throw ValidationError("pca_ridge_fit: X rows and y length differ");
    if (X.rows() < 2) throw ValidationError("pca_ridge_fit: need at least 2 training rows");
    if (lambda < 0.0) throw ValidationError("pca_ridge_fit: lambda must be >= 0");
    const int max_pcs = static_cast<int>(std::min(X.cols(), X.rows() - 1));
    if (n_pcs < 1 || n_pcs > max_pcs)
        throw ValidationError("pca_ridge_fit: n_pcs " + std::to_string(n_pcs) + " outside [1, " +
                              std::to_string(max_pcs) + "]");
    if (!X.allFinite() || !y.allFinite()) throw ValidationError("pca_ridge_fit: non-finite input");

    RidgeModel model;
    model.lambda = lambda;
    model.x_mean = X.colwise().mean();
    model.y_mean = y.mean();

    const Eigen::MatrixXd Xc = X.rowwise() - model.x_mean.transpose();

    // Principal axes via thin SVD of the centered data; right singular
    // vectors come out in descending singular-value order.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Xc, Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericError("pca_ridge_fit: SVD failed on degenerate input");
    Eigen::MatrixXd V = svd.matrixV().leftCols(n_pcs);
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        Eigen::Index argmax = 0;
        V.col(c).cwiseAbs().maxCoeff(&argmax);
        if (V(argmax, c) < 0.0) V.col(c) = -V.col(c);
    }
    model.pca_components = V;

    const Eigen::MatrixXd Z = Xc * V; // centered scores
    const Eigen::VectorXd yc = y.array() - model.y_mean;
    Eigen::MatrixXd M = Z.transpose() * Z;
    M.diagonal().array() += lambda;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) throw NumericError("pca_ridge_fit: singular ridge system");
    const Eigen::VectorXd c = lu.solve(Z.transpose() * yc);

    model.coefficients = V * c;
    model.intercept = model.y_mean - model.x_mean.dot(model.coefficients);
    if (!model.coefficients.allFinite()) throw NumericError("pca_ridge_fit: non-finite coefficients");
    return model;
}

double ridge_predict(const RidgeModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.coefficients.size())
        throw ValidationError("ridge_predict: dimension mismatch");
    return model.intercept + x.dot(model.coefficients);
}

} // namespace hdsaug
