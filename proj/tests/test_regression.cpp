#include "hdsaug/errors.hpp"
#include "hdsaug/pls.hpp"
#include "hdsaug/ridge.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hdsaug;
using test_support::random_matrix;
using test_support::random_vector;
using test_support::to_nested;
using test_support::to_std;

namespace {

// y exactly affine in X plus an intercept; X full column rank w.h.p.
struct LinearInstance {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

LinearInstance exact_linear(hdsaug::Rng& rng, Eigen::Index n, Eigen::Index d) {
    LinearInstance inst;
    inst.X = random_matrix(rng, n, d);
    const Eigen::VectorXd beta = random_vector(rng, d);
    inst.y = inst.X * beta;
    inst.y.array() += rng.uniform01() * 4.0 - 2.0;
    return inst;
}

} // namespace

TEST_CASE("full-component PLS reproduces an exact linear relationship") {
    hdsaug::Rng rng(20);
    const LinearInstance inst = exact_linear(rng, 8, 3);
    const PlsModel model = pls_fit(inst.X, inst.y, 3);
    const Eigen::VectorXd fitted = pls_predict_rows(model, inst.X);
    CHECK((fitted - inst.y).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("first weight vector aligns with a single informative column") {
    hdsaug::Rng rng(31);
    const Eigen::Index n = 40, d = 6;
    Eigen::MatrixXd X = random_matrix(rng, n, d) * 0.01; // near-noise columns
    const Eigen::VectorXd driver = random_vector(rng, n);
    X.col(2) = driver; // the only column strongly tied to y
    const Eigen::VectorXd y = 3.0 * driver;

    const PlsModel model = pls_fit(X, y, 1);
    // brute-check: |covariance| is maximal for column 2
    Eigen::VectorXd cov = (X.rowwise() - X.colwise().mean()).transpose() *
                          (y.array() - y.mean()).matrix();
    Eigen::Index argmax = 0;
    cov.cwiseAbs().maxCoeff(&argmax);
    CHECK(argmax == 2);
    CHECK(std::abs(model.weights.col(0)(2)) > 0.99);
}

TEST_CASE("predictions match the independent textbook oracle") {
    hdsaug::Rng rng(42);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 10);
    Eigen::VectorXd y = random_vector(rng, 20) + X.leftCols(3).rowwise().sum();

    const PlsModel model = pls_fit(X, y, 4);
    const auto reference = oracle::nipals_pls1(to_nested(X), to_std(y), 4);

    for (int probe = 0; probe < 20; ++probe) {
        const Eigen::VectorXd x = random_vector(rng, 10);
        CHECK(std::abs(pls_predict(model, x) - oracle::pls_predict(reference, to_std(x))) < 1e-8);
    }
}

TEST_CASE("score vectors are mutually orthogonal") {
    hdsaug::Rng rng(5);
    const Eigen::MatrixXd X = random_matrix(rng, 15, 8);
    const Eigen::VectorXd y = random_vector(rng, 15);
    const PlsModel model = pls_fit(X, y, 5);

    for (int a = 0; a < model.n_components; ++a)
        for (int b = a + 1; b < model.n_components; ++b) {
            const double dot = model.scores.col(a).dot(model.scores.col(b));
            const double scale = model.scores.col(a).norm() * model.scores.col(b).norm();
            CHECK(std::abs(dot) <= 1e-8 * scale);
        }
}

TEST_CASE("training residual never grows with more components") {
    hdsaug::Rng rng(6);
    const Eigen::MatrixXd X = random_matrix(rng, 18, 7);
    const Eigen::VectorXd y = random_vector(rng, 18);
    double prev = std::numeric_limits<double>::infinity();
    for (int a = 1; a <= 7; ++a) {
        const PlsModel model = pls_fit(X, y, a);
        const double rss = (pls_predict_rows(model, X) - y).squaredNorm();
        CHECK(rss <= prev + 1e-10);
        prev = rss;
    }
}

TEST_CASE("full-rank full-component PLS equals least squares on training data") {
    hdsaug::Rng rng(77);
    const Eigen::MatrixXd X = random_matrix(rng, 25, 6);
    const Eigen::VectorXd y = random_vector(rng, 25);

    const PlsModel pls = pls_fit(X, y, 6);
    const auto ols = oracle::ols_fit(to_nested(X), to_std(y));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double lhs = pls_predict(pls, X.row(i).transpose());
        const double rhs = oracle::ols_predict(ols, to_std(X.row(i).transpose()));
        CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("row permutation leaves the coefficients unchanged") {
    hdsaug::Rng rng(8);
    Eigen::MatrixXd X = random_matrix(rng, 12, 5);
    Eigen::VectorXd y = random_vector(rng, 12);
    const PlsModel base = pls_fit(X, y, 3);

    X.row(0).swap(X.row(11));
    std::swap(y(0), y(11));
    X.row(3).swap(X.row(7));
    std::swap(y(3), y(7));
    const PlsModel permuted = pls_fit(X, y, 3);
    CHECK((base.coefficients - permuted.coefficients).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("prediction identities") {
    hdsaug::Rng rng(9);
    const Eigen::MatrixXd X = random_matrix(rng, 14, 4);
    const Eigen::VectorXd y = random_vector(rng, 14);
    const PlsModel model = pls_fit(X, y, 3);

    SUBCASE("the training mean maps to the response mean") {
        CHECK(pls_predict(model, model.x_mean) == doctest::Approx(model.y_mean).epsilon(1e-12));
    }
    SUBCASE("prediction is affine") {
        for (int probe = 0; probe < 10; ++probe) {
            const Eigen::VectorXd x1 = random_vector(rng, 4);
            const Eigen::VectorXd x2 = random_vector(rng, 4);
            const double alpha = rng.uniform01();
            const double mixed = pls_predict(model, alpha * x1 + (1.0 - alpha) * x2);
            const double expected =
                alpha * pls_predict(model, x1) + (1.0 - alpha) * pls_predict(model, x2);
            CHECK(std::abs(mixed - expected) < 1e-9);
        }
    }
    SUBCASE("dimension mismatch is an error") {
        Eigen::VectorXd wrong(5);
        wrong.setZero();
        CHECK_THROWS_AS(pls_predict(model, wrong), ValidationError);
    }
}

TEST_CASE("degenerate extraction stops early and predicts the mean") {
    Eigen::MatrixXd X(4, 2);
    X << 1, 2, 3, 4, 5, 6, 7, 8;
    Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 5.0); // zero covariance with X
    const PlsModel model = pls_fit(X, y, 2);
    CHECK(model.degenerate);
    CHECK(model.n_components == 0);
    CHECK(pls_predict(model, X.row(0).transpose()) == doctest::Approx(5.0));
}

TEST_CASE("fit input validation") {
    hdsaug::Rng rng(10);
    const Eigen::MatrixXd X = random_matrix(rng, 6, 3);
    const Eigen::VectorXd y = random_vector(rng, 6);
    CHECK_THROWS_AS(pls_fit(X, y, 0), ValidationError);
    CHECK_THROWS_AS(pls_fit(X, y, 4), ValidationError); // > min(d, n-1)
    Eigen::MatrixXd with_nan = X;
    with_nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(pls_fit(with_nan, y, 2), ValidationError);
}

TEST_CASE("component selection finds the intrinsic rank of an exact response") {
    hdsaug::Rng rng(55);
    const Eigen::Index n = 16, d = 8;
    // response driven by exactly two orthogonal-ish latent directions
    const Eigen::MatrixXd X = random_matrix(rng, n, d);
    const Eigen::VectorXd w1 = random_vector(rng, d);
    const Eigen::VectorXd w2 = random_vector(rng, d);
    Eigen::MatrixXd X2(n, d);
    // project X onto span{w1, w2} so y is rank-2 in the columns of X2
    const Eigen::VectorXd t1 = X * w1;
    const Eigen::VectorXd t2 = X * w2;
    X2 = t1 * w1.transpose() + t2 * w2.transpose();
    const Eigen::VectorXd y = 2.0 * t1 - 3.0 * t2;

    const ComponentSelection sel = select_components(X2, y, 1, 6);
    CHECK(sel.chosen == 2);
    CHECK(sel.inner_scores.at(2) < sel.inner_scores.at(1));

    SUBCASE("three training rows cap the feasible range at one") {
        const Eigen::MatrixXd X3 = random_matrix(rng, 3, 5);
        const Eigen::VectorXd y3 = random_vector(rng, 3);
        const ComponentSelection tiny = select_components(X3, y3, 1, 15);
        CHECK(tiny.range_max == 1);
        CHECK(tiny.chosen == 1);
    }
    SUBCASE("empty feasible range is an error") {
        const Eigen::MatrixXd X3 = random_matrix(rng, 3, 5);
        const Eigen::VectorXd y3 = random_vector(rng, 3);
        CHECK_THROWS_AS(select_components(X3, y3, 2, 15), NumericError);
    }
}

TEST_CASE("model serialization round-trips predictions") {
    const std::string dir = test_support::scratch_dir("pls_model");
    hdsaug::Rng rng(60);
    const Eigen::MatrixXd X = random_matrix(rng, 10, 4);
    const Eigen::VectorXd y = random_vector(rng, 10);
    const PlsModel model = pls_fit(X, y, 3);

    save_pls_model(model, dir + "/model.json");
    const PlsModel loaded = load_pls_model(dir + "/model.json");
    CHECK(loaded.n_components == model.n_components);
    for (int probe = 0; probe < 5; ++probe) {
        const Eigen::VectorXd x = random_vector(rng, 4);
        CHECK(pls_predict(loaded, x) == doctest::Approx(pls_predict(model, x)).epsilon(1e-12));
    }
}

TEST_CASE("pca+ridge sanity against the oracle") {
    hdsaug::Rng rng(70);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 5);
    const Eigen::VectorXd y = random_vector(rng, 20) + X.col(0) * 2.0;

    SUBCASE("lambda 0 with a full basis is least squares") {
        const RidgeModel model = pca_ridge_fit(X, y, 5, 0.0);
        const auto ols = oracle::ols_fit(to_nested(X), to_std(y));
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            CHECK(std::abs(ridge_predict(model, X.row(i).transpose()) -
                           oracle::ols_predict(ols, to_std(X.row(i).transpose()))) < 1e-8);
    }
    SUBCASE("huge lambda shrinks to the mean") {
        const RidgeModel model = pca_ridge_fit(X, y, 5, 1e12);
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            CHECK(std::abs(ridge_predict(model, X.row(i).transpose()) - y.mean()) < 1e-6);
    }
    SUBCASE("positive lambda with a full basis matches the ridge normal equations") {
        const RidgeModel model = pca_ridge_fit(X, y, 5, 2.5);
        const auto ridge = oracle::ridge_fit(to_nested(X), to_std(y), 2.5);
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            CHECK(std::abs(ridge_predict(model, X.row(i).transpose()) -
                           oracle::ols_predict(ridge, to_std(X.row(i).transpose()))) < 1e-8);
    }
    SUBCASE("component signs are canonical") {
        const RidgeModel model = pca_ridge_fit(X, y, 3, 1.0);
        for (Eigen::Index c = 0; c < model.pca_components.cols(); ++c) {
            Eigen::Index argmax = 0;
            model.pca_components.col(c).cwiseAbs().maxCoeff(&argmax);
            CHECK(model.pca_components(argmax, c) > 0.0);
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(pca_ridge_fit(X, y, 0, 1.0), ValidationError);
        CHECK_THROWS_AS(pca_ridge_fit(X, y, 6, 1.0), ValidationError);
        CHECK_THROWS_AS(pca_ridge_fit(X, y, 3, -1.0), ValidationError);
    }
}
