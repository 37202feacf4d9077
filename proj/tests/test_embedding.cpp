#include "hdsaug/embedding.hpp"
#include "hdsaug/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hdsaug;

TEST_CASE("mock embedding provider is deterministic and text-sensitive") {
    MockEmbeddingProvider provider(768, 0);
    const auto a = provider.embed_text("えっと、孫が来ました。");
    const auto b = provider.embed_text("えっと、孫が来ました。");
    const auto c = provider.embed_text("別の文章です。");
    CHECK(a.size() == 768);
    CHECK(a == b);
    CHECK(a != c);
    for (double v : a) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }

    // a different seed is a different provider instance
    MockEmbeddingProvider other(768, 1);
    CHECK(other.embed_text("えっと、孫が来ました。") != a);
    CHECK(other.provider_id() != provider.provider_id());
}

TEST_CASE("embed validates inputs and dimensions") {
    MockEmbeddingProvider provider(16, 0);
    CHECK_THROWS_AS(embed("", provider), ValidationError);
    CHECK(embed("text", provider).size() == 16);
}

TEST_CASE("embedding cache round-trips bit-exactly across reloads") {
    const std::string dir = test_support::scratch_dir("embed_cache");
    MockEmbeddingProvider provider(32, 0);

    std::vector<double> original;
    {
        EmbeddingCache cache(dir);
        original = embed("保存対象の文章。", provider, &cache);
        CHECK(cache.size() == 1);
        // a hit does not call the provider again
        const long calls = provider.call_count();
        const auto hit = embed("保存対象の文章。", provider, &cache);
        CHECK(provider.call_count() == calls);
        CHECK(hit == original);
    }
    {
        EmbeddingCache cache(dir); // reload from disk
        const long calls = provider.call_count();
        const auto reloaded = embed("保存対象の文章。", provider, &cache);
        CHECK(provider.call_count() == calls);
        CHECK(reloaded == original); // bit-exact doubles
    }
}

TEST_CASE("embed_texts collapses duplicates") {
    MockEmbeddingProvider provider(8, 0);
    const EmbeddingIndex index = embed_texts({"a", "b", "a", "c", "b"}, provider);
    CHECK(index.size() == 3);
    CHECK(provider.call_count() == 3);
    CHECK(index.contains("a"));
    CHECK_THROWS_AS(index.of("missing"), ValidationError);
}

TEST_CASE("standardizer statistics on hand-checkable input") {
    Eigen::MatrixXd rows(2, 2);
    rows << 0.0, 0.0, 2.0, 2.0;
    const Standardizer s = Standardizer::fit(rows);
    CHECK(s.mean()(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.mean()(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.std_dev()(0) == doctest::Approx(1.0).epsilon(1e-15)); // population std
    CHECK(s.std_dev()(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.fitted_on() == 2);

    // v = mean -> zero vector
    Eigen::VectorXd at_mean(2);
    at_mean << 1.0, 1.0;
    CHECK(s.apply(at_mean).norm() == 0.0);
}

TEST_CASE("constant dimension floors to epsilon and maps to zero") {
    Eigen::MatrixXd rows(3, 2);
    rows << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0;
    const Standardizer s = Standardizer::fit(rows);
    CHECK(s.std_dev()(0) == Standardizer::kStdFloor);
    Eigen::VectorXd v(2);
    v << 5.0, 2.0;
    const Eigen::VectorXd out = s.apply(v);
    CHECK(out(0) == 0.0);
    CHECK(std::isfinite(out(1)));
}

TEST_CASE("transformed training set has zero mean and unit std") {
    hdsaug::Rng rng(11);
    const Eigen::MatrixXd rows = test_support::random_matrix(rng, 25, 6);
    const Standardizer s = Standardizer::fit(rows);
    const Eigen::MatrixXd z = s.apply_rows(rows);

    // recompute the moments of the transformed data independently
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        double mean = 0.0;
        for (Eigen::Index i = 0; i < z.rows(); ++i) mean += z(i, j);
        mean /= static_cast<double>(z.rows());
        double var = 0.0;
        for (Eigen::Index i = 0; i < z.rows(); ++i) var += (z(i, j) - mean) * (z(i, j) - mean);
        var /= static_cast<double>(z.rows());
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
    }
}

TEST_CASE("standardizer invariants") {
    hdsaug::Rng rng(12);
    Eigen::MatrixXd rows = test_support::random_matrix(rng, 10, 4);
    const Standardizer s = Standardizer::fit(rows);

    SUBCASE("refit on a permutation matches exactly") {
        Eigen::MatrixXd shuffled = rows;
        shuffled.row(0).swap(shuffled.row(7));
        shuffled.row(2).swap(shuffled.row(5));
        const Standardizer s2 = Standardizer::fit(shuffled);
        CHECK(s == s2);
    }
    SUBCASE("apply then invert recovers input") {
        const Eigen::VectorXd v = rows.row(3).transpose();
        const Eigen::VectorXd z = s.apply(v);
        const Eigen::VectorXd back = z.cwiseProduct(s.std_dev()) + s.mean();
        CHECK((back - v).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("extreme held-out input stays finite") {
        Eigen::VectorXd outlier = Eigen::VectorXd::Constant(4, 1e12);
        const Eigen::VectorXd z = s.apply(outlier);
        CHECK(z.allFinite());
    }
    SUBCASE("shape and count errors") {
        Eigen::VectorXd wrong(5);
        wrong.setZero();
        CHECK_THROWS_AS(s.apply(wrong), ValidationError);
        Eigen::MatrixXd one_row(1, 4);
        one_row.setZero();
        CHECK_THROWS_AS(Standardizer::fit(one_row), ValidationError);
    }
}
