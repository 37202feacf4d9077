#pragma once

#include "hdsaug/corpus.hpp"
#include "hdsaug/rng.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef HDSAUG_DATA_DIR
#define HDSAUG_DATA_DIR "data"
#endif

namespace test_support {

inline std::string fixture_corpus_path() {
    return std::string(HDSAUG_DATA_DIR) + "/fixture_corpus.jsonl";
}

// Fresh scratch directory under the build tree, wiped on creation.
inline std::string scratch_dir(const std::string& name) {
    const auto path = std::filesystem::temp_directory_path() / "hdsaug_tests" / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
    return path.string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Random regression instance with entries in [-1, 1].
inline Eigen::MatrixXd random_matrix(hdsaug::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform01() * 2.0 - 1.0;
    return m;
}

inline Eigen::VectorXd random_vector(hdsaug::Rng& rng, Eigen::Index size) {
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v(i) = rng.uniform01() * 2.0 - 1.0;
    return v;
}

inline std::vector<std::vector<double>> to_nested(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return out;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace test_support
