#pragma once

#include "hdsaug/providers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hdsaug {

// Full experiment configuration. The fingerprint of the canonical JSON form
// is echoed into every output file, so identical configs are traceable to
// identical outputs.
struct ExperimentConfig {
    std::string corpus_path = "data/fixture_corpus.jsonl";
    std::string pool_path = "out/pool.jsonl";
    std::string replay_dir = "out/replay";
    std::string embedding_cache_dir = "out/embedding_cache";
    std::string out_dir = "out/report";

    std::string generation_mode = "mock"; // live | replay | mock
    std::string embedding_mode = "mock";  // live | replay | mock
    int embedding_dim = 768;
    std::uint64_t mock_seed = 0;

    std::vector<std::string> strategies{"none", "noise", "random", "similarity"};
    std::vector<int> k_values{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::uint64_t> random_seeds; // defaults to 1..30 when empty
    std::uint64_t noise_seed = 1;

    int target_per_class = 8;
    double noise_sigma = 0.02;
    int fixed_components = 7;
    int nested_min = 1;
    int nested_max = 15;
    int metrics_low_max = 27;
    int style_low_max = 25;

    int jobs = 4;
    int max_attempts = 3;
    bool write_selections = true;

    DecodeParams decode; // pass-through live decoding parameters, no defaults

    std::string canonical_json() const;
    std::string fingerprint() const;
};

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

} // namespace hdsaug
