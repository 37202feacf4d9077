#include "hdsaug/config.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["corpus_path"] = c.corpus_path;
    j["pool_path"] = c.pool_path;
    j["replay_dir"] = c.replay_dir;
    j["embedding_cache_dir"] = c.embedding_cache_dir;
    j["out_dir"] = c.out_dir;
    j["generation_mode"] = c.generation_mode;
    j["embedding_mode"] = c.embedding_mode;
    j["embedding_dim"] = c.embedding_dim;
    j["mock_seed"] = c.mock_seed;
    j["strategies"] = c.strategies;
    j["k_values"] = c.k_values;
    j["random_seeds"] = c.random_seeds;
    j["noise_seed"] = c.noise_seed;
    j["target_per_class"] = c.target_per_class;
    j["noise_sigma"] = c.noise_sigma;
    j["fixed_components"] = c.fixed_components;
    j["nested_min"] = c.nested_min;
    j["nested_max"] = c.nested_max;
    j["metrics_low_max"] = c.metrics_low_max;
    j["style_low_max"] = c.style_low_max;
    j["jobs"] = c.jobs;
    j["max_attempts"] = c.max_attempts;
    j["write_selections"] = c.write_selections;
    ordered_json decode = ordered_json::object();
    if (c.decode.temperature) decode["temperature"] = *c.decode.temperature;
    if (c.decode.top_p) decode["top_p"] = *c.decode.top_p;
    if (c.decode.max_tokens) decode["max_tokens"] = *c.decode.max_tokens;
    j["decode"] = decode;
    return j;
}

void from_json(const ordered_json& j, ExperimentConfig& c) {
    c.corpus_path = j.value("corpus_path", c.corpus_path);
    c.pool_path = j.value("pool_path", c.pool_path);
    c.replay_dir = j.value("replay_dir", c.replay_dir);
    c.embedding_cache_dir = j.value("embedding_cache_dir", c.embedding_cache_dir);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.generation_mode = j.value("generation_mode", c.generation_mode);
    c.embedding_mode = j.value("embedding_mode", c.embedding_mode);
    c.embedding_dim = j.value("embedding_dim", c.embedding_dim);
    c.mock_seed = j.value("mock_seed", c.mock_seed);
    c.strategies = j.value("strategies", c.strategies);
    c.k_values = j.value("k_values", c.k_values);
    c.random_seeds = j.value("random_seeds", c.random_seeds);
    c.noise_seed = j.value("noise_seed", c.noise_seed);
    c.target_per_class = j.value("target_per_class", c.target_per_class);
    c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
    c.fixed_components = j.value("fixed_components", c.fixed_components);
    c.nested_min = j.value("nested_min", c.nested_min);
    c.nested_max = j.value("nested_max", c.nested_max);
    c.metrics_low_max = j.value("metrics_low_max", c.metrics_low_max);
    c.style_low_max = j.value("style_low_max", c.style_low_max);
    c.jobs = j.value("jobs", c.jobs);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.write_selections = j.value("write_selections", c.write_selections);
    if (j.contains("decode")) {
        const auto& d = j.at("decode");
        if (d.contains("temperature")) c.decode.temperature = d.at("temperature").get<double>();
        if (d.contains("top_p")) c.decode.top_p = d.at("top_p").get<double>();
        if (d.contains("max_tokens")) c.decode.max_tokens = d.at("max_tokens").get<int>();
    }
}

} // namespace

std::string ExperimentConfig::canonical_json() const { return to_json(*this).dump(2); }

std::string ExperimentConfig::fingerprint() const { return content_hash(canonical_json()); }

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    ExperimentConfig c;
    try {
        from_json(j, c);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return c;
}

void save_config(const ExperimentConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write config file: " + path);
    out << config.canonical_json() << '\n';
}

} // namespace hdsaug
