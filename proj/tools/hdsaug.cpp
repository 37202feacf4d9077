#include "hdsaug/commands.hpp"
#include "hdsaug/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

// "0-7", "3" or "0,2,5" -> explicit list
std::vector<int> parse_k_spec(const std::string& spec) {
    std::vector<int> out;
    const auto dash = spec.find('-');
    if (dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(spec.substr(0, dash));
        const int hi = std::stoi(spec.substr(dash + 1));
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const auto comma = spec.find(',', pos);
        out.push_back(std::stoi(spec.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// "1..30" or "1,2,3"
std::vector<std::uint64_t> parse_seed_spec(const std::string& spec) {
    std::vector<std::uint64_t> out;
    const auto range = spec.find("..");
    if (range != std::string::npos) {
        const std::uint64_t lo = std::stoull(spec.substr(0, range));
        const std::uint64_t hi = std::stoull(spec.substr(range + 2));
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const auto comma = spec.find(',', pos);
        out.push_back(std::stoull(spec.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct CommonFlags {
    std::string config_path;
    std::string mode;
    std::string gen_mode;
    std::string embed_mode;
    std::vector<std::string> strategies;
    std::string k_spec;
    std::string seed_spec;
    std::string out_dir;
    std::string corpus_path;
    std::string pool_path;
    int jobs = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "config file (JSON)");
    cmd->add_option("--mode", flags.mode, "provider mode for generation and embedding: live|replay|mock");
    cmd->add_option("--gen-mode", flags.gen_mode, "generation provider mode only");
    cmd->add_option("--embed-mode", flags.embed_mode, "embedding provider mode only");
    cmd->add_option("--strategy", flags.strategies, "strategies to evaluate (repeatable)");
    cmd->add_option("--k", flags.k_spec, "synthetic-per-patient values, e.g. 0-7 or 0,3,5");
    cmd->add_option("--seeds", flags.seed_spec, "random-strategy seeds, e.g. 1..30 or 1,2,3");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--corpus", flags.corpus_path, "corpus file");
    cmd->add_option("--pool", flags.pool_path, "pool file");
    cmd->add_option("--jobs", flags.jobs, "parallel provider calls");
}

hdsaug::ExperimentConfig resolve_config(const CommonFlags& flags) {
    hdsaug::ExperimentConfig config;
    if (!flags.config_path.empty()) config = hdsaug::load_config(flags.config_path);
    if (!flags.mode.empty()) {
        config.generation_mode = flags.mode;
        config.embedding_mode = flags.mode;
    }
    if (!flags.gen_mode.empty()) config.generation_mode = flags.gen_mode;
    if (!flags.embed_mode.empty()) config.embedding_mode = flags.embed_mode;
    if (!flags.strategies.empty()) config.strategies = flags.strategies;
    if (!flags.k_spec.empty()) config.k_values = parse_k_spec(flags.k_spec);
    if (!flags.seed_spec.empty()) config.random_seeds = parse_seed_spec(flags.seed_spec);
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (!flags.corpus_path.empty()) config.corpus_path = flags.corpus_path;
    if (!flags.pool_path.empty()) config.pool_path = flags.pool_path;
    if (flags.jobs > 0) config.jobs = flags.jobs;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-modal synthetic augmentation pipeline for HDS score regression"};
    app.require_subcommand(1);

    CommonFlags gen_flags, embed_flags, eval_flags;
    std::string inspect_target;

    CLI::App* cmd_generate =
        app.add_subcommand("generate", "generate the synthetic monologue pool from the corpus");
    add_common_flags(cmd_generate, gen_flags);

    CLI::App* cmd_embed = app.add_subcommand("embed", "warm the embedding cache for corpus and pool");
    add_common_flags(cmd_embed, embed_flags);

    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "run the LOOCV sweep and write report files");
    add_common_flags(cmd_evaluate, eval_flags);

    CLI::App* cmd_inspect = app.add_subcommand("inspect", "summarize a corpus, pool or report file");
    cmd_inspect->add_option("path", inspect_target, "file or report directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_generate->parsed()) {
            const auto config = resolve_config(gen_flags);
            const auto outcome = hdsaug::run_generate(config);
            std::cout << "pool: " << config.pool_path << " (" << outcome.n_samples << " samples, "
                      << outcome.provider_calls << " provider calls, replay store holds "
                      << outcome.store_size << ")\n";
        } else if (cmd_embed->parsed()) {
            const auto config = resolve_config(embed_flags);
            const auto outcome = hdsaug::run_embed(config);
            std::cout << "embedded " << outcome.n_texts << " texts (" << outcome.provider_calls
                      << " provider calls)\n";
        } else if (cmd_evaluate->parsed()) {
            const auto config = resolve_config(eval_flags);
            const auto report = hdsaug::run_evaluate(config);
            std::cout << "report: " << config.out_dir << " (" << report.cells.size()
                      << " grid rows, fingerprint " << report.config_fingerprint << ")\n";
        } else if (cmd_inspect->parsed()) {
            std::cout << hdsaug::inspect_path(inspect_target);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
