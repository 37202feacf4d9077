#include "hdsaug/commands.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/generation.hpp"
#include "hdsaug/loocv.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

namespace {

namespace fs = std::filesystem;

void ensure_parent_dir(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    fs::create_directories(parent, ec);
}

// Cache-only embedding provider for replay mode: any miss is an error.
class ReplayEmbeddingProvider : public EmbeddingProvider {
public:
    ReplayEmbeddingProvider(std::string id, int dim) : id_(std::move(id)), dim_(dim) {}
    std::vector<double> embed_text(const std::string&) override {
        throw ProviderError("embedding cache miss in replay mode (provider " + id_ + ")");
    }
    int dim() const override { return dim_; }
    std::string provider_id() const override { return id_; }
    long call_count() const override { return 0; }

private:
    std::string id_;
    int dim_;
};

// Writes one audit file per fold for every configuration that selected
// synthetic samples.
class FileAuditSink : public FoldSink {
public:
    explicit FileAuditSink(std::string root) : root_(std::move(root)) {}

    void on_fold(Strategy strategy, int k, std::uint64_t seed, const FoldResult& fold,
                 const SyntheticPool& pool) override {
        if (!fold.selection) return;
        const std::string dir = root_ + "/" + to_string(strategy) + "_k" + std::to_string(k) +
                                "_seed" + std::to_string(seed);
        std::error_code ec;
        fs::create_directories(dir, ec);

        const AugmentationSelection& sel = *fold.selection;
        ordered_json j;
        j["config_fingerprint"] = fold.config_fingerprint;
        j["strategy"] = to_string(strategy);
        j["k_per_patient"] = k;
        j["seed"] = seed;
        j["test_patient_id"] = fold.test_patient_id;
        ordered_json chosen = ordered_json::array();
        for (std::size_t idx : sel.chosen) chosen.push_back(sample_id(pool.samples.at(idx)));
        j["chosen"] = chosen;
        if (!sel.similarity_scores.empty()) {
            ordered_json scores = ordered_json::object();
            for (const auto& [id, sim] : sel.similarity_scores) scores[id] = sim;
            j["similarity_scores"] = scores;
        }
        ordered_json underfilled = ordered_json::object();
        for (const auto& [score, shortfall] : sel.underfilled)
            underfilled[std::to_string(score)] = shortfall;
        j["underfilled"] = underfilled;
        j["training_manifest"] = fold.training_manifest;

        const std::string path = dir + "/fold_" + fold.test_patient_id + ".json";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write selection audit: " + path);
        out << j.dump(2) << '\n';
    }

private:
    std::string root_;
};

std::vector<std::string> evaluation_texts(const Corpus& corpus, const SyntheticPool& pool) {
    std::vector<std::string> texts;
    texts.reserve(corpus.records.size() + pool.samples.size());
    for (const auto& r : corpus.records) texts.push_back(r.oral_text);
    for (const auto& s : pool.samples) texts.push_back(s.text);
    return texts;
}

// The pool must derive from the corpus: known patients, inherited labels.
void check_pool_against_corpus(const SyntheticPool& pool, const Corpus& corpus) {
    std::unordered_map<std::string, int> scores;
    for (const auto& r : corpus.records) scores[r.patient_id] = r.hds_score;
    for (const auto& s : pool.samples) {
        const auto it = scores.find(s.patient_id);
        if (it == scores.end())
            throw ValidationError("pool sample " + sample_id(s) + " references a patient not in the corpus");
        if (it->second != s.hds_score)
            throw ValidationError("pool sample " + sample_id(s) + " carries hds_score " +
                                  std::to_string(s.hds_score) + " but the source patient has " +
                                  std::to_string(it->second));
    }
}

} // namespace

std::unique_ptr<GenerationProvider> make_generation_provider(const ExperimentConfig& config) {
    if (config.generation_mode == "mock")
        return std::make_unique<MockGenerationProvider>(config.mock_seed);
    if (config.generation_mode == "live") return HttpGenerationProvider::from_env(config.decode);
    if (config.generation_mode == "replay") return nullptr;
    throw ConfigError("unknown generation_mode \"" + config.generation_mode + "\"");
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const ExperimentConfig& config) {
    if (config.embedding_mode == "mock")
        return std::make_unique<MockEmbeddingProvider>(config.embedding_dim, config.mock_seed);
    if (config.embedding_mode == "live")
        return HttpEmbeddingProvider::from_env(config.embedding_dim);
    if (config.embedding_mode == "replay") {
        // Replayed lookups key on the provider the cache was populated with.
        const std::string id =
            MockEmbeddingProvider(config.embedding_dim, config.mock_seed).provider_id();
        return std::make_unique<ReplayEmbeddingProvider>(id, config.embedding_dim);
    }
    throw ConfigError("unknown embedding_mode \"" + config.embedding_mode + "\"");
}

GenerateOutcome run_generate(const ExperimentConfig& config) {
    const Corpus corpus = load_corpus(config.corpus_path);
    ReplayStore store(config.replay_dir);
    auto provider = make_generation_provider(config);

    GenerationOptions options;
    options.max_attempts = config.max_attempts;
    options.jobs = config.jobs;
    Generator generator(provider.get(), &store, options);

    const SyntheticPool pool = generator.generate_pool(corpus);
    ensure_parent_dir(config.pool_path);
    save_pool(pool, config.pool_path);

    GenerateOutcome outcome;
    outcome.n_samples = pool.samples.size();
    outcome.provider_calls = provider ? provider->call_count() : 0;
    outcome.store_size = store.size();
    return outcome;
}

EmbedOutcome run_embed(const ExperimentConfig& config) {
    const Corpus corpus = load_corpus(config.corpus_path);
    const SyntheticPool pool = load_pool(config.pool_path);
    EmbeddingCache cache(config.embedding_cache_dir);
    auto provider = make_embedding_provider(config);

    const auto texts = evaluation_texts(corpus, pool);
    const EmbeddingIndex index = embed_texts(texts, *provider, &cache);

    EmbedOutcome outcome;
    outcome.n_texts = index.size();
    outcome.provider_calls = provider->call_count();
    return outcome;
}

SweepReport run_evaluate(const ExperimentConfig& config) {
    const Corpus corpus = load_corpus(config.corpus_path);
    const SyntheticPool pool = load_pool(config.pool_path);
    check_pool_against_corpus(pool, corpus);

    EmbeddingCache cache(config.embedding_cache_dir);
    auto provider = make_embedding_provider(config);
    const EmbeddingIndex index = embed_texts(evaluation_texts(corpus, pool), *provider, &cache);

    SweepConfig sweep_config;
    sweep_config.strategies.clear();
    for (const auto& name : config.strategies) sweep_config.strategies.push_back(strategy_from_string(name));
    sweep_config.k_values = config.k_values;
    sweep_config.random_seeds = config.random_seeds;
    sweep_config.noise_seed = config.noise_seed;
    sweep_config.target_per_class = config.target_per_class;
    sweep_config.noise_sigma = config.noise_sigma;
    sweep_config.regression.fixed_components = config.fixed_components;
    sweep_config.regression.nested_min = config.nested_min;
    sweep_config.regression.nested_max = config.nested_max;
    sweep_config.metrics_low_max = config.metrics_low_max;
    sweep_config.style_low_max = config.style_low_max;
    sweep_config.config_fingerprint = config.fingerprint();

    std::unique_ptr<FileAuditSink> sink;
    if (config.write_selections)
        sink = std::make_unique<FileAuditSink>(config.out_dir + "/selections");

    const SweepReport report = sweep(corpus, pool, index, sweep_config, sink.get());
    export_report(report, config.out_dir);
    save_config(config, config.out_dir + "/config.json");
    return report;
}

// ---------------------------------------------------------------------------
// Inspection

namespace {

std::string inspect_corpus_file(const std::string& path) {
    std::vector<std::string> warnings;
    const Corpus corpus = load_corpus(path, &warnings);
    std::ostringstream os;
    os << "corpus: " << path << "\n" << format_summary(summarize(corpus));
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string inspect_pool_file(const std::string& path) {
    const SyntheticPool pool = load_pool(path);
    std::map<std::string, std::map<std::string, int>> per_patient; // pid -> style -> count
    std::map<int, int> per_class;
    for (const auto& s : pool.samples) {
        ++per_patient[s.patient_id][s.style_name];
        ++per_class[s.hds_score];
    }
    std::ostringstream os;
    os << "pool: " << path << "\n"
       << pool.samples.size() << " samples from " << per_patient.size() << " patients\n";
    os << "patient";
    for (const auto& style : style_table()) os << ',' << style.name;
    os << '\n';
    for (const auto& [pid, styles] : per_patient) {
        os << pid;
        for (const auto& style : style_table()) {
            const auto it = styles.find(std::string(style.name));
            os << ',' << (it == styles.end() ? 0 : it->second);
        }
        os << '\n';
    }
    os << "per-class sample counts:\n";
    for (const auto& [score, count] : per_class) os << "  " << score << ": " << count << "\n";
    return os.str();
}

std::string inspect_metrics_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open report file: " + path);
    std::ostringstream os;
    os << "report: " << path << "\n";
    std::string line;
    std::string best_line;
    double best_rmse = std::numeric_limits<double>::infinity();
    std::size_t rmse_col = 4; // metrics.csv layout; summary.csv overrides below
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!header_seen) {
            header_seen = true;
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == "rmse" || fields[i] == "mean_rmse") rmse_col = i;
            continue;
        }
        if (fields.size() <= rmse_col) continue;
        try {
            const double rmse = std::stod(fields[rmse_col]);
            if (rmse < best_rmse) {
                best_rmse = rmse;
                best_line = line;
            }
        } catch (const std::exception&) {
            continue; // nan rows
        }
    }
    if (!header_seen) throw ParseError(path + ": no header row found");
    if (best_line.empty())
        os << "no finite rmse rows\n";
    else
        os << "best row by rmse: " << best_line << "\n";
    return os.str();
}

} // namespace

std::string inspect_path(const std::string& path) {
    if (fs::is_directory(path)) {
        const std::string metrics = path + "/summary.csv";
        if (fs::exists(metrics)) return inspect_metrics_file(metrics);
        throw ParseError("directory " + path + " holds no summary.csv");
    }
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return inspect_metrics_file(path);

    // JSONL: sniff the first record to tell corpus from pool.
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) break;
    if (line.empty()) throw ParseError(path + ": empty file");
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what()); // nlohmann reports the byte offset
    }
    if (j.contains("style") && j.contains("prompt_hash")) return inspect_pool_file(path);
    if (j.contains("oral_text")) return inspect_corpus_file(path);
    throw ParseError(path + ": unrecognized record shape");
}

} // namespace hdsaug
