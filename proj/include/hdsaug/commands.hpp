#pragma once

#include "hdsaug/config.hpp"
#include "hdsaug/sweep.hpp"

#include <memory>
#include <string>

namespace hdsaug {

// Provider construction per configured mode. Replay generation returns a
// null provider (the replay store answers everything); live modes read
// endpoint and credential from the environment and fail fast when unset.
std::unique_ptr<GenerationProvider> make_generation_provider(const ExperimentConfig& config);
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const ExperimentConfig& config);

struct GenerateOutcome {
    std::size_t n_samples = 0;
    long provider_calls = 0;
    std::size_t store_size = 0;
};

// Generates (or replays) the full synthetic pool and writes the pool file.
GenerateOutcome run_generate(const ExperimentConfig& config);

struct EmbedOutcome {
    std::size_t n_texts = 0;
    long provider_calls = 0;
};

// Warms the embedding cache for every oral transcription and pool sample.
EmbedOutcome run_embed(const ExperimentConfig& config);

// Runs the full sweep and writes all report files under config.out_dir.
SweepReport run_evaluate(const ExperimentConfig& config);

// Human-readable summary of a corpus file, pool file, report directory or
// metrics table.
std::string inspect_path(const std::string& path);

} // namespace hdsaug
