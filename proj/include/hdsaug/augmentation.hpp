#pragma once

#include "hdsaug/corpus.hpp"
#include "hdsaug/embedding.hpp"
#include "hdsaug/generation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hdsaug {

enum class Strategy { None, Noise, Random, Similarity };

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& s);

// Per-class shortfall against the balancing target.
struct DeficitMap {
    std::map<int, int> needed; // every score in [kScoreMin, kScoreMax] present
    int target = 8;

    int at(int score) const;
    int total() const;
};

DeficitMap compute_deficits(const ClassHistogram& hist, int target);

// dot(a,b) / (|a||b|). Throws on dimension mismatch or a zero-norm vector.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// The class-balanced set of synthetic samples chosen for one fold.
struct AugmentationSelection {
    Strategy strategy = Strategy::None;
    int k_per_patient = 0;
    std::uint64_t seed = 0;                  // random strategy only
    std::vector<std::size_t> chosen;         // indices into the pool, selection order
    std::map<std::string, double> similarity_scores; // sample id -> cosine (similarity strategy)
    std::map<int, int> underfilled;          // score -> shortfall after selection
};

// Fidelity-oriented selection: per non-excluded patient, rank its samples by
// cosine similarity to that patient's original oral transcription (raw
// embedding space) and keep the top k as candidates; then fill each deficit
// class in global descending-similarity order. Ties break lexicographically
// on (patient_id, style_name).
AugmentationSelection select_similarity(const SyntheticPool& pool, const Corpus& corpus,
                                        const EmbeddingIndex& embeddings, const DeficitMap& deficits,
                                        int k_per_patient,
                                        const std::set<std::string>& excluded_patients);

// Diversity-oriented selection: per non-excluded patient, uniformly draw k
// candidate samples; then uniformly fill each deficit class without
// replacement. One RNG stream: patient draws first (pool patient order,
// samples in style-name order), then class draws (ascending score,
// candidates in (patient_id, style_name) order).
AugmentationSelection select_random(const SyntheticPool& pool, const DeficitMap& deficits,
                                    int k_per_patient, const std::set<std::string>& excluded_patients,
                                    std::uint64_t seed);

struct NoiseAugmentResult {
    Eigen::MatrixXd rows;        // originals first, then noisy copies
    std::vector<int> labels;
    // (source row index, copy ordinal) for each appended copy, in order
    std::vector<std::pair<Eigen::Index, int>> copy_sources;
    std::map<int, int> underfilled;
};

// Feature-space baseline: for each deficit class, append needed[s] noisy
// copies made by cycling through that class's rows (row order) and adding
// i.i.d. N(0, sigma^2) per coordinate. Input rows must already be
// standardized. A deficit class with no rows is under-filled, not an error.
NoiseAugmentResult gaussian_noise_augment(const Eigen::MatrixXd& standardized_rows,
                                          const std::vector<int>& labels, const DeficitMap& deficits,
                                          double sigma, std::uint64_t seed);

} // namespace hdsaug
