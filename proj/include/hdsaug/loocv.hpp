#pragma once

#include "hdsaug/augmentation.hpp"
#include "hdsaug/corpus.hpp"
#include "hdsaug/embedding.hpp"
#include "hdsaug/generation.hpp"
#include "hdsaug/pls.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hdsaug {

struct RegressionConfig {
    int fixed_components = 7; // augmented training sets
    int nested_min = 1;       // component range searched when unaugmented
    int nested_max = 15;
};

// Retained only when requested; lets callers verify standardizer scoping
// against the held-out vector structurally.
struct FoldDiagnostics {
    Eigen::MatrixXd standardizer_fit_rows; // raw vectors the standardizer saw
    Eigen::VectorXd heldout_raw;
    Standardizer standardizer;
};

struct FoldResult {
    std::string test_patient_id;
    int y_true = 0;
    double y_pred = 0.0;
    int n_components = 0;
    std::vector<std::string> training_manifest; // orig:<pid> | syn:<pid>:<style> | noise:<pid>:<ordinal>
    std::string config_fingerprint;
    std::optional<AugmentationSelection> selection; // similarity / random folds
    std::optional<FoldDiagnostics> diagnostics;
};

struct LoocvConfig {
    Strategy strategy = Strategy::None;
    int k_per_patient = 0;
    std::uint64_t seed = 0; // random selection / noise draws
    int target_per_class = 8;
    double noise_sigma = 0.02;
    RegressionConfig regression;
    std::string config_fingerprint;
    bool keep_diagnostics = false;
};

// Leave-one-out evaluation with patient-level separation: each fold holds
// out one patient and drops every synthetic sample derived from that
// patient before selection. Standardizer and model are fitted on the fold's
// training rows only. Unaugmented folds pick the component count by nested
// LOOCV; augmented folds use the fixed count.
std::vector<FoldResult> run_loocv(const Corpus& corpus, const SyntheticPool& pool,
                                  const EmbeddingIndex& embeddings, const LoocvConfig& config);

// True if any manifest entry's source patient equals patient_id.
bool manifest_mentions_patient(const std::vector<std::string>& manifest, const std::string& patient_id);

// Source patient of a manifest entry ("orig:p1" -> "p1", "syn:p1:concise" ->
// "p1", "noise:p1:0" -> "p1").
std::string manifest_entry_patient(const std::string& entry);

} // namespace hdsaug
