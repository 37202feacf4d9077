#include "hdsaug/loocv.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"

#include <algorithm>

namespace hdsaug {

std::string manifest_entry_patient(const std::string& entry) {
    const auto first = entry.find(':');
    if (first == std::string::npos) return {};
    const auto second = entry.find(':', first + 1);
    return entry.substr(first + 1,
                        second == std::string::npos ? std::string::npos : second - first - 1);
}

bool manifest_mentions_patient(const std::vector<std::string>& manifest, const std::string& patient_id) {
    return std::any_of(manifest.begin(), manifest.end(), [&](const std::string& entry) {
        return manifest_entry_patient(entry) == patient_id;
    });
}

namespace {

ClassHistogram histogram_of(const std::vector<const PatientRecord*>& records) {
    ClassHistogram hist;
    for (int s = kScoreMin; s <= kScoreMax; ++s) hist.counts[s] = 0;
    for (const auto* r : records) ++hist.counts[r->hds_score];
    return hist;
}

int clamp_components(int wanted, Eigen::Index n_rows, Eigen::Index dim) {
    const int cap = static_cast<int>(std::min<Eigen::Index>(dim, n_rows - 1));
    return std::max(1, std::min(wanted, cap));
}

} // namespace

std::vector<FoldResult> run_loocv(const Corpus& corpus, const SyntheticPool& pool,
                                  const EmbeddingIndex& embeddings, const LoocvConfig& config) {
    const std::size_t n = corpus.records.size();
    if (n < 4) throw ValidationError("run_loocv: need at least 4 patients");

    std::vector<FoldResult> results;
    results.reserve(n);

    for (std::size_t fold = 0; fold < n; ++fold) {
        const PatientRecord& test = corpus.records[fold];
        try {
            std::vector<const PatientRecord*> train;
            train.reserve(n - 1);
            for (std::size_t i = 0; i < n; ++i)
                if (i != fold) train.push_back(&corpus.records[i]);

            const DeficitMap deficits =
                compute_deficits(histogram_of(train), config.target_per_class);
            const std::set<std::string> excluded{test.patient_id};
            const std::uint64_t fold_seed =
                mix_seed(config.seed, std::string(to_string(config.strategy)) + ":" + test.patient_id);

            FoldResult result;
            result.test_patient_id = test.patient_id;
            result.y_true = test.hds_score;
            result.config_fingerprint = config.config_fingerprint;

            // Raw training matrix: original oral transcriptions first.
            std::vector<std::vector<double>> raw_rows;
            std::vector<int> labels;
            for (const auto* r : train) {
                raw_rows.push_back(embeddings.of(r->oral_text));
                labels.push_back(r->hds_score);
                result.training_manifest.push_back("orig:" + r->patient_id);
            }

            if (config.k_per_patient > 0 &&
                (config.strategy == Strategy::Similarity || config.strategy == Strategy::Random)) {
                AugmentationSelection sel =
                    config.strategy == Strategy::Similarity
                        ? select_similarity(pool, corpus, embeddings, deficits, config.k_per_patient,
                                            excluded)
                        : select_random(pool, deficits, config.k_per_patient, excluded, fold_seed);
                for (std::size_t idx : sel.chosen) {
                    const SyntheticSample& s = pool.samples[idx];
                    raw_rows.push_back(embeddings.of(s.text));
                    labels.push_back(s.hds_score);
                    result.training_manifest.push_back(sample_id(s));
                }
                result.selection = std::move(sel);
            }

            const Eigen::MatrixXd raw = to_matrix(raw_rows);
            const Eigen::VectorXd heldout_raw = to_vector(embeddings.of(test.oral_text));

            Standardizer standardizer = Standardizer::fit(raw);
            Eigen::MatrixXd X = standardizer.apply_rows(raw);
            bool augmented = raw_rows.size() > train.size();

            if (config.strategy == Strategy::Noise && config.k_per_patient > 0) {
                // Copies-per-class mirror the LLM strategies' per-patient cap:
                // a class with c training rows can contribute at most c*k copies.
                DeficitMap capped = deficits;
                const ClassHistogram train_hist = histogram_of(train);
                for (auto& [score, needed] : capped.needed)
                    needed = std::min(needed, train_hist.at(score) * config.k_per_patient);
                NoiseAugmentResult noise = gaussian_noise_augment(X, labels, capped, config.noise_sigma,
                                                                  fold_seed);
                for (const auto& [source, ordinal] : noise.copy_sources)
                    result.training_manifest.push_back(
                        "noise:" + train[static_cast<std::size_t>(source)]->patient_id + ":" +
                        std::to_string(ordinal));
                augmented = !noise.copy_sources.empty();
                X = std::move(noise.rows);
                labels = std::move(noise.labels);
            }

            Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
            for (std::size_t i = 0; i < labels.size(); ++i)
                y(static_cast<Eigen::Index>(i)) = labels[i];

            int n_components;
            if (augmented) {
                n_components = clamp_components(config.regression.fixed_components, X.rows(), X.cols());
            } else {
                n_components =
                    select_components(X, y, config.regression.nested_min, config.regression.nested_max)
                        .chosen;
            }

            const PlsModel model = pls_fit(X, y, n_components);
            result.n_components = model.n_components;
            result.y_pred = pls_predict(model, standardizer.apply(heldout_raw));

            if (config.keep_diagnostics) {
                FoldDiagnostics diag;
                diag.standardizer_fit_rows = raw;
                diag.heldout_raw = heldout_raw;
                diag.standardizer = standardizer;
                result.diagnostics = std::move(diag);
            }
            results.push_back(std::move(result));
        } catch (const Error& e) {
            throw Error("fold for patient \"" + test.patient_id + "\" failed: " + e.what());
        }
    }
    return results;
}

} // namespace hdsaug
