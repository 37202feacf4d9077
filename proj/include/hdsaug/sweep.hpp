#pragma once

#include "hdsaug/loocv.hpp"
#include "hdsaug/metrics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hdsaug {

struct SweepConfig {
    std::vector<Strategy> strategies{Strategy::None, Strategy::Noise, Strategy::Random,
                                     Strategy::Similarity};
    std::vector<int> k_values{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::uint64_t> random_seeds; // filled with 1..30 when empty
    std::uint64_t noise_seed = 1;
    int target_per_class = 8;
    double noise_sigma = 0.02;
    RegressionConfig regression;
    std::string config_fingerprint;
    // stratified-MAE grouping and style-analysis grouping are configured
    // independently
    int metrics_low_max = 27;
    int style_low_max = 25;
};

struct FoldPrediction {
    std::string patient_id;
    int y_true = 0;
    double y_pred = 0.0;
    int n_components = 0;
};

// One evaluated grid point (strategy, k, seed).
struct SweepCell {
    Strategy strategy = Strategy::None;
    int k = 0;
    std::uint64_t seed = 0;
    MetricSet metric;
    std::optional<double> mae_low;
    std::optional<double> mae_high;
    std::vector<FoldPrediction> predictions;
};

// Per (strategy, k) aggregation over seeds; the 95% CI half-width uses the
// normal approximation 1.96 * sd / sqrt(n) over seed-level values.
struct AggregateRow {
    Strategy strategy = Strategy::None;
    int k = 0;
    int n_seeds = 0;
    MetricSet mean;
    double ci_mae = 0.0;
    double ci_rmse = 0.0;
    double ci_r2 = 0.0;
    std::optional<double> mae_low;
    std::optional<double> mae_high;
};

struct StyleCountRow {
    std::string group; // "low" | "high"
    std::string style;
    long count = 0;
};

struct SweepReport {
    std::vector<SweepCell> cells;           // (strategy order, k asc, seed asc)
    std::vector<AggregateRow> aggregates;
    std::vector<StyleCountRow> style_counts; // similarity strategy at its best k
    int style_counts_k = -1;
    std::string config_fingerprint;
};

// Receives every fold of every executed LOOCV run (grid points that reuse
// the shared unaugmented baseline do not re-run it).
class FoldSink {
public:
    virtual ~FoldSink() = default;
    virtual void on_fold(Strategy strategy, int k, std::uint64_t seed, const FoldResult& fold,
                         const SyntheticPool& pool) = 0;
};

// Evaluates the full (strategy, k, seed) grid. k = 0 short-circuits to the
// shared unaugmented baseline for every strategy, so those rows are
// identical by construction. Deterministic given corpus, pool and seeds.
SweepReport sweep(const Corpus& corpus, const SyntheticPool& pool, const EmbeddingIndex& embeddings,
                  const SweepConfig& config, FoldSink* sink = nullptr);

// Style histogram per HDS group over a set of similarity selections.
std::vector<StyleCountRow> style_distribution(const std::vector<AugmentationSelection>& selections,
                                              const SyntheticPool& pool, int low_min, int low_max,
                                              int high_max);

// Writes metrics.csv, summary.csv, scatter.csv, style_counts.csv,
// selected_components.csv and reference_metadata.json. Byte-deterministic
// given the report; every file carries the config fingerprint.
void export_report(const SweepReport& report, const std::string& out_dir);

} // namespace hdsaug
