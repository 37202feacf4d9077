#include "hdsaug/sweep.hpp"

#include "hdsaug/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

namespace {

SweepCell cell_from_folds(Strategy strategy, int k, std::uint64_t seed,
                          const std::vector<FoldResult>& folds, int metrics_low_max) {
    SweepCell cell;
    cell.strategy = strategy;
    cell.k = k;
    cell.seed = seed;
    std::vector<double> y_true, y_pred;
    for (const auto& f : folds) {
        cell.predictions.push_back({f.test_patient_id, f.y_true, f.y_pred, f.n_components});
        y_true.push_back(f.y_true);
        y_pred.push_back(f.y_pred);
    }
    cell.metric = metrics(y_true, y_pred);
    const StratifiedMae strata = stratified_mae(y_true, y_pred, kScoreMin, metrics_low_max, kScoreMax);
    cell.mae_low = strata.low;
    cell.mae_high = strata.high;
    return cell;
}

double sample_sd(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

void emit_folds(FoldSink* sink, Strategy strategy, int k, std::uint64_t seed,
                const std::vector<FoldResult>& folds, const SyntheticPool& pool) {
    if (!sink) return;
    for (const auto& f : folds) sink->on_fold(strategy, k, seed, f, pool);
}

} // namespace

std::vector<StyleCountRow> style_distribution(const std::vector<AugmentationSelection>& selections,
                                              const SyntheticPool& pool, int low_min, int low_max,
                                              int high_max) {
    std::map<std::pair<std::string, std::string>, long> counts;
    for (const auto& style : style_table()) {
        counts[{"low", std::string(style.name)}] = 0;
        counts[{"high", std::string(style.name)}] = 0;
    }
    for (const auto& sel : selections) {
        for (std::size_t idx : sel.chosen) {
            const SyntheticSample& s = pool.samples.at(idx);
            if (s.hds_score < low_min || s.hds_score > high_max) continue;
            const std::string group = s.hds_score <= low_max ? "low" : "high";
            ++counts[{group, s.style_name}];
        }
    }
    std::vector<StyleCountRow> rows;
    for (const char* group : {"low", "high"})
        for (const auto& style : style_table())
            rows.push_back({group, std::string(style.name), counts[{group, std::string(style.name)}]});
    return rows;
}

SweepReport sweep(const Corpus& corpus, const SyntheticPool& pool, const EmbeddingIndex& embeddings,
                  const SweepConfig& config, FoldSink* sink) {
    SweepReport report;
    report.config_fingerprint = config.config_fingerprint;

    std::vector<std::uint64_t> seeds = config.random_seeds;
    if (seeds.empty())
        for (std::uint64_t s = 1; s <= 30; ++s) seeds.push_back(s);

    LoocvConfig base;
    base.target_per_class = config.target_per_class;
    base.noise_sigma = config.noise_sigma;
    base.regression = config.regression;
    base.config_fingerprint = config.config_fingerprint;

    // Shared unaugmented baseline: every k = 0 grid point degenerates to it.
    std::optional<SweepCell> baseline;
    const auto baseline_cell = [&]() -> const SweepCell& {
        if (!baseline) {
            LoocvConfig cfg = base;
            cfg.strategy = Strategy::None;
            cfg.k_per_patient = 0;
            const auto folds = run_loocv(corpus, pool, embeddings, cfg);
            emit_folds(sink, Strategy::None, 0, 0, folds, pool);
            baseline = cell_from_folds(Strategy::None, 0, 0, folds, config.metrics_low_max);
        }
        return *baseline;
    };

    std::map<int, std::vector<AugmentationSelection>> similarity_selections;

    for (Strategy strategy : config.strategies) {
        for (int k : config.k_values) {
            const bool degenerate = k == 0 || strategy == Strategy::None;
            switch (strategy) {
                case Strategy::None:
                case Strategy::Noise: {
                    const std::uint64_t seed = strategy == Strategy::Noise ? config.noise_seed : 0;
                    if (degenerate) {
                        SweepCell cell = baseline_cell();
                        cell.strategy = strategy;
                        cell.k = k;
                        cell.seed = seed;
                        report.cells.push_back(std::move(cell));
                    } else {
                        LoocvConfig cfg = base;
                        cfg.strategy = strategy;
                        cfg.k_per_patient = k;
                        cfg.seed = seed;
                        const auto folds = run_loocv(corpus, pool, embeddings, cfg);
                        emit_folds(sink, strategy, k, seed, folds, pool);
                        report.cells.push_back(
                            cell_from_folds(strategy, k, seed, folds, config.metrics_low_max));
                    }
                    break;
                }
                case Strategy::Random: {
                    for (std::uint64_t seed : seeds) {
                        if (degenerate) {
                            SweepCell cell = baseline_cell();
                            cell.strategy = strategy;
                            cell.k = k;
                            cell.seed = seed;
                            report.cells.push_back(std::move(cell));
                            continue;
                        }
                        LoocvConfig cfg = base;
                        cfg.strategy = strategy;
                        cfg.k_per_patient = k;
                        cfg.seed = seed;
                        const auto folds = run_loocv(corpus, pool, embeddings, cfg);
                        emit_folds(sink, strategy, k, seed, folds, pool);
                        report.cells.push_back(
                            cell_from_folds(strategy, k, seed, folds, config.metrics_low_max));
                    }
                    break;
                }
                case Strategy::Similarity: {
                    if (degenerate) {
                        SweepCell cell = baseline_cell();
                        cell.strategy = strategy;
                        cell.k = k;
                        cell.seed = 0;
                        report.cells.push_back(std::move(cell));
                        break;
                    }
                    LoocvConfig cfg = base;
                    cfg.strategy = strategy;
                    cfg.k_per_patient = k;
                    const auto folds = run_loocv(corpus, pool, embeddings, cfg);
                    emit_folds(sink, strategy, k, 0, folds, pool);
                    for (const auto& f : folds)
                        if (f.selection) similarity_selections[k].push_back(*f.selection);
                    report.cells.push_back(cell_from_folds(strategy, k, 0, folds, config.metrics_low_max));
                    break;
                }
            }
        }
    }

    // Aggregates per (strategy, k) over seed-level values.
    for (Strategy strategy : config.strategies) {
        for (int k : config.k_values) {
            std::vector<double> maes, rmses, r2s, lows, highs;
            for (const auto& cell : report.cells) {
                if (cell.strategy != strategy || cell.k != k) continue;
                maes.push_back(cell.metric.mae);
                rmses.push_back(cell.metric.rmse);
                r2s.push_back(cell.metric.r2);
                if (cell.mae_low) lows.push_back(*cell.mae_low);
                if (cell.mae_high) highs.push_back(*cell.mae_high);
            }
            if (maes.empty()) continue;
            AggregateRow row;
            row.strategy = strategy;
            row.k = k;
            row.n_seeds = static_cast<int>(maes.size());
            const auto mean_of = [](const std::vector<double>& v) {
                double m = 0.0;
                for (double x : v) m += x;
                return m / static_cast<double>(v.size());
            };
            row.mean.mae = mean_of(maes);
            row.mean.rmse = mean_of(rmses);
            row.mean.r2 = mean_of(r2s);
            row.mean.r2_defined = std::none_of(r2s.begin(), r2s.end(),
                                               [](double v) { return std::isnan(v); });
            const double root_n = std::sqrt(static_cast<double>(maes.size()));
            row.ci_mae = 1.96 * sample_sd(maes) / root_n;
            row.ci_rmse = 1.96 * sample_sd(rmses) / root_n;
            row.ci_r2 = 1.96 * sample_sd(r2s) / root_n;
            if (!lows.empty()) row.mae_low = mean_of(lows);
            if (!highs.empty()) row.mae_high = mean_of(highs);
            report.aggregates.push_back(std::move(row));
        }
    }

    // Style histogram for the best-RMSE similarity configuration.
    if (!similarity_selections.empty()) {
        double best_rmse = std::numeric_limits<double>::infinity();
        for (const auto& row : report.aggregates) {
            if (row.strategy != Strategy::Similarity || row.k == 0) continue;
            if (row.mean.rmse < best_rmse) {
                best_rmse = row.mean.rmse;
                report.style_counts_k = row.k;
            }
        }
        if (report.style_counts_k > 0)
            report.style_counts = style_distribution(similarity_selections[report.style_counts_k], pool,
                                                     kScoreMin, config.style_low_max, kScoreMax);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_optional(const std::optional<double>& v) {
    return v ? fmt_double(*v) : "nan";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write report file: " + path);
    return out;
}

} // namespace

void export_report(const SweepReport& report, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string stamp = "# config_fingerprint: " + report.config_fingerprint + "\n";

    {
        auto out = open_out(out_dir + "/metrics.csv");
        out << stamp << "strategy,k,seed,mae,rmse,r2,mae_low,mae_high\n";
        for (const auto& cell : report.cells) {
            out << to_string(cell.strategy) << ',' << cell.k << ',' << cell.seed << ','
                << fmt_double(cell.metric.mae) << ',' << fmt_double(cell.metric.rmse) << ','
                << fmt_double(cell.metric.r2) << ',' << fmt_optional(cell.mae_low) << ','
                << fmt_optional(cell.mae_high) << '\n';
        }
    }
    {
        auto out = open_out(out_dir + "/summary.csv");
        out << stamp
            << "strategy,k,n_seeds,mean_mae,ci95_mae,mean_rmse,ci95_rmse,mean_r2,ci95_r2,mae_low,mae_high\n";
        for (const auto& row : report.aggregates) {
            out << to_string(row.strategy) << ',' << row.k << ',' << row.n_seeds << ','
                << fmt_double(row.mean.mae) << ',' << fmt_double(row.ci_mae) << ','
                << fmt_double(row.mean.rmse) << ',' << fmt_double(row.ci_rmse) << ','
                << fmt_double(row.mean.r2) << ',' << fmt_double(row.ci_r2) << ','
                << fmt_optional(row.mae_low) << ',' << fmt_optional(row.mae_high) << '\n';
        }
    }
    {
        // one scatter block per (strategy, k): predictions of its first seed
        auto out = open_out(out_dir + "/scatter.csv");
        out << stamp << "patient_id,y_true,y_pred,strategy,k\n";
        std::set<std::pair<Strategy, int>> seen;
        for (const auto& cell : report.cells) {
            if (!seen.insert({cell.strategy, cell.k}).second) continue;
            for (const auto& p : cell.predictions)
                out << p.patient_id << ',' << p.y_true << ',' << fmt_double(p.y_pred) << ','
                    << to_string(cell.strategy) << ',' << cell.k << '\n';
        }
    }
    {
        auto out = open_out(out_dir + "/style_counts.csv");
        out << stamp;
        if (report.style_counts_k > 0)
            out << "# similarity strategy, k = " << report.style_counts_k << "\n";
        out << "group,style,count\n";
        for (const auto& row : report.style_counts)
            out << row.group << ',' << row.style << ',' << row.count << '\n';
    }
    {
        auto out = open_out(out_dir + "/selected_components.csv");
        out << stamp << "strategy,k,seed,patient_id,n_components\n";
        for (const auto& cell : report.cells)
            for (const auto& p : cell.predictions)
                out << to_string(cell.strategy) << ',' << cell.k << ',' << cell.seed << ','
                    << p.patient_id << ',' << p.n_components << '\n';
    }
    {
        // Published reference numbers for orientation only; fixture runs are
        // not comparable to them.
        ordered_json j;
        j["config_fingerprint"] = report.config_fingerprint;
        j["note"] =
            "Reference values measured on the license-restricted GSK2018-A corpus with live GPT-5 "
            "generation; not reproducible without GSK2018-A + GPT-5. Do not compare bundled-fixture "
            "runs against these numbers.";
        j["stratified_mae"] = {
            {"no_augmentation", {{"low_22_27", 2.381}, {"high_28_30", 1.236}}},
            {"gaussian_noise", {{"low_22_27", 2.378}, {"high_28_30", 1.255}}},
            {"similarity_guided", {{"low_22_27", 1.849}, {"high_28_30", 1.237}}},
        };
        j["best_similarity"] = {{"k", 5}, {"rmse", 1.7261}, {"r2", 0.4824}};
        auto out = open_out(out_dir + "/reference_metadata.json");
        out << j.dump(2) << '\n';
    }
}

} // namespace hdsaug
