#include "hdsaug/augmentation.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"
#include "hdsaug/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace hdsaug {

const char* to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::None: return "none";
        case Strategy::Noise: return "noise";
        case Strategy::Random: return "random";
        case Strategy::Similarity: return "similarity";
    }
    return "unknown";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "none") return Strategy::None;
    if (s == "noise") return Strategy::Noise;
    if (s == "random") return Strategy::Random;
    if (s == "similarity") return Strategy::Similarity;
    throw ConfigError("unknown strategy \"" + s + "\"");
}

int DeficitMap::at(int score) const {
    const auto it = needed.find(score);
    return it == needed.end() ? 0 : it->second;
}

int DeficitMap::total() const {
    int sum = 0;
    for (const auto& [score, n] : needed) sum += n;
    return sum;
}

DeficitMap compute_deficits(const ClassHistogram& hist, int target) {
    DeficitMap d;
    d.target = target;
    for (int s = kScoreMin; s <= kScoreMax; ++s) d.needed[s] = std::max(0, target - hist.at(s));
    return d;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ValidationError("cosine_similarity: dimension mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ValidationError("cosine_similarity: zero-norm vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

// Pool sample indices grouped per patient, patient order = first appearance.
struct PatientGroups {
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_patient;
};

PatientGroups group_by_patient(const SyntheticPool& pool) {
    PatientGroups g;
    for (std::size_t i = 0; i < pool.samples.size(); ++i) {
        auto& slot = g.by_patient[pool.samples[i].patient_id];
        if (slot.empty()) g.order.push_back(pool.samples[i].patient_id);
        slot.push_back(i);
    }
    return g;
}

void sort_by_style(const SyntheticPool& pool, std::vector<std::size_t>& indices) {
    std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
        return pool.samples[a].style_name < pool.samples[b].style_name;
    });
}

// Uniform draw of `take` elements without replacement; keeps draw order.
std::vector<std::size_t> draw_without_replacement(std::vector<std::size_t> items, std::size_t take,
                                                  Rng& rng) {
    take = std::min(take, items.size());
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rng.uniform_below(items.size() - i);
        std::swap(items[i], items[j]);
    }
    items.resize(take);
    return items;
}

} // namespace

AugmentationSelection select_similarity(const SyntheticPool& pool, const Corpus& corpus,
                                        const EmbeddingIndex& embeddings, const DeficitMap& deficits,
                                        int k_per_patient,
                                        const std::set<std::string>& excluded_patients) {
    AugmentationSelection sel;
    sel.strategy = Strategy::Similarity;
    sel.k_per_patient = k_per_patient;

    std::unordered_map<std::string, const PatientRecord*> patients;
    for (const auto& r : corpus.records) patients[r.patient_id] = &r;

    struct Candidate {
        std::size_t index;
        double similarity;
    };
    std::vector<Candidate> candidates;

    const PatientGroups groups = group_by_patient(pool);
    for (const auto& pid : groups.order) {
        if (excluded_patients.count(pid)) continue;
        const auto pit = patients.find(pid);
        if (pit == patients.end())
            throw ValidationError("pool sample references unknown patient \"" + pid + "\"");
        const auto& anchor = embeddings.of(pit->second->oral_text);

        std::vector<Candidate> ranked;
        for (std::size_t i : groups.by_patient.at(pid)) {
            const double sim = cosine_similarity(embeddings.of(pool.samples[i].text), anchor);
            ranked.push_back({i, sim});
            sel.similarity_scores[sample_id(pool.samples[i])] = sim;
        }
        std::sort(ranked.begin(), ranked.end(), [&](const Candidate& a, const Candidate& b) {
            if (a.similarity != b.similarity) return a.similarity > b.similarity;
            return pool.samples[a.index].style_name < pool.samples[b.index].style_name;
        });
        const std::size_t keep = std::min<std::size_t>(ranked.size(), std::max(0, k_per_patient));
        candidates.insert(candidates.end(), ranked.begin(), ranked.begin() + keep);
    }

    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        const auto& sa = pool.samples[a.index];
        const auto& sb = pool.samples[b.index];
        if (sa.patient_id != sb.patient_id) return sa.patient_id < sb.patient_id;
        return sa.style_name < sb.style_name;
    });

    for (const auto& [score, needed] : deficits.needed) {
        if (needed <= 0) continue;
        int taken = 0;
        for (const auto& c : candidates) {
            if (taken == needed) break;
            if (pool.samples[c.index].hds_score != score) continue;
            sel.chosen.push_back(c.index);
            ++taken;
        }
        if (taken < needed) sel.underfilled[score] = needed - taken;
    }
    return sel;
}

AugmentationSelection select_random(const SyntheticPool& pool, const DeficitMap& deficits,
                                    int k_per_patient, const std::set<std::string>& excluded_patients,
                                    std::uint64_t seed) {
    AugmentationSelection sel;
    sel.strategy = Strategy::Random;
    sel.k_per_patient = k_per_patient;
    sel.seed = seed;

    Rng rng(seed);
    const PatientGroups groups = group_by_patient(pool);

    std::vector<std::size_t> candidates;
    for (const auto& pid : groups.order) {
        if (excluded_patients.count(pid)) continue;
        std::vector<std::size_t> indices = groups.by_patient.at(pid);
        sort_by_style(pool, indices);
        for (std::size_t i : draw_without_replacement(std::move(indices),
                                                      static_cast<std::size_t>(std::max(0, k_per_patient)),
                                                      rng))
            candidates.push_back(i);
    }

    for (const auto& [score, needed] : deficits.needed) {
        if (needed <= 0) continue;
        std::vector<std::size_t> in_class;
        for (std::size_t i : candidates)
            if (pool.samples[i].hds_score == score) in_class.push_back(i);
        std::sort(in_class.begin(), in_class.end(), [&](std::size_t a, std::size_t b) {
            const auto& sa = pool.samples[a];
            const auto& sb = pool.samples[b];
            if (sa.patient_id != sb.patient_id) return sa.patient_id < sb.patient_id;
            return sa.style_name < sb.style_name;
        });
        const auto taken =
            draw_without_replacement(std::move(in_class), static_cast<std::size_t>(needed), rng);
        sel.chosen.insert(sel.chosen.end(), taken.begin(), taken.end());
        if (taken.size() < static_cast<std::size_t>(needed))
            sel.underfilled[score] = needed - static_cast<int>(taken.size());
    }
    return sel;
}

NoiseAugmentResult gaussian_noise_augment(const Eigen::MatrixXd& standardized_rows,
                                          const std::vector<int>& labels, const DeficitMap& deficits,
                                          double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) throw ValidationError("noise sigma must be > 0");
    if (static_cast<std::size_t>(standardized_rows.rows()) != labels.size())
        throw ValidationError("row/label count mismatch in gaussian_noise_augment");

    NoiseAugmentResult result;
    result.labels = labels;

    std::vector<std::pair<Eigen::Index, int>> plan; // (source row, copy ordinal per class)
    for (const auto& [score, needed] : deficits.needed) {
        if (needed <= 0) continue;
        std::vector<Eigen::Index> in_class;
        for (Eigen::Index i = 0; i < standardized_rows.rows(); ++i)
            if (labels[static_cast<std::size_t>(i)] == score) in_class.push_back(i);
        if (in_class.empty()) {
            result.underfilled[score] = needed;
            continue;
        }
        for (int c = 0; c < needed; ++c)
            plan.emplace_back(in_class[static_cast<std::size_t>(c) % in_class.size()], c);
    }

    result.rows.resize(standardized_rows.rows() + static_cast<Eigen::Index>(plan.size()),
                       standardized_rows.cols());
    result.rows.topRows(standardized_rows.rows()) = standardized_rows;

    Rng rng(seed);
    Eigen::Index out = standardized_rows.rows();
    for (const auto& [source, ordinal] : plan) {
        for (Eigen::Index j = 0; j < standardized_rows.cols(); ++j)
            result.rows(out, j) = standardized_rows(source, j) + rng.gaussian(0.0, sigma);
        result.labels.push_back(labels[static_cast<std::size_t>(source)]);
        result.copy_sources.emplace_back(source, ordinal);
        ++out;
    }
    return result;
}

} // namespace hdsaug
