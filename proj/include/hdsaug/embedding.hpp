#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hdsaug {

// Text -> fixed-dimension vector. Deterministic per provider instance: the
// same text always maps to the same vector.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<double> embed_text(const std::string& text) = 0;
    virtual int dim() const = 0;
    virtual std::string provider_id() const = 0;
    virtual long call_count() const = 0;
};

// Deterministic offline stand-in: a seeded hash of the text expanded into
// dim pseudo-random values in [-1, 1]. Text-sensitive, no semantics claimed.
class MockEmbeddingProvider : public EmbeddingProvider {
public:
    explicit MockEmbeddingProvider(int dim = 768, std::uint64_t seed = 0) : dim_(dim), seed_(seed) {}
    std::vector<double> embed_text(const std::string& text) override;
    int dim() const override { return dim_; }
    std::string provider_id() const override;
    long call_count() const override { return calls_.load(); }

private:
    int dim_;
    std::uint64_t seed_;
    std::atomic<long> calls_{0};
};

// Remote sentence-encoder client. Endpoint, credential and model name come
// from HDSAUG_EMBED_ENDPOINT / HDSAUG_EMBED_API_KEY / HDSAUG_EMBED_MODEL.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    static std::unique_ptr<HttpEmbeddingProvider> from_env(int expected_dim);

    HttpEmbeddingProvider(std::string endpoint, std::string api_key, std::string model, int expected_dim);
    std::vector<double> embed_text(const std::string& text) override;
    int dim() const override { return dim_; }
    std::string provider_id() const override;
    long call_count() const override { return calls_.load(); }

private:
    std::string endpoint_;
    std::string api_key_;
    std::string model_;
    int dim_;
    std::atomic<long> calls_{0};
};

// Persistent vector cache: raw little-endian doubles in vectors.bin plus a
// manifest keyed by (provider_id, text content hash). Synthetic samples are
// re-embedded across sweeps, so hits dominate after the first run.
class EmbeddingCache {
public:
    explicit EmbeddingCache(std::string directory);

    std::optional<std::vector<double>> lookup(const std::string& provider_id,
                                              const std::string& text_hash) const;
    void store(const std::string& provider_id, const std::string& text_hash,
               const std::vector<double>& vec);
    std::size_t size() const;

private:
    std::string directory_;
    mutable std::mutex mutex_;
    std::map<std::string, std::pair<std::size_t, std::size_t>> index_; // key -> (offset, dim)
    std::vector<double> values_;
};

// Embeds one text through the cache. Throws on empty text, provider failure,
// non-finite entries or a dimension mismatch against the provider's dim.
std::vector<double> embed(const std::string& text, EmbeddingProvider& provider,
                          EmbeddingCache* cache = nullptr);

// Prebuilt text -> vector lookup used by selection and evaluation.
class EmbeddingIndex {
public:
    void add(const std::string& text, std::vector<double> vec);
    bool contains(const std::string& text) const;
    const std::vector<double>& of(const std::string& text) const; // throws if missing
    std::size_t size() const { return by_hash_.size(); }

private:
    std::unordered_map<std::string, std::vector<double>> by_hash_;
};

// Embeds every text in `texts` (duplicates collapse to one entry).
EmbeddingIndex embed_texts(const std::vector<std::string>& texts, EmbeddingProvider& provider,
                           EmbeddingCache* cache = nullptr);

// Per-dimension centering/scaling statistics, fitted on training vectors of
// one LOOCV fold only. Population (1/N) standard deviation, floored.
class Standardizer {
public:
    static constexpr double kStdFloor = 1e-8;

    // rows = observations; requires >= 2 rows. Throws ValidationError.
    static Standardizer fit(const Eigen::MatrixXd& train_rows);

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& std_dev() const { return std_; }
    std::size_t fitted_on() const { return fitted_on_; }
    Eigen::Index dim() const { return mean_.size(); }

    bool operator==(const Standardizer& other) const;

private:
    Eigen::VectorXd mean_;
    Eigen::VectorXd std_;
    std::size_t fitted_on_ = 0;
};

// rows(i) = vectors[i]; throws on mixed dimensions.
Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& vectors);
Eigen::VectorXd to_vector(const std::vector<double>& values);

} // namespace hdsaug
