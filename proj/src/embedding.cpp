#include "hdsaug/embedding.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"

#include <nlohmann/json.hpp>

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <vector>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Providers

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string getenv_str(const char* name) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
}

} // namespace

std::vector<double> MockEmbeddingProvider::embed_text(const std::string& text) {
    calls_.fetch_add(1);
    std::uint64_t state = fnv1a64(text) ^ mix_seed(seed_, "mock-embed");
    std::vector<double> out(static_cast<std::size_t>(dim_));
    for (auto& v : out)
        v = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0; // [-1, 1)
    return out;
}

std::string MockEmbeddingProvider::provider_id() const {
    return "mock-embed:d=" + std::to_string(dim_) + ":s=" + std::to_string(seed_);
}

std::unique_ptr<HttpEmbeddingProvider> HttpEmbeddingProvider::from_env(int expected_dim) {
    const std::string endpoint = getenv_str("HDSAUG_EMBED_ENDPOINT");
    const std::string key = getenv_str("HDSAUG_EMBED_API_KEY");
    if (endpoint.empty() || key.empty())
        throw ConfigError("live embedding mode requires HDSAUG_EMBED_ENDPOINT and HDSAUG_EMBED_API_KEY");
    return std::make_unique<HttpEmbeddingProvider>(endpoint, key, getenv_str("HDSAUG_EMBED_MODEL"),
                                                   expected_dim);
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string endpoint, std::string api_key, std::string model,
                                             int expected_dim)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)), model_(std::move(model)),
      dim_(expected_dim) {}

std::vector<double> HttpEmbeddingProvider::embed_text(const std::string& text) {
    calls_.fetch_add(1);
    const auto scheme_end = endpoint_.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("malformed endpoint URL: " + endpoint_);
    const auto path_start = endpoint_.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos ? endpoint_ : endpoint_.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

    httplib::Client client(base);
    client.set_read_timeout(60, 0);
    ordered_json body;
    if (!model_.empty()) body["model"] = model_;
    body["input"] = text;
    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("embedding request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ProviderError("embedding request returned HTTP " + std::to_string(res->status));
    try {
        const auto j = ordered_json::parse(res->body);
        if (j.contains("data") && !j["data"].empty())
            return j["data"][0].at("embedding").get<std::vector<double>>();
        if (j.contains("embedding")) return j["embedding"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("cannot parse embedding response: ") + e.what());
    }
    throw ProviderError("embedding response carries no vector field");
}

std::string HttpEmbeddingProvider::provider_id() const {
    return "http-embed:" + (model_.empty() ? std::string("default") : model_);
}

// ---------------------------------------------------------------------------
// Cache

EmbeddingCache::EmbeddingCache(std::string directory) : directory_(std::move(directory)) {
    std::ifstream manifest(directory_ + "/manifest.jsonl", std::ios::binary);
    if (!manifest) return;

    std::ifstream bin(directory_ + "/vectors.bin", std::ios::binary);
    if (bin) {
        bin.seekg(0, std::ios::end);
        const auto bytes = static_cast<std::size_t>(bin.tellg());
        bin.seekg(0);
        values_.resize(bytes / sizeof(double));
        bin.read(reinterpret_cast<char*>(values_.data()),
                 static_cast<std::streamsize>(values_.size() * sizeof(double)));
    }

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(manifest, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = ordered_json::parse(line);
            const std::string key =
                j.at("provider_id").get<std::string>() + "|" + j.at("text_hash").get<std::string>();
            index_[key] = {j.at("offset").get<std::size_t>(), j.at("dim").get<std::size_t>()};
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(directory_ + "/manifest.jsonl:" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::optional<std::vector<double>> EmbeddingCache::lookup(const std::string& provider_id,
                                                          const std::string& text_hash) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = index_.find(provider_id + "|" + text_hash);
    if (it == index_.end()) return std::nullopt;
    const auto [offset, dim] = it->second;
    if (offset + dim > values_.size()) return std::nullopt; // truncated bin file
    return std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                               values_.begin() + static_cast<std::ptrdiff_t>(offset + dim));
}

void EmbeddingCache::store(const std::string& provider_id, const std::string& text_hash,
                           const std::vector<double>& vec) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::string key = provider_id + "|" + text_hash;
    if (index_.count(key)) return;

    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);

    const std::size_t offset = values_.size();
    std::ofstream bin(directory_ + "/vectors.bin", std::ios::binary | std::ios::app);
    if (!bin) throw Error("cannot append embedding data in " + directory_);
    bin.write(reinterpret_cast<const char*>(vec.data()),
              static_cast<std::streamsize>(vec.size() * sizeof(double)));
    bin.close();
    values_.insert(values_.end(), vec.begin(), vec.end());

    ordered_json j;
    j["provider_id"] = provider_id;
    j["text_hash"] = text_hash;
    j["dim"] = vec.size();
    j["offset"] = offset;
    std::ofstream manifest(directory_ + "/manifest.jsonl", std::ios::binary | std::ios::app);
    if (!manifest) throw Error("cannot append embedding manifest in " + directory_);
    manifest << j.dump() << '\n';

    index_[key] = {offset, vec.size()};
}

std::size_t EmbeddingCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return index_.size();
}

// ---------------------------------------------------------------------------
// Embed + index

std::vector<double> embed(const std::string& text, EmbeddingProvider& provider, EmbeddingCache* cache) {
    if (text.empty()) throw ValidationError("cannot embed empty text");
    const std::string hash = content_hash(text);
    if (cache) {
        if (auto hit = cache->lookup(provider.provider_id(), hash)) {
            if (hit->size() != static_cast<std::size_t>(provider.dim()))
                throw ValidationError("cached embedding dimension " + std::to_string(hit->size()) +
                                      " does not match provider dim " + std::to_string(provider.dim()));
            return *hit;
        }
    }
    std::vector<double> vec = provider.embed_text(text);
    if (vec.size() != static_cast<std::size_t>(provider.dim()))
        throw ProviderError("provider returned dimension " + std::to_string(vec.size()) + ", expected " +
                            std::to_string(provider.dim()));
    for (double v : vec)
        if (!std::isfinite(v)) throw ProviderError("provider returned a non-finite embedding entry");
    if (cache) cache->store(provider.provider_id(), hash, vec);
    return vec;
}

void EmbeddingIndex::add(const std::string& text, std::vector<double> vec) {
    by_hash_[content_hash(text)] = std::move(vec);
}

bool EmbeddingIndex::contains(const std::string& text) const {
    return by_hash_.count(content_hash(text)) > 0;
}

const std::vector<double>& EmbeddingIndex::of(const std::string& text) const {
    const auto it = by_hash_.find(content_hash(text));
    if (it == by_hash_.end())
        throw ValidationError("missing embedding for text (hash " + content_hash(text) + ")");
    return it->second;
}

EmbeddingIndex embed_texts(const std::vector<std::string>& texts, EmbeddingProvider& provider,
                           EmbeddingCache* cache) {
    EmbeddingIndex index;
    for (const auto& text : texts) {
        if (index.contains(text)) continue;
        index.add(text, embed(text, provider, cache));
    }
    return index;
}

// ---------------------------------------------------------------------------
// Standardizer

Standardizer Standardizer::fit(const Eigen::MatrixXd& train_rows) {
    if (train_rows.rows() < 2)
        throw ValidationError("standardizer needs at least 2 vectors, got " +
                              std::to_string(train_rows.rows()));
    Standardizer s;
    const auto n = static_cast<std::size_t>(train_rows.rows());
    s.mean_.resize(train_rows.cols());
    s.std_.resize(train_rows.cols());
    // Sums run over sorted per-column values so statistics are bitwise
    // invariant under row permutation.
    std::vector<double> column(n);
    for (Eigen::Index j = 0; j < train_rows.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) column[i] = train_rows(static_cast<Eigen::Index>(i), j);
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (double v : column) sum += v;
        const double mean = sum / static_cast<double>(n);
        double sq = 0.0;
        for (double v : column) sq += (v - mean) * (v - mean);
        s.mean_(j) = mean;
        s.std_(j) = std::max(std::sqrt(sq / static_cast<double>(n)), kStdFloor);
    }
    s.fitted_on_ = n;
    return s;
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& v) const {
    if (v.size() != mean_.size())
        throw ValidationError("standardizer dim " + std::to_string(mean_.size()) +
                              " does not match vector dim " + std::to_string(v.size()));
    return (v - mean_).cwiseQuotient(std_);
}

Eigen::MatrixXd Standardizer::apply_rows(const Eigen::MatrixXd& rows) const {
    if (rows.cols() != mean_.size())
        throw ValidationError("standardizer dim mismatch on matrix input");
    return (rows.rowwise() - mean_.transpose()).array().rowwise() / std_.transpose().array();
}

bool Standardizer::operator==(const Standardizer& other) const {
    return fitted_on_ == other.fitted_on_ && mean_.size() == other.mean_.size() &&
           mean_ == other.mean_ && std_ == other.std_;
}

// ---------------------------------------------------------------------------
// Conversions

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) return Eigen::MatrixXd(0, 0);
    const std::size_t dim = vectors.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim)
            throw ValidationError("mixed embedding dimensions: " + std::to_string(vectors[i].size()) +
                                  " vs " + std::to_string(dim));
        for (std::size_t j = 0; j < dim; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[i][j];
    }
    return m;
}

Eigen::VectorXd to_vector(const std::vector<double>& values) {
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

} // namespace hdsaug
