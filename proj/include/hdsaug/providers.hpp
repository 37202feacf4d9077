#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace hdsaug {

// Text-generation backend: (system message, user message) -> raw output.
// Implementations must be safe to call from multiple threads.
class GenerationProvider {
public:
    virtual ~GenerationProvider() = default;
    virtual std::string generate(const std::string& system_message, const std::string& user_message) = 0;
    virtual std::string provider_id() const = 0;
    virtual long call_count() const = 0;
};

// Deterministic offline stand-in. Emits Japanese filler prose of valid
// length, tagged with the target style and fluency band parsed back out of
// the user message, so downstream selection sees distinct per-style texts.
class MockGenerationProvider : public GenerationProvider {
public:
    explicit MockGenerationProvider(std::uint64_t seed = 0) : seed_(seed) {}
    std::string generate(const std::string& system_message, const std::string& user_message) override;
    std::string provider_id() const override;
    long call_count() const override { return calls_.load(); }

private:
    std::uint64_t seed_;
    std::atomic<long> calls_{0};
};

// Optional decoding parameters forwarded verbatim to the remote API.
// No defaults: unset fields are omitted from the request body.
struct DecodeParams {
    std::optional<double> temperature;
    std::optional<double> top_p;
    std::optional<int> max_tokens;
};

// Remote chat-completion client. Endpoint, credential and model name come
// from HDSAUG_GEN_ENDPOINT / HDSAUG_GEN_API_KEY / HDSAUG_GEN_MODEL.
class HttpGenerationProvider : public GenerationProvider {
public:
    static std::unique_ptr<HttpGenerationProvider> from_env(const DecodeParams& params);

    HttpGenerationProvider(std::string endpoint, std::string api_key, std::string model, DecodeParams params);
    std::string generate(const std::string& system_message, const std::string& user_message) override;
    std::string provider_id() const override;
    long call_count() const override { return calls_.load(); }

private:
    std::string endpoint_;
    std::string api_key_;
    std::string model_;
    DecodeParams params_;
    std::atomic<long> calls_{0};
};

// Accepted provider output recorded for a prompt hash.
struct StoredSample {
    std::string patient_id;
    std::string style_name;
    std::string provider_id;
    std::string created_at;
    std::string text;
};

// On-disk replay store: one <prompt_hash>.txt per accepted output plus a
// manifest mapping (patient_id, style_name) -> prompt_hash. Doubles as the
// partial-progress record for resumable generation runs; writes are
// serialized.
class ReplayStore {
public:
    explicit ReplayStore(std::string directory);

    std::optional<StoredSample> lookup(const std::string& prompt_hash) const;
    void record(const std::string& prompt_hash, const StoredSample& sample);
    std::size_t size() const;
    const std::string& directory() const { return directory_; }

private:
    std::string directory_;
    mutable std::mutex mutex_;
    // prompt_hash -> manifest entry (text loaded lazily from the .txt file)
    std::map<std::string, StoredSample> entries_;
};

// UTC timestamp, ISO 8601 with second precision.
std::string now_utc_iso8601();

} // namespace hdsaug
