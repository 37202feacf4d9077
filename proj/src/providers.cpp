#include "hdsaug/providers.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"
#include "hdsaug/rng.hpp"
#include "hdsaug/text.hpp"

#include <nlohmann/json.hpp>

// httplib pulls in OpenSSL for https endpoints; the define comes from CMake.
#include <httplib.h>

#include <array>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

std::string now_utc_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// ---------------------------------------------------------------------------
// Mock generation

namespace {

std::string find_line_value(const std::string& text, const std::string& prefix) {
    const auto pos = text.find(prefix);
    if (pos == std::string::npos) return {};
    const auto start = pos + prefix.size();
    const auto end = text.find('\n', start);
    return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

const std::array<std::string_view, 12>& filler_sentences() {
    static const std::array<std::string_view, 12> pool = {{
        "このあいだ、孫が遊びに来てくれたんです。",
        "天気がとても良くて、近くの公園まで歩きました。",
        "えっと、花がきれいに咲いていましたね。",
        "あの、お弁当をみんなで食べたんですよ。",
        "帰りに甘いものを買って帰りました。",
        "うん、ほんとうに楽しい一日でした。",
        "そのあと、家でゆっくりお茶を飲みました。",
        "庭の花に水をやるのが毎朝の楽しみなんです。",
        "昔の写真を見つけて、なつかしい気持ちになりました。",
        "近所の方と少し立ち話をしたんです。",
        "ええと、何だったかな、とにかく嬉しかったんです。",
        "また行きたいなあと思っています。",
    }};
    return pool;
}

} // namespace

std::string MockGenerationProvider::generate(const std::string& system_message,
                                             const std::string& user_message) {
    calls_.fetch_add(1);
    // Echo the requested style and fluency band so siblings differ visibly.
    const std::string style = find_line_value(user_message, "Target style: ");
    std::string score_str = find_line_value(user_message, "Dementia Scale score = ");
    if (!score_str.empty() && score_str.back() == ':') score_str.pop_back();

    Rng rng(mix_seed(seed_, system_message + '\x1f' + user_message));

    std::string out;
    out += "えっと、そうですね、";
    if (!style.empty()) {
        out += style;
        out += "のつもりで話します。";
    }
    int band = 0;
    if (!score_str.empty()) {
        const int score = std::atoi(score_str.c_str());
        band = score >= 28 ? 2 : score >= 25 ? 1 : 0;
    }
    if (band == 2)
        out += "あの日のことは今でもはっきり覚えていますよ。";
    else if (band == 1)
        out += "あの、少しずつ思い出しながら話しますね。";
    else
        out += "ええと、ゆっくり、ゆっくり話しますね。";

    const auto& pool = filler_sentences();
    const std::size_t target = 250 + rng.uniform_below(450); // scalars, inside [150, 1300]
    std::size_t count = *utf8_scalar_count(out);
    while (count < target) {
        const std::string_view sentence = pool[rng.uniform_below(pool.size())];
        out += sentence;
        count += *utf8_scalar_count(sentence);
    }
    return out;
}

std::string MockGenerationProvider::provider_id() const {
    return "mock-gen:s=" + std::to_string(seed_);
}

// ---------------------------------------------------------------------------
// Remote chat-completion client

namespace {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("malformed endpoint URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string getenv_str(const char* name) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
}

} // namespace

std::unique_ptr<HttpGenerationProvider> HttpGenerationProvider::from_env(const DecodeParams& params) {
    const std::string endpoint = getenv_str("HDSAUG_GEN_ENDPOINT");
    const std::string key = getenv_str("HDSAUG_GEN_API_KEY");
    if (endpoint.empty() || key.empty())
        throw ConfigError("live generation mode requires HDSAUG_GEN_ENDPOINT and HDSAUG_GEN_API_KEY");
    return std::make_unique<HttpGenerationProvider>(endpoint, key, getenv_str("HDSAUG_GEN_MODEL"), params);
}

HttpGenerationProvider::HttpGenerationProvider(std::string endpoint, std::string api_key, std::string model,
                                               DecodeParams params)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)), model_(std::move(model)),
      params_(params) {}

std::string HttpGenerationProvider::generate(const std::string& system_message,
                                             const std::string& user_message) {
    calls_.fetch_add(1);
    const SplitUrl url = split_url(endpoint_);
    httplib::Client client(url.base);
    client.set_read_timeout(120, 0);

    ordered_json body;
    if (!model_.empty()) body["model"] = model_;
    body["messages"] = ordered_json::array({
        ordered_json{{"role", "system"}, {"content", system_message}},
        ordered_json{{"role", "user"}, {"content", user_message}},
    });
    if (params_.temperature) body["temperature"] = *params_.temperature;
    if (params_.top_p) body["top_p"] = *params_.top_p;
    if (params_.max_tokens) body["max_tokens"] = *params_.max_tokens;

    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("generation request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ProviderError("generation request returned HTTP " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 200));

    try {
        const auto j = ordered_json::parse(res->body);
        if (j.contains("choices") && !j["choices"].empty())
            return j["choices"][0].at("message").at("content").get<std::string>();
        if (j.contains("output_text")) return j["output_text"].get<std::string>();
        if (j.contains("text")) return j["text"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("cannot parse generation response: ") + e.what());
    }
    throw ProviderError("generation response carries no text field");
}

std::string HttpGenerationProvider::provider_id() const {
    return "http-gen:" + (model_.empty() ? std::string("default") : model_);
}

// ---------------------------------------------------------------------------
// Replay store

ReplayStore::ReplayStore(std::string directory) : directory_(std::move(directory)) {
    std::ifstream manifest(directory_ + "/manifest.jsonl", std::ios::binary);
    if (!manifest) return;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(manifest, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = ordered_json::parse(line);
            StoredSample s;
            s.patient_id = j.at("patient_id").get<std::string>();
            s.style_name = j.at("style").get<std::string>();
            s.provider_id = j.at("provider_id").get<std::string>();
            s.created_at = j.at("created_at").get<std::string>();
            entries_[j.at("prompt_hash").get<std::string>()] = std::move(s);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(directory_ + "/manifest.jsonl:" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::optional<StoredSample> ReplayStore::lookup(const std::string& prompt_hash) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = entries_.find(prompt_hash);
    if (it == entries_.end()) return std::nullopt;
    std::ifstream in(directory_ + "/" + prompt_hash + ".txt", std::ios::binary);
    if (!in) return std::nullopt; // stale manifest entry, regenerate
    std::ostringstream buf;
    buf << in.rdbuf();
    StoredSample s = it->second;
    s.text = buf.str();
    return s;
}

void ReplayStore::record(const std::string& prompt_hash, const StoredSample& sample) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);

    std::ofstream out(directory_ + "/" + prompt_hash + ".txt", std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write replay sample: " + directory_ + "/" + prompt_hash + ".txt");
    out << sample.text;
    out.close();

    ordered_json j;
    j["prompt_hash"] = prompt_hash;
    j["patient_id"] = sample.patient_id;
    j["style"] = sample.style_name;
    j["provider_id"] = sample.provider_id;
    j["created_at"] = sample.created_at;
    std::ofstream manifest(directory_ + "/manifest.jsonl", std::ios::binary | std::ios::app);
    if (!manifest) throw Error("cannot append replay manifest in " + directory_);
    manifest << j.dump() << '\n';

    StoredSample entry = sample;
    entry.text.clear();
    entries_[prompt_hash] = std::move(entry);
}

std::size_t ReplayStore::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

} // namespace hdsaug
