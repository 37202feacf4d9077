#include "hdsaug/generation.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/hash.hpp"
#include "hdsaug/prompt.hpp"
#include "hdsaug/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

std::string sample_id(const SyntheticSample& sample) {
    return "syn:" + sample.patient_id + ":" + sample.style_name;
}

void validate_pool(const SyntheticPool& pool) {
    std::set<std::pair<std::string, std::string>> keys;
    std::map<std::string, int> per_patient;
    for (const auto& s : pool.samples) {
        if (s.char_count < kMinOutputChars || s.char_count > kMaxOutputChars)
            throw ValidationError(sample_id(s) + ": char_count " + std::to_string(s.char_count) +
                                  " outside [" + std::to_string(kMinOutputChars) + "," +
                                  std::to_string(kMaxOutputChars) + "]");
        if (s.hds_score < kScoreMin || s.hds_score > kScoreMax)
            throw ValidationError(sample_id(s) + ": hds_score out of range");
        if (!keys.insert({s.patient_id, s.style_name}).second)
            throw ValidationError("duplicate sample for (" + s.patient_id + ", " + s.style_name + ")");
        if (++per_patient[s.patient_id] > static_cast<int>(kStyleCount))
            throw ValidationError("more than " + std::to_string(kStyleCount) + " samples for patient " +
                                  s.patient_id);
    }
}

void save_pool(const SyntheticPool& pool, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write pool file: " + path);
    for (const auto& s : pool.samples) {
        ordered_json j;
        j["patient_id"] = s.patient_id;
        j["style"] = s.style_name;
        j["hds_score"] = s.hds_score;
        j["text"] = s.text;
        j["char_count"] = s.char_count;
        j["prompt_hash"] = s.prompt_hash;
        j["provider_id"] = s.provider_id;
        j["created_at"] = s.created_at;
        out << j.dump() << '\n';
    }
}

SyntheticPool load_pool(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open pool file: " + path);
    SyntheticPool pool;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = ordered_json::parse(line);
            SyntheticSample s;
            s.patient_id = j.at("patient_id").get<std::string>();
            s.style_name = j.at("style").get<std::string>();
            s.hds_score = j.at("hds_score").get<int>();
            s.text = j.at("text").get<std::string>();
            s.char_count = j.at("char_count").get<std::size_t>();
            s.prompt_hash = j.at("prompt_hash").get<std::string>();
            s.provider_id = j.at("provider_id").get<std::string>();
            s.created_at = j.at("created_at").get<std::string>();
            pool.samples.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate_pool(pool);
    return pool;
}

Generator::Generator(GenerationProvider* provider, ReplayStore* store, GenerationOptions options)
    : provider_(provider), store_(store), options_(options) {}

SyntheticSample Generator::generate_sample(const PatientRecord& patient, const StyleSpec& style) {
    std::vector<std::string> no_siblings;
    return generate_with_sibling_check(patient, style, no_siblings);
}

SyntheticSample Generator::generate_with_sibling_check(const PatientRecord& patient, const StyleSpec& style,
                                                       std::vector<std::string>& sibling_normals) {
    const RenderedPrompt prompt = render_prompt(patient.written_text, patient.hds_score, style);
    const std::string hash = prompt_hash(prompt.system_message, prompt.user_message);

    SyntheticSample sample;
    sample.patient_id = patient.patient_id;
    sample.style_name = std::string(style.name);
    sample.hds_score = patient.hds_score;
    sample.prompt_hash = hash;

    if (store_) {
        if (auto stored = store_->lookup(hash)) {
            const OutputCheck check = validate_output(stored->text);
            if (!check.accepted)
                throw ProviderError("replay store holds an invalid sample for (" + patient.patient_id +
                                    ", " + std::string(style.name) + "): " + to_string(check.reason));
            sample.text = std::move(stored->text);
            sample.char_count = check.char_count;
            sample.provider_id = stored->provider_id;
            sample.created_at = stored->created_at;
            sibling_normals.push_back(normalize_whitespace(sample.text));
            return sample;
        }
    }
    if (!provider_)
        throw ProviderError("replay miss for (" + patient.patient_id + ", " + std::string(style.name) +
                            ") and no provider configured");

    std::string last_reason = "no attempt made";
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
        std::string text;
        try {
            text = provider_->generate(prompt.system_message, prompt.user_message);
        } catch (const ProviderError& e) { // network/API failures are retryable
            last_reason = e.what();
            continue;
        }
        const OutputCheck check = validate_output(text);
        if (!check.accepted) {
            last_reason = to_string(check.reason);
            continue;
        }
        const std::string normal = normalize_whitespace(text);
        if (std::find(sibling_normals.begin(), sibling_normals.end(), normal) != sibling_normals.end()) {
            last_reason = "duplicate_of_sibling";
            continue;
        }
        sample.text = text;
        sample.char_count = check.char_count;
        sample.provider_id = provider_->provider_id();
        sample.created_at = now_utc_iso8601();
        if (store_) {
            StoredSample stored;
            stored.patient_id = sample.patient_id;
            stored.style_name = sample.style_name;
            stored.provider_id = sample.provider_id;
            stored.created_at = sample.created_at;
            stored.text = sample.text;
            store_->record(hash, stored);
        }
        sibling_normals.push_back(normal);
        return sample;
    }
    throw ProviderError("output rejected after " + std::to_string(options_.max_attempts) +
                        " attempts for (" + patient.patient_id + ", " + std::string(style.name) +
                        "): " + last_reason);
}

SyntheticPool Generator::generate_pool(const Corpus& corpus) {
    const auto& styles = style_table();
    const std::size_t n_patients = corpus.records.size();

    SyntheticPool pool;
    pool.samples.resize(n_patients * styles.size());

    std::atomic<std::size_t> next_patient{0};
    std::mutex error_mutex;
    std::vector<std::string> errors;

    // Patients run in parallel; a patient's 7 styles stay sequential so the
    // sibling duplicate check sees every accepted sibling.
    const auto worker = [&]() {
        for (;;) {
            const std::size_t pi = next_patient.fetch_add(1);
            if (pi >= n_patients) return;
            const PatientRecord& patient = corpus.records[pi];
            std::vector<std::string> sibling_normals;
            for (std::size_t si = 0; si < styles.size(); ++si) {
                try {
                    pool.samples[pi * styles.size() + si] =
                        generate_with_sibling_check(patient, styles[si], sibling_normals);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    errors.push_back(e.what());
                }
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(options_.jobs, static_cast<int>(n_patients)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    if (!errors.empty()) {
        std::sort(errors.begin(), errors.end());
        std::ostringstream os;
        os << errors.size() << " sample(s) failed; completed samples remain in the replay store:\n";
        for (const auto& e : errors) os << "  - " << e << "\n";
        throw ProviderError(os.str());
    }
    validate_pool(pool);
    return pool;
}

} // namespace hdsaug
