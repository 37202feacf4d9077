#include "hdsaug/corpus.hpp"

#include "hdsaug/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace hdsaug {

using ordered_json = nlohmann::ordered_json;

const char* to_string(TranscriptionSource source) {
    return source == TranscriptionSource::Manual ? "manual" : "automatic";
}

TranscriptionSource transcription_source_from_string(const std::string& s) {
    if (s == "manual") return TranscriptionSource::Manual;
    if (s == "automatic") return TranscriptionSource::Automatic;
    throw ValidationError("unknown transcription_source \"" + s + "\" (expected \"manual\" or \"automatic\")");
}

int ClassHistogram::at(int score) const {
    auto it = counts.find(score);
    return it == counts.end() ? 0 : it->second;
}

int ClassHistogram::total() const {
    int sum = 0;
    for (const auto& [score, count] : counts) sum += count;
    return sum;
}

int ClassHistogram::max_count() const {
    int best = 0;
    for (const auto& [score, count] : counts) best = std::max(best, count);
    return best;
}

std::string corpus_sidecar_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? path.substr(0, dot) : path) + ".meta.json";
}

namespace {

void validate_record(const PatientRecord& r, std::vector<std::string>* warnings) {
    if (r.patient_id.empty())
        throw ValidationError("record with empty patient_id");
    if (r.hds_score < kScoreMin || r.hds_score > kScoreMax)
        throw ValidationError("patient \"" + r.patient_id + "\": hds_score " + std::to_string(r.hds_score) +
                              " outside [" + std::to_string(kScoreMin) + "," + std::to_string(kScoreMax) + "]");
    if (r.oral_text.empty())
        throw ValidationError("patient \"" + r.patient_id + "\": oral_text is empty");
    if (r.written_text.empty())
        throw ValidationError("patient \"" + r.patient_id + "\": written_text is empty");
    if (warnings && (r.age < 72 || r.age > 86))
        warnings->push_back("patient \"" + r.patient_id + "\": age " + std::to_string(r.age) +
                            " outside the expected range [72,86]");
}

PatientRecord record_from_json(const ordered_json& j) {
    PatientRecord r;
    r.patient_id = j.at("patient_id").get<std::string>();
    r.age = j.at("age").get<int>();
    r.hds_score = j.at("hds_score").get<int>();
    r.oral_text = j.at("oral_text").get<std::string>();
    r.written_text = j.at("written_text").get<std::string>();
    r.transcription_source = transcription_source_from_string(j.at("transcription_source").get<std::string>());
    return r;
}

ordered_json record_to_json(const PatientRecord& r) {
    ordered_json j;
    j["patient_id"] = r.patient_id;
    j["age"] = r.age;
    j["hds_score"] = r.hds_score;
    j["oral_text"] = r.oral_text;
    j["written_text"] = r.written_text;
    j["transcription_source"] = to_string(r.transcription_source);
    return j;
}

} // namespace

Corpus load_corpus(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open corpus file: " + path);

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        PatientRecord r;
        try {
            r = record_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        validate_record(r, warnings);
        if (!seen_ids.insert(r.patient_id).second)
            throw ValidationError("duplicate patient_id \"" + r.patient_id + "\" at " + path + ":" +
                                  std::to_string(line_no));
        corpus.records.push_back(std::move(r));
    }
    if (corpus.records.empty()) throw ValidationError("empty corpus: " + path);

    std::ifstream meta(corpus_sidecar_path(path), std::ios::binary);
    if (meta) {
        try {
            ordered_json j = ordered_json::parse(meta);
            corpus.prompt_text = j.value("prompt_text", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(corpus_sidecar_path(path) + ": " + e.what());
        }
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write corpus file: " + path);
    for (const auto& r : corpus.records) out << record_to_json(r).dump() << '\n';
    out.close();

    std::ofstream meta(corpus_sidecar_path(path), std::ios::binary | std::ios::trunc);
    if (!meta) throw Error("cannot write corpus sidecar: " + corpus_sidecar_path(path));
    ordered_json j;
    j["prompt_text"] = corpus.prompt_text;
    meta << j.dump(2) << '\n';
}

ClassHistogram class_histogram(const Corpus& corpus) {
    ClassHistogram hist;
    for (int s = kScoreMin; s <= kScoreMax; ++s) hist.counts[s] = 0;
    for (const auto& r : corpus.records) ++hist.counts[r.hds_score];
    return hist;
}

CorpusSummary summarize(const Corpus& corpus) {
    CorpusSummary s;
    s.n = corpus.records.size();
    s.histogram = class_histogram(corpus);
    if (!corpus.records.empty()) {
        s.age_min = s.age_max = corpus.records.front().age;
        s.score_min = s.score_max = corpus.records.front().hds_score;
        for (const auto& r : corpus.records) {
            s.age_min = std::min(s.age_min, r.age);
            s.age_max = std::max(s.age_max, r.age);
            s.score_min = std::min(s.score_min, r.hds_score);
            s.score_max = std::max(s.score_max, r.hds_score);
        }
    }
    return s;
}

std::string format_summary(const CorpusSummary& summary) {
    std::ostringstream os;
    os << "records: " << summary.n << "\n"
       << "age range: [" << summary.age_min << ", " << summary.age_max << "]\n"
       << "score range: [" << summary.score_min << ", " << summary.score_max << "]\n"
       << "per-class counts:\n";
    for (const auto& [score, count] : summary.histogram.counts)
        os << "  " << score << ": " << count << "\n";
    return os.str();
}

} // namespace hdsaug
