#pragma once

#include <map>
#include <string>
#include <vector>

namespace hdsaug {

inline constexpr int kScoreMin = 22;
inline constexpr int kScoreMax = 30;

enum class TranscriptionSource { Manual, Automatic };

const char* to_string(TranscriptionSource source);
TranscriptionSource transcription_source_from_string(const std::string& s);

// One participant: paired oral transcription (prediction input) and written
// narrative (generation anchor), with the HDS score as regression target.
struct PatientRecord {
    std::string patient_id;
    int age = 0;
    int hds_score = 0;
    std::string oral_text;
    std::string written_text;
    TranscriptionSource transcription_source = TranscriptionSource::Manual;

    bool operator==(const PatientRecord&) const = default;
};

struct Corpus {
    std::vector<PatientRecord> records;
    std::string prompt_text; // shared clinical prompt, from the sidecar file

    bool operator==(const Corpus&) const = default;
};

// Per-class record counts. Every score in [kScoreMin, kScoreMax] is present,
// absent classes as 0.
struct ClassHistogram {
    std::map<int, int> counts;

    int at(int score) const;
    int total() const;
    int max_count() const;
};

struct CorpusSummary {
    std::size_t n = 0;
    int age_min = 0;
    int age_max = 0;
    int score_min = 0;
    int score_max = 0;
    ClassHistogram histogram;
};

// Loads a line-delimited record file plus its sidecar metadata file
// ("<path minus extension>.meta.json", prompt_text). Throws ParseError on
// malformed lines (line number reported) and ValidationError on invariant
// violations (patient_id and rule reported). Age outside [72, 86] is a
// warning, collected into `warnings` when given.
Corpus load_corpus(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Writes the record file and sidecar. save followed by load is the identity
// on values, and save ∘ load ∘ save is byte-stable.
void save_corpus(const Corpus& corpus, const std::string& path);

// Path of the sidecar metadata file for a given corpus path.
std::string corpus_sidecar_path(const std::string& path);

ClassHistogram class_histogram(const Corpus& corpus);

CorpusSummary summarize(const Corpus& corpus);
std::string format_summary(const CorpusSummary& summary);

} // namespace hdsaug
