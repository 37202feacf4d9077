#pragma once

#include "hdsaug/corpus.hpp"
#include "hdsaug/providers.hpp"
#include "hdsaug/styles.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hdsaug {

// One generated oral-style monologue. hds_score is inherited from the source
// patient; char_count is the Unicode scalar count of text.
struct SyntheticSample {
    std::string patient_id;
    std::string style_name;
    int hds_score = 0;
    std::string text;
    std::size_t char_count = 0;
    std::string prompt_hash;
    std::string provider_id;
    std::string created_at;

    bool operator==(const SyntheticSample&) const = default;
};

// Stable identifier used in training manifests and audit records.
std::string sample_id(const SyntheticSample& sample);

struct SyntheticPool {
    std::vector<SyntheticSample> samples;
};

// Validates pool invariants: per-sample length bounds, at most one sample per
// (patient_id, style_name). Throws ValidationError.
void validate_pool(const SyntheticPool& pool);

void save_pool(const SyntheticPool& pool, const std::string& path);
SyntheticPool load_pool(const std::string& path);

struct GenerationOptions {
    int max_attempts = 3; // provider calls per (patient, style) before hard error
    int jobs = 4;         // parallel patients in flight
};

// Drives prompt rendering, provider calls, output validation and the replay
// store. With a null provider the generator runs in strict replay mode and a
// store miss is an error.
class Generator {
public:
    Generator(GenerationProvider* provider, ReplayStore* store, GenerationOptions options = {});

    // Returns a validated sample; records fresh outputs in the store. The
    // store also answers repeat calls byte-identically, provider untouched.
    SyntheticSample generate_sample(const PatientRecord& patient, const StyleSpec& style);

    // One sample per (patient, style): |corpus| x 7, corpus order, style
    // table order. Per-sample failures abort the run with an aggregated
    // error; completed samples stay in the store, so a rerun resumes.
    SyntheticPool generate_pool(const Corpus& corpus);

private:
    SyntheticSample generate_with_sibling_check(const PatientRecord& patient, const StyleSpec& style,
                                                std::vector<std::string>& sibling_normals);

    GenerationProvider* provider_;
    ReplayStore* store_;
    GenerationOptions options_;
};

} // namespace hdsaug
