#include "hdsaug/styles.hpp"

#include "hdsaug/errors.hpp"

namespace hdsaug {

const std::array<StyleSpec, kStyleCount>& style_table() {
    static const std::array<StyleSpec, kStyleCount> table = {{
        {"conversational", "Fluent conversational retelling, natural and relaxed tone."},
        {"emotional", "More emotional and reflective, slight introspection."},
        {"fragmented",
         "Spoken style with short segments, occasional breaks in rhythm, but still clear and coherent."},
        {"storytelling", "Chronological story-like narration with light details."},
        {"concise", "Simplified, concise spoken Japanese with short sentences."},
        {"humorous", "Slightly humorous or playful, with light jokes or witty expressions."},
        {"structural_paraphrase",
         "Preserves meaning and information density while reorganising sentence structure using similar "
         "vocabulary."},
    }};
    return table;
}

const StyleSpec& style_by_name(std::string_view name) {
    for (const auto& style : style_table())
        if (style.name == name) return style;
    throw ValidationError("unknown style \"" + std::string(name) + "\"");
}

const FluencyBand& fluency_band(int hds_score) {
    static const std::array<FluencyBand, 3> bands = {{
        {"high", 28, 30, "fluent, well-structured, richer vocabulary"},
        {"mid", 25, 27, "mild hesitations, slightly simpler sentences"},
        {"low", 22, 24,
         "slower rhythm, simpler phrasing, occasional hesitations, slightly vague or less detailed expression"},
    }};
    for (const auto& band : bands)
        if (hds_score >= band.score_min && hds_score <= band.score_max) return band;
    throw ValidationError("hds_score " + std::to_string(hds_score) + " outside [22,30]");
}

} // namespace hdsaug
