#pragma once

#include <array>
#include <string>
#include <string_view>

namespace hdsaug {

// One of the seven fixed stylistic configurations injected into the
// generation prompt. Descriptions are the exact strings sent to the model.
struct StyleSpec {
    std::string_view name;
    std::string_view description;
};

inline constexpr std::size_t kStyleCount = 7;

const std::array<StyleSpec, kStyleCount>& style_table();

// Throws ValidationError for unknown names.
const StyleSpec& style_by_name(std::string_view name);

// HDS-score-dependent generation constraint tier.
struct FluencyBand {
    std::string_view name; // "high" | "mid" | "low"
    int score_min;
    int score_max;
    std::string_view description;
};

// Bands partition [22,30]: high 28-30, mid 25-27, low 22-24. Throws
// ValidationError for out-of-range scores.
const FluencyBand& fluency_band(int hds_score);

} // namespace hdsaug
