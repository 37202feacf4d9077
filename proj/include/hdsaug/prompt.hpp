#pragma once

#include "hdsaug/styles.hpp"

#include <string>
#include <string_view>

namespace hdsaug {

inline constexpr std::size_t kMinOutputChars = 150;
inline constexpr std::size_t kMaxOutputChars = 1300;

struct RenderedPrompt {
    std::string system_message;
    std::string user_message;
};

// Instantiates the generation prompt for one (written narrative, score,
// style) triple. Pure: identical inputs give identical bytes. Throws
// ValidationError on empty written_text or out-of-range score.
RenderedPrompt render_prompt(std::string_view written_text, int hds_score, const StyleSpec& style);

enum class RejectReason { TooShort, TooLong, Blank, InvalidUtf8 };

const char* to_string(RejectReason reason);

struct OutputCheck {
    bool accepted = false;
    std::size_t char_count = 0; // Unicode scalar values; 0 when undecodable
    RejectReason reason = RejectReason::Blank;
};

// Accepts iff the text decodes as UTF-8, is non-blank after trimming, and its
// scalar count lies in [kMinOutputChars, kMaxOutputChars]. Rejection is a
// value, not an error.
OutputCheck validate_output(std::string_view text);

} // namespace hdsaug
