#include "hdsaug/prompt.hpp"

#include "hdsaug/errors.hpp"
#include "hdsaug/text.hpp"

namespace hdsaug {

namespace {

constexpr std::string_view kSystemMessage = "You generate natural Japanese spoken monologues.";

// Template for the user message. Placeholders are substituted verbatim;
// every other byte is fixed.
constexpr std::string_view kUserTemplate =
    "Convert the written Japanese text into an ORAL monologue.\n"
    "Do NOT copy sentences. Keep only the meaning.\n"
    "\n"
    "Written text:\n"
    "---\n"
    "{written_text}\n"
    "---\n"
    "\n"
    "Target style: {style_name}\n"
    "Style description: {style_description}\n"
    "\n"
    "Adapt fluency based on Hasegawa Dementia Scale score = {score}:\n"
    "- 28-30: fluent, well-structured, richer vocabulary\n"
    "- 25-27: mild hesitations, slightly simpler sentences\n"
    "- 22-24: slower rhythm, simpler phrasing, occasional hesitations,\n"
    "         slightly vague or less detailed expression\n"
    "\n"
    "Constraints:\n"
    "- Produce a monologue between 150 and 1300 Japanese characters.\n"
    "- Add natural speech markers (e.g., etto, sono, ano)\n"
    "- Avoid near-duplicates\n"
    "- Output ONLY the monologue.";

void replace_once(std::string& text, std::string_view placeholder, std::string_view value) {
    const auto pos = text.find(placeholder);
    if (pos == std::string::npos)
        throw Error("prompt template is missing placeholder " + std::string(placeholder));
    text.replace(pos, placeholder.size(), value);
}

} // namespace

RenderedPrompt render_prompt(std::string_view written_text, int hds_score, const StyleSpec& style) {
    if (written_text.empty()) throw ValidationError("render_prompt: written_text is empty");
    fluency_band(hds_score); // range check

    std::string user(kUserTemplate);
    replace_once(user, "{written_text}", written_text);
    replace_once(user, "{style_name}", style.name);
    replace_once(user, "{style_description}", style.description);
    replace_once(user, "{score}", std::to_string(hds_score));
    return RenderedPrompt{std::string(kSystemMessage), std::move(user)};
}

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::TooShort: return "too_short";
        case RejectReason::TooLong: return "too_long";
        case RejectReason::Blank: return "blank";
        case RejectReason::InvalidUtf8: return "invalid_utf8";
    }
    return "unknown";
}

OutputCheck validate_output(std::string_view text) {
    OutputCheck check;
    const auto count = utf8_scalar_count(text);
    if (!count) {
        check.reason = RejectReason::InvalidUtf8;
        return check;
    }
    check.char_count = *count;
    if (is_blank(text)) {
        check.reason = RejectReason::Blank;
        return check;
    }
    if (*count < kMinOutputChars) {
        check.reason = RejectReason::TooShort;
        return check;
    }
    if (*count > kMaxOutputChars) {
        check.reason = RejectReason::TooLong;
        return check;
    }
    check.accepted = true;
    return check;
}

} // namespace hdsaug
