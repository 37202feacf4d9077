#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace hdsaug {

// Number of Unicode scalar values in a UTF-8 string, or nullopt if the bytes
// are not valid UTF-8 (overlong forms, surrogates and out-of-range code
// points rejected).
std::optional<std::size_t> utf8_scalar_count(std::string_view text);

// True if the string contains only whitespace (ASCII whitespace and the
// ideographic space U+3000).
bool is_blank(std::string_view text);

// Canonical form used for the exact-match duplicate check between sibling
// samples: trimmed, with whitespace runs collapsed to a single space.
std::string normalize_whitespace(std::string_view text);

} // namespace hdsaug
