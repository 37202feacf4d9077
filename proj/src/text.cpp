#include "hdsaug/text.hpp"

namespace hdsaug {

namespace {

// Decodes one scalar starting at position i; returns the code point and
// advances i, or returns nullopt on malformed input.
std::optional<char32_t> decode_one(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    if (b0 < 0xC2) return std::nullopt; // continuation byte or overlong lead
    std::size_t len;
    char32_t cp;
    if (b0 < 0xE0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if (b0 < 0xF0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if (b0 < 0xF5) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return std::nullopt;
    }
    if (i + len > s.size()) return std::nullopt;
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (len == 3 && cp < 0x800) return std::nullopt;
    if (len == 4 && cp < 0x10000) return std::nullopt;
    if (cp >= 0xD800 && cp <= 0xDFFF) return std::nullopt;
    if (cp > 0x10FFFF) return std::nullopt;
    i += len;
    return cp;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case U'\f':
        case U'\v':
        case U'　':
            return true;
        default:
            return false;
    }
}

} // namespace

std::optional<std::size_t> utf8_scalar_count(std::string_view text) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!decode_one(text, i)) return std::nullopt;
        ++count;
    }
    return count;
}

bool is_blank(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        auto cp = decode_one(text, i);
        if (!cp) return false; // undecodable bytes are content, not whitespace
        if (!is_space_cp(*cp)) return false;
    }
    return true;
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    bool seen_content = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        auto cp = decode_one(text, i);
        if (!cp) { // keep malformed bytes verbatim
            out.push_back(text[start]);
            i = start + 1;
            seen_content = true;
            continue;
        }
        if (is_space_cp(*cp)) {
            pending_space = seen_content;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.append(text.substr(start, i - start));
        seen_content = true;
    }
    return out;
}

} // namespace hdsaug
