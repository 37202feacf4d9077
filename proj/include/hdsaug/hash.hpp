#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hdsaug {

// FNV-1a, 64 bit. Content addressing for replay/embedding caches and config
// fingerprints; not cryptographic.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

inline std::string content_hash(std::string_view data) {
    return to_hex(fnv1a64(data));
}

// Hash of a full generation prompt. The 0x1f separator keeps
// (system, user) pairs unambiguous under concatenation.
inline std::string prompt_hash(std::string_view system_message, std::string_view user_message) {
    std::string buf;
    buf.reserve(system_message.size() + user_message.size() + 1);
    buf.append(system_message);
    buf.push_back('\x1f');
    buf.append(user_message);
    return content_hash(buf);
}

// Deterministic seed mixing for per-fold RNG streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt) {
    std::uint64_t h = fnv1a64(salt);
    std::uint64_t z = seed ^ h;
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace hdsaug
