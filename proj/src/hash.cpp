#include "hdsaug/hash.hpp"

#include <cstdio>

namespace hdsaug {

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf, 16);
}

} // namespace hdsaug
