#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace sugihara {

inline constexpr std::uint64_t kDefaultSizeBound = 10'000'000;

/// Name of the environment variable that overrides the default size bound.
inline constexpr const char* kSizeBoundEnv = "SUGIHARA_SIZE_BOUND";

namespace detail {
inline std::uint64_t& size_bound_slot()
{
    static std::uint64_t bound = [] {
        if (const char* env = std::getenv(kSizeBoundEnv)) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return static_cast<std::uint64_t>(v);
        }
        return kDefaultSizeBound;
    }();
    return bound;
}
} // namespace detail

/// Upper limit on the carrier size of powers and power structures.
inline std::uint64_t size_bound() { return detail::size_bound_slot(); }

inline void set_size_bound(std::uint64_t bound)
{
    if (bound == 0)
        throw InvalidArgument("size bound must be positive");
    detail::size_bound_slot() = bound;
}

/// base^exp, or 0 when the result exceeds `cap`.
inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base)
            return 0;
        r *= base;
    }
    return r <= cap ? r : 0;
}

inline void require_within_bound(std::uint64_t base, std::uint64_t exp, const std::string& what)
{
    if (checked_power(base, exp, size_bound()) == 0)
        throw ResourceError(what + ": " + std::to_string(base) + "^" + std::to_string(exp)
                            + " exceeds size bound " + std::to_string(size_bound()));
}

} // namespace sugihara
