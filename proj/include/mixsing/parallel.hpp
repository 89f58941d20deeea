// Task fan-out with a serial reference path. Tasks write into their own slot;
// merging is done by the caller in task-index order, so results never depend
// on scheduling or thread count.

#pragma once

#include <cstdint>
#include <exception>
#include <string_view>
#include <vector>

namespace mixsing {

enum class ExecPolicy { serial, parallel };

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// FNV-1a; stable across platforms, used to key faces and slices.
inline std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t task_seed(std::uint64_t seed, std::uint64_t key, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ key) ^ index);
}

template <class Fn>
void for_each_task(std::size_t count, ExecPolicy policy, Fn&& fn) {
    if (policy == ExecPolicy::serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace mixsing
