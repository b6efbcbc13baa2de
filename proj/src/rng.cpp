#include "trustrecon/rng.hpp"

#include <vector>

namespace trustrecon {

Rng::Rng(std::uint64_t seed, std::string_view stream, std::initializer_list<std::uint64_t> indices) {
    std::vector<std::uint32_t> words;
    words.reserve(4 + 2 * indices.size());
    auto push64 = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push64(seed);
    push64(fnv1a(stream));
    for (auto index : indices) {
        push64(index);
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

}  // namespace trustrecon
