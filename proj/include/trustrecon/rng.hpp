#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace trustrecon {

/// 64-bit FNV-1a; stable across builds, used to turn stream tags into seed words.
constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// Deterministic generator keyed by (seed, stream tag, indices).
///
/// Every consumer derives its own stream, so results never depend on the
/// order in which devices, agents or stages are visited. Normals come from
/// std::normal_distribution (Marsaglia polar method in libstdc++).
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream, std::initializer_list<std::uint64_t> indices = {});

    double normal(double mean = 0.0, double stddev = 1.0) {
        return mean + stddev * standard_normal_(engine_);
    }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    bool bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> standard_normal_;  // keeps the polar method's spare draw
};

}  // namespace trustrecon
