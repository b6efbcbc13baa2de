#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trustrecon/rng.hpp"

namespace trustrecon {

using DeviceId = std::uint32_t;
using Series = std::vector<double>;
using SeriesMap = std::map<DeviceId, Series>;

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kAgentOne = "agent1";
inline constexpr const char* kAgentTwo = "agent2";

struct SimConfig {
    std::size_t device_count = 20;
    std::size_t time_steps = 10;  // T+1 samples per device
    std::size_t embedding_dim = 128;
    double noise_std = 0.1;
    double trust_prob = 0.7;
    std::uint64_t seed = kDefaultSeed;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

struct DeviceRecord {
    DeviceId device_id = 0;
    int label = 0;  // 1 = trustworthy
    std::vector<double> baseline;
};

/// Time-indexed trust scores of one agent. Each device holds a gap-free
/// series over time steps 0..T; every score lies in [0,1].
class TrustLog {
public:
    TrustLog() = default;
    TrustLog(std::string agent_id, std::size_t time_steps);

    const std::string& agent_id() const { return agent_id_; }
    std::size_t time_steps() const { return time_steps_; }
    bool empty() const { return series_.empty(); }
    std::size_t device_count() const { return series_.size(); }

    /// Throws InputError on wrong length or out-of-range score.
    void set_series(DeviceId device, Series scores);

    double score(DeviceId device, std::size_t time_step) const;
    const Series& series(DeviceId device) const;
    const SeriesMap& all_series() const { return series_; }

private:
    std::string agent_id_;
    std::size_t time_steps_ = 0;
    SeriesMap series_;
};

std::vector<DeviceRecord> generate_population(const SimConfig& cfg);

/// baseline + N(0, noise_std^2) per coordinate.
std::vector<double> observe_embedding(std::span<const double> baseline, double noise_std, Rng& rng);

/// ½(1 + cos(trusted, observed)). Throws DomainError for a zero-norm input.
double trust_score(std::span<const double> trusted, std::span<const double> observed);

/// 2·tau − 1. Throws DomainError outside [0,1].
double centred_similarity(double tau);

/// Continuous stream: one score per (device, t), noise drawn from (seed, agent_id, device).
TrustLog run_continuous_evaluation(const SimConfig& cfg, const std::vector<DeviceRecord>& population,
                                   const std::string& agent_id);

}  // namespace trustrecon
