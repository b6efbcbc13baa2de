#include "trustrecon/sim_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trustrecon/errors.hpp"

namespace trustrecon {

void SimConfig::validate() const {
    if (device_count < 1) throw ConfigError("device_count must be >= 1");
    if (time_steps < 2) throw ConfigError("time_steps must be >= 2");
    if (embedding_dim < 1) throw ConfigError("embedding_dim must be >= 1");
    if (!(noise_std > 0.0) || !std::isfinite(noise_std)) throw ConfigError("noise_std must be > 0");
    if (!(trust_prob >= 0.0 && trust_prob <= 1.0)) throw ConfigError("trust_prob must lie in [0,1]");
}

TrustLog::TrustLog(std::string agent_id, std::size_t time_steps)
    : agent_id_(std::move(agent_id)), time_steps_(time_steps) {}

void TrustLog::set_series(DeviceId device, Series scores) {
    if (scores.size() != time_steps_) {
        throw InputError("device " + std::to_string(device) + ": expected " + std::to_string(time_steps_) +
                         " scores, got " + std::to_string(scores.size()));
    }
    for (double s : scores) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw InputError("device " + std::to_string(device) + ": score outside [0,1]");
        }
    }
    series_[device] = std::move(scores);
}

double TrustLog::score(DeviceId device, std::size_t time_step) const {
    const auto& s = series(device);
    if (time_step >= s.size()) throw InputError("time step out of range");
    return s[time_step];
}

const Series& TrustLog::series(DeviceId device) const {
    auto it = series_.find(device);
    if (it == series_.end()) throw InputError("device " + std::to_string(device) + " not in log");
    return it->second;
}

std::vector<DeviceRecord> generate_population(const SimConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed, "population");
    std::vector<DeviceRecord> population(cfg.device_count);
    for (std::size_t d = 0; d < cfg.device_count; ++d) {
        auto& rec = population[d];
        rec.device_id = static_cast<DeviceId>(d);
        rec.label = rng.bernoulli(cfg.trust_prob) ? 1 : 0;
        rec.baseline.resize(cfg.embedding_dim);
        for (auto& x : rec.baseline) x = rng.normal();
    }
    return population;
}

std::vector<double> observe_embedding(std::span<const double> baseline, double noise_std, Rng& rng) {
    if (!(noise_std > 0.0)) throw DomainError("noise_std must be > 0");
    std::vector<double> observed(baseline.begin(), baseline.end());
    for (auto& x : observed) x += rng.normal(0.0, noise_std);
    return observed;
}

double trust_score(std::span<const double> trusted, std::span<const double> observed) {
    if (trusted.size() != observed.size()) throw InputError("trust_score: length mismatch");
    double dot = 0.0, nt = 0.0, no = 0.0;
    for (std::size_t i = 0; i < trusted.size(); ++i) {
        dot += trusted[i] * observed[i];
        nt += trusted[i] * trusted[i];
        no += observed[i] * observed[i];
    }
    if (nt == 0.0 || no == 0.0) throw DomainError("trust_score: cosine undefined for zero-norm vector");
    double cosine = dot / (std::sqrt(nt) * std::sqrt(no));
    cosine = std::clamp(cosine, -1.0, 1.0);
    return 0.5 * (1.0 + cosine);
}

double centred_similarity(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("centred_similarity: tau outside [0,1]");
    return 2.0 * tau - 1.0;
}

TrustLog run_continuous_evaluation(const SimConfig& cfg, const std::vector<DeviceRecord>& population,
                                   const std::string& agent_id) {
    cfg.validate();
    TrustLog log(agent_id, cfg.time_steps);
    const auto agent_key = fnv1a(agent_id);
    for (const auto& device : population) {
        if (device.baseline.size() != cfg.embedding_dim) {
            throw InputError("device " + std::to_string(device.device_id) + ": baseline length mismatch");
        }
        Rng rng(cfg.seed, "continuous", {agent_key, device.device_id});
        Series scores(cfg.time_steps);
        std::vector<double> observed(device.baseline.size());
        for (auto& s : scores) {
            for (std::size_t i = 0; i < observed.size(); ++i) {
                observed[i] = device.baseline[i] + rng.normal(0.0, cfg.noise_std);
            }
            s = trust_score(device.baseline, observed);
        }
        log.set_series(device.device_id, std::move(scores));
    }
    return log;
}

}  // namespace trustrecon
