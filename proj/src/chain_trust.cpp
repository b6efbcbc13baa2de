#include "trustrecon/chain_trust.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

constexpr double kClassificationThreshold = 0.5;

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

// Runs `total_stages` stages; stage k prunes only while k <= prune_stages.
std::vector<StageOutcome> run_stages(const SimConfig& cfg, const StageConfig& stage_cfg,
                                     const std::vector<DeviceRecord>& population, const TrustLog& trust_log,
                                     std::size_t total_stages, std::size_t prune_stages) {
    cfg.validate();
    stage_cfg.validate(cfg.embedding_dim);

    std::set<DeviceId> surviving;
    for (const auto& d : population) {
        if (trust_log.all_series().count(d.device_id) == 0) {
            throw InputError("trust log is missing device " + std::to_string(d.device_id));
        }
        surviving.insert(d.device_id);
    }

    std::vector<StageOutcome> outcomes;
    outcomes.reserve(total_stages);
    std::size_t overhead = 0;
    for (std::size_t k = 1; k <= total_stages; ++k) {
        StageOutcome outcome;
        outcome.stage_index = k;
        overhead += surviving.size();
        outcome.cumulative_overhead = overhead;
        for (const auto& device : population) {
            if (surviving.count(device.device_id) == 0) continue;
            Rng rng(cfg.seed, "stage", {k, device.device_id});
            const double staged = stage_trust(device, k, cfg.noise_std, stage_cfg.stage_dims, rng);
            const double continuous = trust_log.series(device.device_id).back();
            const double combined = combine_trust(continuous, staged, stage_cfg.mix_weight);
            outcome.stage_scores[device.device_id] = combined;
            if (k > prune_stages || combined >= stage_cfg.threshold(k)) {
                outcome.surviving.insert(device.device_id);
            }
        }
        surviving = outcome.surviving;
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

}  // namespace

double StageConfig::threshold(std::size_t k) const {
    if (threshold_override) return *threshold_override;
    return 0.5 + 0.1 * static_cast<double>(k);
}

void StageConfig::validate(std::size_t embedding_dim) const {
    if (stage_count < 1) throw ConfigError("stage_count must be >= 1");
    if (table_stages < 1) throw ConfigError("table_stages must be >= 1");
    if (stage_dims < 1 || stage_dims > embedding_dim) throw ConfigError("stage_dims must lie in [1, embedding_dim]");
    if (!in_unit_interval(mix_weight)) throw ConfigError("mix_weight must lie in [0,1]");
    if (!threshold_override) {
        for (std::size_t k = 1; k <= stage_count; ++k) {
            const double theta = threshold(k);
            if (!(theta > 0.0 && theta < 1.0)) {
                throw ConfigError("threshold for stage " + std::to_string(k) + " leaves (0,1)");
            }
        }
    }
}

double stage_trust(const DeviceRecord& device, std::size_t k, double noise_std, std::size_t stage_dims, Rng& rng) {
    if (k < 1) throw InputError("stage index is 1-based");
    if (stage_dims > device.baseline.size()) throw ConfigError("stage_dims exceeds baseline length");
    const std::span<const double> sub(device.baseline.data(), stage_dims);
    const double stage_std = noise_std * std::sqrt(static_cast<double>(k + 1));
    const auto observed = observe_embedding(sub, stage_std, rng);
    return trust_score(sub, observed);
}

double combine_trust(double continuous, double staged, double alpha) {
    if (!in_unit_interval(continuous) || !in_unit_interval(staged) || !in_unit_interval(alpha)) {
        throw DomainError("combine_trust: inputs must lie in [0,1]");
    }
    const double combined = alpha * continuous + (1.0 - alpha) * staged;
    return std::clamp(combined, std::min(continuous, staged), std::max(continuous, staged));
}

std::vector<StageOutcome> run_chain_of_trust(const SimConfig& cfg, const StageConfig& stage_cfg,
                                             const std::vector<DeviceRecord>& population, const TrustLog& trust_log) {
    return run_stages(cfg, stage_cfg, population, trust_log, stage_cfg.stage_count, stage_cfg.stage_count);
}

double classification_accuracy(const std::map<DeviceId, double>& scores, const std::map<DeviceId, int>& labels,
                               double threshold) {
    if (scores.size() != labels.size()) throw DataError("classification_accuracy: key sets differ");
    if (scores.empty()) throw DataError("classification_accuracy: no devices");
    std::size_t correct = 0;
    auto label_it = labels.begin();
    for (const auto& [device, score] : scores) {
        if (label_it->first != device) throw DataError("classification_accuracy: key sets differ");
        const bool predicted = score >= threshold;
        if (predicted == (label_it->second == 1)) ++correct;
        ++label_it;
    }
    return static_cast<double>(correct) / static_cast<double>(scores.size());
}

std::vector<OverheadRow> overhead_accuracy_table(const SimConfig& cfg, const StageConfig& stage_cfg,
                                                 const std::vector<DeviceRecord>& population,
                                                 const TrustLog& trust_log) {
    const auto outcomes =
        run_stages(cfg, stage_cfg, population, trust_log, stage_cfg.table_stages, stage_cfg.stage_count);

    std::map<DeviceId, int> labels;
    for (const auto& d : population) labels[d.device_id] = d.label;

    std::vector<OverheadRow> rows;
    rows.reserve(outcomes.size());
    for (const auto& outcome : outcomes) {
        // Devices pruned before this stage are classified untrustworthy.
        std::map<DeviceId, double> scores;
        for (const auto& d : population) {
            auto it = outcome.stage_scores.find(d.device_id);
            scores[d.device_id] = it == outcome.stage_scores.end() ? 0.0 : it->second;
        }
        rows.push_back({outcome.stage_index, outcome.cumulative_overhead,
                        classification_accuracy(scores, labels, kClassificationThreshold)});
    }
    return rows;
}

}  // namespace trustrecon
